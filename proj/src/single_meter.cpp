// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtomo/single_meter.hpp"

#include <cmath>
#include <numbers>

#include "qtomo/harness.hpp"

namespace qtomo::single {

namespace {

constexpr double kInformationFloor = 1e-12;

double half_sin2(double theta) {
    const double s = std::sin(theta / 2.0);
    return s * s;
}

void require_informative(double theta) {
    if (is_non_informative(theta)) throw NonInformativeCoupling(theta);
}

}  // namespace

bool is_non_informative(double theta) { return half_sin2(theta) < kInformationFloor; }

std::array<double, 2> probabilities(const PureState &psi, double theta) {
    const double s2 = half_sin2(theta);
    const double sz = psi.bloch().z();
    const double p1 = 0.5 * s2 * (1.0 - sz);
    return {1.0 - p1, p1};
}

double estimate_sz(double p0, double p1, double theta) {
    require_informative(theta);
    if (std::abs(p0 + p1 - 1.0) > 1e-9) {
        throw ValidationError("estimate_sz: P0 + P1 must equal 1");
    }
    const double s2 = half_sin2(theta);
    return (p0 - p1 - (1.0 - s2)) / s2;
}

double fisher_inverse(const PureState &psi, double theta) {
    require_informative(theta);
    const auto [p0, p1] = probabilities(psi, theta);
    const double s2 = half_sin2(theta);
    return 4.0 * p0 * p1 / (s2 * s2);
}

double fisher_inverse_angles(double alpha1, double theta) {
    require_informative(theta);
    const double sa = std::sin(alpha1);
    return 4.0 * sa * sa * (1.0 / half_sin2(theta) - sa * sa);
}

ErrorFigure qttf(double theta) {
    if (is_non_informative(theta)) return ErrorFigure::divergent();
    return ErrorFigure::finite(2.0 / 3.0 * (2.0 + std::cos(theta)) / half_sin2(theta));
}

ErrorFigure qttf_quadrature(double theta, const QuadratureRule &rule) {
    if (is_non_informative(theta)) return ErrorFigure::divergent();
    return ErrorFigure::finite(rule.integrate([theta](double a1, double a2) {
        return fisher_inverse(PureState::from_angles(a1, a2), theta);
    }));
}

ErrorFigure max_error(double theta) {
    if (is_non_informative(theta)) return ErrorFigure::divergent();
    const double csc2 = 1.0 / half_sin2(theta);
    // Interior stationary point sin^2 a1 = csc^2/2 exists only for csc^2 <= 2.
    if (csc2 >= 2.0) return ErrorFigure::finite(4.0 * (csc2 - 1.0));
    return ErrorFigure::finite(csc2 * csc2);
}

double two_design_average(double theta) {
    double acc = 0.0;
    for (const auto &s : pauli_eigenstate_set()) acc += fisher_inverse(s.state, theta);
    return acc / 6.0;
}

}  // namespace qtomo::single
