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

#include "qtomo/circuit.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qtomo/parallel.hpp"

namespace qtomo::circuit {

namespace {

Mat8c kron3(const Mat2c &a, const Mat2c &s, const Mat2c &b) {
    const Mat4c sb = Eigen::kroneckerProduct(s, b);
    return Eigen::kroneckerProduct(a, sb);
}

// CNOT with control S; target A (target_a) or B.
Mat8c cnot_from_system(bool target_a) {
    Mat8c m = Mat8c::Zero();
    for (int i = 0; i < 8; ++i) {
        int a = (i >> 2) & 1, s = (i >> 1) & 1, b = i & 1;
        if (s == 1) {
            if (target_a) {
                a ^= 1;
            } else {
                b ^= 1;
            }
        }
        m(4 * a + 2 * s + b, i) = 1.0;
    }
    return m;
}

Mat2c gate(const CircuitParams::Gate &g, AngleConvention conv) { return u3(g[0], g[1], g[2], conv); }

}  // namespace

Mat2c u3(double theta, double phi, double lambda, AngleConvention conv) {
    const double t = conv == AngleConvention::kHalf ? theta / 2.0 : theta;
    const double c = std::cos(t), s = std::sin(t);
    Mat2c u;
    u << c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c;
    return u;
}

std::array<double, 12> CircuitParams::flat() const {
    std::array<double, 12> x{};
    const Gate *gates[4] = {&a1, &a2, &b1, &b2};
    for (int g = 0; g < 4; ++g) {
        for (int k = 0; k < 3; ++k) x[static_cast<std::size_t>(3 * g + k)] = (*gates[g])[static_cast<std::size_t>(k)];
    }
    return x;
}

CircuitParams CircuitParams::from_flat(std::span<const double> x, AngleConvention conv) {
    if (x.size() != 12) {
        throw ValidationError("circuit parameters need 12 values, got " + std::to_string(x.size()));
    }
    CircuitParams p;
    p.convention = conv;
    Gate *gates[4] = {&p.a1, &p.a2, &p.b1, &p.b2};
    for (int g = 0; g < 4; ++g) {
        for (int k = 0; k < 3; ++k) {
            const double v = x[static_cast<std::size_t>(3 * g + k)];
            if (!std::isfinite(v)) throw ValidationError("circuit parameters must be finite");
            (*gates[g])[static_cast<std::size_t>(k)] = v;
        }
    }
    return p;
}

CircuitParams reference_optimum(AngleConvention conv) {
    CircuitParams p;
    p.a1 = {0.59, 1.58, 2.52};
    p.a2 = {2.55, 1.94, 0.31};
    p.b1 = {0.70, 4.31, 3.46};
    p.b2 = {0.67, 6.47, 4.47};
    p.convention = conv;
    return p;
}

Mat8c build_unitary(const CircuitParams &p) {
    const Mat2c id = Mat2c::Identity();
    const Mat2c h = hadamard();
    const auto conv = p.convention;
    Mat8c u = kron3(gate(p.a1, conv), id, id);
    u = cnot_from_system(true) * u;
    u = kron3(gate(p.a2, conv), h, gate(p.b1, conv)) * u;
    u = cnot_from_system(false) * u;
    u = kron3(id, h, gate(p.b2, conv)) * u;
    u = kron3(h, id, h) * u;
    return u;
}

CircuitModel::CircuitModel(const CircuitParams &p) : params_(p), u_(build_unitary(p)) {
    Mat4 t;
    const Vec4 c0 = probabilities_unchecked(0.5 * Mat2c::Identity());
    t.col(0) = c0;
    for (int mu = 1; mu < 4; ++mu) {
        t.col(mu) = probabilities_unchecked(0.5 * (Mat2c::Identity() + pauli(mu))) - c0;
    }
    t_ = TransferMatrix(t);
}

Vec4 CircuitModel::probabilities_unchecked(const Mat2c &rho0) const {
    const Mat2c plus = projector_plus();
    const Mat8c rho = kron3(plus, rho0, plus);
    const Mat8c out = u_ * rho * u_.adjoint();
    Vec4 probs = Vec4::Zero();
    for (int a = 0; a < 2; ++a) {
        for (int s = 0; s < 2; ++s) {
            for (int b = 0; b < 2; ++b) {
                const int i = 4 * a + 2 * s + b;
                probs(2 * a + b) += out(i, i).real();
            }
        }
    }
    return probs;
}

Vec4 CircuitModel::probabilities(const DensityMatrix &rho0) const {
    rho0.require_physical();
    return probabilities_unchecked(rho0.matrix());
}

ErrorFigure qttf(const CircuitParams &p, const QuadratureRule &rule) {
    return qtomo::qttf(CircuitModel(p).transfer_matrix(), rule);
}

namespace {

RestartRecord run_restart(const std::array<double, 12> &start, AngleConvention conv,
                          const QuadratureRule &rule, const NelderMeadOptions &nm) {
    auto objective = [&](std::span<const double> x) {
        try {
            return qttf(CircuitParams::from_flat(x, conv), rule).value();
        } catch (const NumericalError &) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const auto res = nelder_mead(objective, std::vector<double>(start.begin(), start.end()), nm);
    return RestartRecord{start, CircuitParams::from_flat(res.x, conv), res.fval, res.iterations,
                         res.converged};
}

OptimizeResult merge(std::vector<RestartRecord> records) {
    OptimizeResult out{records.front().best, records.front().value, {}};
    for (const auto &r : records) {
        if (r.value < out.value) {
            out.best = r.best;
            out.value = r.value;
        }
    }
    out.restarts = std::move(records);
    return out;
}

}  // namespace

OptimizeResult optimize(const QuadratureRule &rule, const OptimizeOptions &opts) {
    if (opts.restarts < 1) throw ValidationError("optimize: restarts must be >= 1");
    const auto n = static_cast<std::size_t>(opts.restarts);
    std::vector<std::array<double, 12>> starts(n);
    for (std::size_t r = 0; r < n; ++r) {
        auto gen = make_stream(opts.seed, r);
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        for (double &v : starts[r]) v = u(gen);
    }
    std::vector<RestartRecord> records(n);
    parallel_for(n, [&](std::size_t r) {
        records[r] = run_restart(starts[r], opts.convention, rule, opts.nelder_mead);
    });
    return merge(std::move(records));
}

OptimizeResult optimize_from(const CircuitParams &start, const QuadratureRule &rule,
                             const NelderMeadOptions &nm) {
    return merge({run_restart(start.flat(), start.convention, rule, nm)});
}

}  // namespace qtomo::circuit
