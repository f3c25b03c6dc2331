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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qtomo/nelder_mead.hpp"
#include "qtomo/tomography_model.hpp"

/// Complete qubit estimation with two meters A and B coupled through
///
///   U_AB = exp(-i th_A Pi1(S) x Pi1(A) x I - i th_B K(S) x I x Pi1(B)),
///
/// both meters prepared in |+> and read out in the x basis.
namespace qtomo::two_meter {

/// Scale of the system operator K coupled to meter B.
enum class BCoupling {
    /// K = |+><+|.
    kProjector,
    /// K = I + sigma_x (twice the projector). The reference optimum
    /// (3.45, -8.42) with mean error ~17.0 is expressed in this scale.
    kUnnormalized,
};

struct TwoMeterParams {
    double theta_a = 0.0;
    double theta_b = 0.0;
    BCoupling coupling = BCoupling::kUnnormalized;

    /// theta_b rescaled to the projector convention.
    double projector_theta_b() const {
        return coupling == BCoupling::kUnnormalized ? 2.0 * theta_b : theta_b;
    }
};

/// Reference optimum of the mean error.
inline constexpr TwoMeterParams kReferenceOptimum{3.45, -8.42, BCoupling::kUnnormalized};

/// Coefficients a_mu, b_mu, c_mu (mu = 0..3) of
/// p_kl = s0/4 + sum_mu (a_mu k + b_mu l + c_mu k l) s_mu.
struct Coefficients {
    Vec4 a;
    Vec4 b;
    Vec4 c;
};

/// The closed-form expressions exactly as tabulated. They describe the
/// model conjugated by sigma_x (Pi0 in place of Pi1 on the system), i.e. the
/// mu = 2, 3 entries carry the opposite sign to `coefficients_trace_form`.
/// Angles use the projector convention.
Coefficients coefficients_as_printed(double theta_a, double theta_b);

/// Closed form in the model's own frame: `coefficients_as_printed` with the
/// sigma_x-conjugation undone (mu = 2, 3 negated). Projector convention.
Coefficients coefficients_closed_form(double theta_a, double theta_b);

/// a_mu = Tr[A sigma_mu] / 2 with A = (1/16) sum_ij U_ij^dag U_{1-i,j}, and
/// likewise B, C. Projector convention.
Coefficients coefficients_trace_form(double theta_a, double theta_b);

/// System operators U_ij acting when meters are in |i>|j>, index 2i + j.
/// Projector convention.
std::array<Mat2c, 4> branch_unitaries(double theta_a, double theta_b);

/// T assembled from coefficients, including the mu = 0 block.
TransferMatrix transfer_matrix_from(const Coefficients &c);
TransferMatrix transfer_matrix(const TwoMeterParams &p);

/// Direct density-matrix simulation of the three-qubit process, outcome
/// probabilities ordered (++, +-, -+, --). rho0 must be physical.
Vec4 simulate_probabilities(const DensityMatrix &rho0, const TwoMeterParams &p);

class TwoMeterModel final : public TomographyModel {
public:
    explicit TwoMeterModel(const TwoMeterParams &p);

    const TwoMeterParams &params() const { return params_; }
    Vec4 probabilities(const DensityMatrix &rho0) const override;
    const TransferMatrix &transfer_matrix() const override { return t_; }

private:
    TwoMeterParams params_;
    TransferMatrix t_;
};

Mat3 fisher_matrix(const PureState &psi, const TwoMeterParams &p);
ErrorFigure delta_error(const PureState &psi, const TwoMeterParams &p);
ErrorFigure qttf(const TwoMeterParams &p, const QuadratureRule &rule);

struct OptimizeOptions {
    int restarts = 20;
    std::uint64_t seed = 0;
    NelderMeadOptions nelder_mead{};
    /// Starts are uniform in [-start_box, start_box]^2.
    double start_box = 3.0 * 3.14159265358979323846;
    BCoupling coupling = BCoupling::kUnnormalized;
};

struct RestartRecord {
    std::array<double, 2> start;
    TwoMeterParams best;
    double value;
    int iterations;
    bool converged;
};

struct OptimizeResult {
    TwoMeterParams best;
    double value;
    std::vector<RestartRecord> restarts;
};

/// Nelder-Mead on the mean error from uniformly random starts. Non-finite
/// objective values count as +inf. Restarts run in parallel; results are
/// merged in restart order.
OptimizeResult optimize(const QuadratureRule &rule, const OptimizeOptions &opts);

/// Single local search from a given start.
OptimizeResult optimize_from(const TwoMeterParams &start, const QuadratureRule &rule,
                             const NelderMeadOptions &nm = {});

}  // namespace qtomo::two_meter
