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

#include "qtomo/qubit.hpp"
#include "qtomo/quadrature.hpp"

namespace qtomo {

/// Probability floor used when assembling Fisher matrices.
inline constexpr double kProbabilityFloor = 1e-12;

/// Linear map P = T S from the Bloch 4-vector to the four meter outcome
/// probabilities, rows ordered (00, 01, 10, 11) with the A meter first.
class TransferMatrix {
public:
    TransferMatrix() : t_(Mat4::Zero()) {}
    explicit TransferMatrix(const Mat4 &t) : t_(t) {}

    const Mat4 &matrix() const { return t_; }
    double operator()(int row, int col) const { return t_(row, col); }

    Vec4 apply(const BlochState &s) const { return t_ * s.components(); }
    /// 2-norm condition number; +inf when singular.
    double condition_number() const;
    /// Inverse; throws NonInvertibleModel when the condition number is >= 1e12.
    Mat4 inverse() const;

    /// The Bloch-dependent block J = T[:, 1..3].
    Eigen::Matrix<double, 4, 3> jacobian() const { return t_.rightCols<3>(); }

    /// (D0, D) with T = [1/4 1 + V^T D0 | V^T D], rows of D being the a, b,
    /// c coefficient vectors over mu = 1..3 and D0 = (a0, b0, c0).
    struct Blocks {
        Vec3 d0;
        Mat3 d;
    };
    Blocks coefficient_blocks() const;

private:
    Mat4 t_;
};

/// Meter sign matrix V: rows k, l, kl over outcomes (00, 01, 10, 11).
const Eigen::Matrix<double, 3, 4> &sign_matrix();

/// Common contract of the two-meter and circuit models.
class TomographyModel {
public:
    virtual ~TomographyModel() = default;

    /// Outcome probabilities from direct simulation of the process.
    virtual Vec4 probabilities(const DensityMatrix &rho0) const = 0;
    virtual const TransferMatrix &transfer_matrix() const = 0;
};

/// Fisher information over (s1, s2, s3), element form
/// F_mn = sum_k J_km J_kn / p_k. Throws SingularInformation when some
/// p_k <= kProbabilityFloor.
Mat3 fisher_matrix(const TransferMatrix &t, const BlochState &s);

/// The same matrix assembled as D^T (V P^{-1} V^T) D from the coefficient blocks.
Mat3 fisher_matrix_factored(const TransferMatrix &t, const BlochState &s);

/// Tr F^{-1}; divergent when the smallest eigenvalue of F is below 1e-12.
ErrorFigure delta_error(const TransferMatrix &t, const BlochState &s);

/// Average of delta_error over pure states. Any divergent node, or a node
/// with a vanishing outcome probability, makes the average divergent.
ErrorFigure qttf(const TransferMatrix &t, const QuadratureRule &rule);

}  // namespace qtomo
