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

#include "qtomo/common.hpp"

namespace qtomo {

/// Pauli matrix sigma_mu, mu = 0 (identity), 1 (x), 2 (y), 3 (z).
const Mat2c &pauli(int mu);

/// Projector |1><1|.
Mat2c projector_one();
/// Projector |+><+|.
Mat2c projector_plus();
/// Hadamard gate.
Mat2c hadamard();

class DensityMatrix;

/// Bloch 4-vector S = (s0, s1, s2, s3) with s0 = 1.
///
/// Linear-inversion estimates may land outside the unit ball; such vectors are
/// representable and report `is_physical() == false`.
class BlochState {
public:
    BlochState() : s_(1.0, 0.0, 0.0, 0.0) {}
    BlochState(double sx, double sy, double sz) : s_(1.0, sx, sy, sz) {}
    /// Takes all four components; s0 is kept as given (callers normalize).
    explicit BlochState(const Vec4 &s) : s_(s) {}

    double s0() const { return s_(0); }
    double x() const { return s_(1); }
    double y() const { return s_(2); }
    double z() const { return s_(3); }
    double operator[](int mu) const { return s_(mu); }

    const Vec4 &components() const { return s_; }
    Vec3 vector() const { return s_.tail<3>(); }
    double norm() const { return s_.tail<3>().norm(); }

    bool is_physical(double tol = kPhysicalTol) const { return norm() <= 1.0 + tol; }

    /// Nearest pure state direction: s/|s|. Throws on the zero vector.
    BlochState projected_to_pure() const;
    /// Radial clip into the unit ball (identity for physical vectors).
    BlochState clipped_to_ball() const;

    DensityMatrix density() const;

private:
    Vec4 s_;
};

/// 2x2 Hermitian, unit-trace matrix.
class DensityMatrix {
public:
    /// Validates hermiticity and trace to `kStructuralTol`.
    explicit DensityMatrix(const Mat2c &m);

    static DensityMatrix maximally_mixed();
    static DensityMatrix from_bloch(const BlochState &s) { return s.density(); }

    const Mat2c &matrix() const { return m_; }
    BlochState bloch() const;
    /// Smallest eigenvalue.
    double min_eigenvalue() const;
    bool is_physical(double tol = kPhysicalTol) const { return min_eigenvalue() >= -tol; }
    /// Throws ValidationError when not physical.
    void require_physical() const;

private:
    Mat2c m_;
};

/// Qubit pure state c0|0> + c1|1>.
class PureState {
public:
    /// Validates |c0|^2 + |c1|^2 = 1 within 1e-12.
    PureState(cplx c0, cplx c1);

    /// c0 = e^{i a2} cos a1, c1 = e^{-i a2} sin a1 with a1 in [0, pi/2], a2 in [0, pi].
    static PureState from_angles(double alpha1, double alpha2);

    cplx c0() const { return c0_; }
    cplx c1() const { return c1_; }
    Vec2c ket() const { return Vec2c(c0_, c1_); }

    DensityMatrix density() const;
    BlochState bloch() const;

private:
    cplx c0_;
    cplx c1_;
};

BlochState bloch_from_state(const DensityMatrix &rho);
DensityMatrix density_from_bloch(const BlochState &s);

/// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, via Tr(rho sigma) + 2 sqrt(det rho det sigma).
/// Both arguments must be physical; otherwise ValidationError.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Fidelity of a pure target with a Bloch vector, (1 + s.t)/2.
double fidelity(const PureState &target, const BlochState &estimate);

/// Von Neumann entropy (base 2) of the system after the single-meter coupling.
double entanglement_entropy(double alpha1, double theta);

/// exp(-i t H) for 2x2 Hermitian H via its spectral decomposition.
Mat2c expm_hermitian(const Mat2c &h, double t);

/// max |U^dagger U - I| entry.
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived> &u) {
    const auto n = u.rows();
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace qtomo
