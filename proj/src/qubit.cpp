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

#include "qtomo/qubit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qtomo {

namespace {

const std::array<Mat2c, 4> &pauli_table() {
    static const std::array<Mat2c, 4> table = [] {
        std::array<Mat2c, 4> p;
        const cplx i(0.0, 1.0);
        p[0] << 1, 0, 0, 1;
        p[1] << 0, 1, 1, 0;
        p[2] << 0, -i, i, 0;
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    return table;
}

double entropy_term(double lambda) {
    return lambda > 0.0 ? -lambda * std::log2(lambda) : 0.0;
}

}  // namespace

const Mat2c &pauli(int mu) {
    if (mu < 0 || mu > 3) {
        throw ValidationError("pauli index must be in 0..3, got " + std::to_string(mu));
    }
    return pauli_table()[static_cast<std::size_t>(mu)];
}

Mat2c projector_one() {
    Mat2c p;
    p << 0, 0, 0, 1;
    return p;
}

Mat2c projector_plus() {
    Mat2c p;
    p << 0.5, 0.5, 0.5, 0.5;
    return p;
}

Mat2c hadamard() {
    Mat2c h;
    const double r = 1.0 / std::numbers::sqrt2;
    h << r, r, r, -r;
    return h;
}

BlochState BlochState::projected_to_pure() const {
    const double n = norm();
    if (n < 1e-15) {
        throw NumericalError("cannot project the zero Bloch vector onto a pure state");
    }
    return BlochState(x() / n, y() / n, z() / n);
}

BlochState BlochState::clipped_to_ball() const {
    const double n = norm();
    if (n <= 1.0) return BlochState(x(), y(), z());
    return BlochState(x() / n, y() / n, z() / n);
}

DensityMatrix BlochState::density() const {
    Mat2c m = Mat2c::Zero();
    for (int mu = 0; mu < 4; ++mu) m += 0.5 * s_(mu) * pauli(mu);
    return DensityMatrix(m);
}

DensityMatrix::DensityMatrix(const Mat2c &m) : m_(m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > kStructuralTol) {
        throw ValidationError("density matrix trace differs from 1");
    }
    // Drop anti-Hermitian rounding so downstream eigen-solvers see exact symmetry.
    m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.5 * Mat2c::Identity()); }

BlochState DensityMatrix::bloch() const {
    Vec4 s;
    for (int mu = 0; mu < 4; ++mu) s(mu) = (m_ * pauli(mu)).trace().real();
    return BlochState(s);
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat2c> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

void DensityMatrix::require_physical() const {
    if (!is_physical()) {
        throw ValidationError("density matrix has negative eigenvalue " +
                              std::to_string(min_eigenvalue()));
    }
}

PureState::PureState(cplx c0, cplx c1) : c0_(c0), c1_(c1) {
    const double n = std::norm(c0) + std::norm(c1);
    if (std::abs(n - 1.0) > kStructuralTol) {
        throw ValidationError("pure state is not normalized: |c0|^2 + |c1|^2 = " +
                              std::to_string(n));
    }
}

PureState PureState::from_angles(double alpha1, double alpha2) {
    constexpr double pi = std::numbers::pi;
    if (!(alpha1 >= 0.0 && alpha1 <= pi / 2) || !(alpha2 >= 0.0 && alpha2 <= pi)) {
        throw ValidationError("state angles out of range: alpha1 in [0, pi/2], alpha2 in [0, pi]");
    }
    const cplx phase = std::polar(1.0, alpha2);
    return PureState(phase * std::cos(alpha1), std::conj(phase) * std::sin(alpha1));
}

DensityMatrix PureState::density() const {
    const Vec2c k = ket();
    return DensityMatrix(k * k.adjoint());
}

BlochState PureState::bloch() const {
    const cplx off = std::conj(c0_) * c1_;
    return BlochState(2.0 * off.real(), 2.0 * off.imag(), std::norm(c0_) - std::norm(c1_));
}

BlochState bloch_from_state(const DensityMatrix &rho) { return rho.bloch(); }

DensityMatrix density_from_bloch(const BlochState &s) { return s.density(); }

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    rho.require_physical();
    sigma.require_physical();
    // Qubit closed form of the Uhlmann expression. A rank-1 input has a
    // rounding-level determinant whose square root would leak ~1e-8 into F,
    // so determinants at that level count as zero.
    constexpr double kDetRounding = 8.0 * std::numeric_limits<double>::epsilon();
    auto det = [](const Mat2c &m) {
        const double d = m.determinant().real();
        return d < kDetRounding ? 0.0 : d;
    };
    const double overlap = (rho.matrix() * sigma.matrix()).trace().real();
    const double dr = det(rho.matrix());
    const double ds = det(sigma.matrix());
    return std::clamp(overlap + 2.0 * std::sqrt(dr * ds), 0.0, 1.0);
}

double fidelity(const PureState &target, const BlochState &estimate) {
    return 0.5 * (1.0 + target.bloch().vector().dot(estimate.vector()));
}

double entanglement_entropy(double alpha1, double theta) {
    if (!(alpha1 >= 0.0 && alpha1 <= std::numbers::pi / 2)) {
        throw ValidationError("alpha1 must be in [0, pi/2]");
    }
    const double s2a = std::sin(2.0 * alpha1);
    const double sh = std::sin(theta / 2.0);
    const double x = std::max(0.0, 1.0 - s2a * s2a * sh * sh);
    const double r = std::sqrt(x);
    return entropy_term(0.5 * (1.0 + r)) + entropy_term(0.5 * (1.0 - r));
}

Mat2c expm_hermitian(const Mat2c &h, double t) {
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
        throw ValidationError("expm_hermitian: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Mat2c> es(0.5 * (h + h.adjoint()));
    Vec2c phases;
    for (int k = 0; k < 2; ++k) phases(k) = std::polar(1.0, -t * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qtomo
