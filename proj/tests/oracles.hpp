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

// Reference computations for the tests. Each one takes a route that shares
// no code with the library beyond the Pauli matrices.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qtomo/common.hpp"
#include "qtomo/qubit.hpp"

namespace oracle {

using qtomo::cplx;
using qtomo::Mat2c;
using qtomo::Mat4;
using qtomo::Mat8c;
using qtomo::Vec4;

constexpr double kPi = std::numbers::pi;

inline Mat2c ket_plus_projector() {
    Mat2c p;
    p << 0.5, 0.5, 0.5, 0.5;
    return p;
}

inline Mat2c ket_minus_projector() {
    Mat2c p;
    p << 0.5, -0.5, -0.5, 0.5;
    return p;
}

/// exp(-i t H) by Taylor series with scaling and squaring.
inline Mat2c expm_taylor(const Mat2c &h, double t) {
    const Mat2c a = cplx(0.0, -t) * h;
    int squarings = 0;
    double norm = a.cwiseAbs().sum();
    while (norm > 0.5) {
        norm /= 2;
        ++squarings;
    }
    const Mat2c x = a / std::pow(2.0, squarings);
    Mat2c term = Mat2c::Identity(), sum = Mat2c::Identity();
    for (int k = 1; k < 30; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

/// Meter probabilities (+, -) of the single-meter process by direct 2-qubit
/// simulation: H on the meter, controlled phase, H, z readout.
inline std::array<double, 2> single_meter_probs(cplx c0, cplx c1, double theta) {
    Eigen::Vector4cd psi;  // index 2 s + m
    psi << c0, 0, c1, 0;
    Mat2c h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const Eigen::Matrix4cd hm = Eigen::kroneckerProduct(Mat2c::Identity(), h);
    Eigen::Matrix4cd cp = Eigen::Matrix4cd::Identity();
    cp(3, 3) = std::polar(1.0, -theta);
    psi = hm * cp * hm * psi;
    return {std::norm(psi(0)) + std::norm(psi(2)), std::norm(psi(1)) + std::norm(psi(3))};
}

/// Outcome probabilities of the two-meter process from the full 8x8
/// Hamiltonian on (S, A, B), exponentiated numerically.
inline Vec4 two_meter_probs(const Mat2c &rho0, double ta, double tb_projector) {
    Mat2c p1;
    p1 << 0, 0, 0, 1;
    const Mat2c id = Mat2c::Identity();
    const Mat2c pp = ket_plus_projector();
    const Eigen::Matrix4cd sa = Eigen::kroneckerProduct(p1, p1);
    const Eigen::Matrix4cd sb = Eigen::kroneckerProduct(pp, id);
    const Mat8c h = ta * Mat8c(Eigen::kroneckerProduct(sa, id)) +
                    tb_projector * Mat8c(Eigen::kroneckerProduct(sb, p1));
    const Mat8c u = (cplx(0.0, -1.0) * h).exp();
    const Eigen::Matrix4cd meters = Eigen::kroneckerProduct(pp, pp);
    const Mat8c rho = u * Mat8c(Eigen::kroneckerProduct(rho0, meters)) * u.adjoint();
    const Mat2c proj[2] = {ket_plus_projector(), ket_minus_projector()};
    Vec4 out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const Eigen::Matrix4cd m = Eigen::kroneckerProduct(proj[k], proj[l]);
            const Mat8c e = Eigen::kroneckerProduct(id, m);
            out(2 * k + l) = (e * rho).trace().real();
        }
    }
    return out;
}

/// Mean of Tr F^{-1} over pure states for any model with invertible T:
/// sum_l T_l0 |(T^{-1})_{1..3, l}|^2 - 1.
inline double affine_mean_error(const Mat4 &t) {
    const Mat4 ti = t.inverse();
    double s = 0.0;
    for (int l = 0; l < 4; ++l) s += t(l, 0) * ti.block<3, 1>(1, l).squaredNorm();
    return s - 1.0;
}

/// Three-qubit statevector (A, S, B), amplitude index 4 a + 2 s + b.
class Statevector {
public:
    Statevector() { amp_.setZero(); }
    explicit Statevector(const qtomo::Vec8c &a) : amp_(a) {}

    void apply(int qubit, const Mat2c &g) {
        const int bit = 2 - qubit;
        for (int i = 0; i < 8; ++i) {
            if ((i >> bit) & 1) continue;
            const int j = i | (1 << bit);
            const cplx a0 = amp_(i), a1 = amp_(j);
            amp_(i) = g(0, 0) * a0 + g(0, 1) * a1;
            amp_(j) = g(1, 0) * a0 + g(1, 1) * a1;
        }
    }

    void cnot(int control, int target) {
        const int cb = 2 - control, tb = 2 - target;
        for (int i = 0; i < 8; ++i) {
            if (((i >> cb) & 1) && !((i >> tb) & 1)) std::swap(amp_(i), amp_(i | (1 << tb)));
        }
    }

    const qtomo::Vec8c &amplitudes() const { return amp_; }

private:
    qtomo::Vec8c amp_;
};

/// Columns of the circuit unitary by gate-by-gate statevector evolution.
/// gates: a1, a2, b1, b2 already as matrices.
inline Mat8c circuit_unitary(const std::array<Mat2c, 4> &g) {
    Mat2c h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Mat8c u;
    for (int c = 0; c < 8; ++c) {
        qtomo::Vec8c e = qtomo::Vec8c::Zero();
        e(c) = 1.0;
        Statevector sv(e);
        sv.apply(0, g[0]);
        sv.cnot(1, 0);
        sv.apply(1, h);
        sv.apply(2, g[2]);
        sv.apply(0, g[1]);
        sv.cnot(1, 2);
        sv.apply(1, h);
        sv.apply(2, g[3]);
        sv.apply(0, h);
        sv.apply(2, h);
        u.col(c) = sv.amplitudes();
    }
    return u;
}

inline std::mt19937_64 &rng() {
    static std::mt19937_64 gen(20260415);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline qtomo::PureState random_pure() {
    const double z = uniform(-1.0, 1.0), phi = uniform(0.0, 2 * kPi);
    const double t = std::acos(z);
    return qtomo::PureState(std::cos(t / 2), std::polar(std::sin(t / 2), phi));
}

inline qtomo::DensityMatrix random_mixed(double rmax = 0.95) {
    const auto v = random_pure().bloch().vector();
    const double r = rmax * std::cbrt(uniform(0.0, 1.0));
    return qtomo::BlochState(r * v(0), r * v(1), r * v(2)).density();
}

}  // namespace oracle
