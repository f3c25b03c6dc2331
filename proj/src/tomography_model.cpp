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

#include "qtomo/tomography_model.hpp"

#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qtomo {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kMinFisherEigenvalue = 1e-12;

Vec4 checked_probabilities(const TransferMatrix &t, const BlochState &s) {
    const Vec4 p = t.apply(s);
    for (int k = 0; k < 4; ++k) {
        if (!(p(k) > kProbabilityFloor)) throw SingularInformation(k, p(k));
    }
    return p;
}

}  // namespace

const Eigen::Matrix<double, 3, 4> &sign_matrix() {
    static const Eigen::Matrix<double, 3, 4> v = [] {
        Eigen::Matrix<double, 3, 4> m;
        m << 1, 1, -1, -1,
             1, -1, 1, -1,
             1, -1, -1, 1;
        return m;
    }();
    return v;
}

double TransferMatrix::condition_number() const {
    Eigen::JacobiSVD<Mat4> svd(t_);
    const auto &sv = svd.singularValues();
    if (sv(3) <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / sv(3);
}

Mat4 TransferMatrix::inverse() const {
    const double cond = condition_number();
    if (!(cond < kMaxCondition)) throw NonInvertibleModel(cond);
    return t_.inverse();
}

TransferMatrix::Blocks TransferMatrix::coefficient_blocks() const {
    // [1 | V^T] is a 4x4 Hadamard matrix, so V V^T = 4 I and V 1 = 0.
    const auto &v = sign_matrix();
    Blocks b;
    b.d0 = 0.25 * v * t_.col(0);
    b.d = 0.25 * v * t_.rightCols<3>();
    return b;
}

Mat3 fisher_matrix(const TransferMatrix &t, const BlochState &s) {
    const Vec4 p = checked_probabilities(t, s);
    const auto j = t.jacobian();
    Mat3 f = Mat3::Zero();
    for (int k = 0; k < 4; ++k) {
        for (int m = 0; m < 3; ++m) {
            for (int n = 0; n < 3; ++n) f(m, n) += j(k, m) * j(k, n) / p(k);
        }
    }
    return f;
}

Mat3 fisher_matrix_factored(const TransferMatrix &t, const BlochState &s) {
    const Vec4 p = checked_probabilities(t, s);
    const auto &v = sign_matrix();
    const Mat3 d = t.coefficient_blocks().d;
    const Mat3 middle = v * p.cwiseInverse().asDiagonal() * v.transpose();
    return d.transpose() * middle * d;
}

ErrorFigure delta_error(const TransferMatrix &t, const BlochState &s) {
    const Mat3 f = fisher_matrix(t, s);
    Eigen::SelfAdjointEigenSolver<Mat3> es(f);
    if (es.eigenvalues()(0) < kMinFisherEigenvalue) return ErrorFigure::divergent();
    return ErrorFigure::finite(es.eigenvalues().cwiseInverse().sum());
}

ErrorFigure qttf(const TransferMatrix &t, const QuadratureRule &rule) {
    double acc = 0.0;
    for (const auto &node : rule.nodes()) {
        const BlochState s = PureState::from_angles(node.alpha1, node.alpha2).bloch();
        ErrorFigure d = ErrorFigure::divergent();
        try {
            d = delta_error(t, s);
        } catch (const SingularInformation &) {
        }
        if (d.is_divergent()) return d;
        acc += node.weight * d.value();
    }
    return ErrorFigure::finite(acc);
}

}  // namespace qtomo
