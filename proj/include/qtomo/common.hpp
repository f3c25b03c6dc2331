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

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qtomo {

inline constexpr const char *kVersion = "0.1.0";

using cplx = std::complex<double>;

using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat8c = Eigen::Matrix<cplx, 8, 8>;
using Vec2c = Eigen::Vector2cd;
using Vec8c = Eigen::Matrix<cplx, 8, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

/// Structural tolerance (unitarity, trace, normalization).
inline constexpr double kStructuralTol = 1e-12;
/// Eigenvalue floor below which a density matrix is unphysical.
inline constexpr double kPhysicalTol = 1e-9;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: out-of-range angles, malformed vectors, bad configuration.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation that cannot produce a finite, meaningful result.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The single-meter coupling carries no information about s_z (sin²(θ/2) ≈ 0).
class NonInformativeCoupling : public NumericalError {
public:
    explicit NonInformativeCoupling(double theta)
        : NumericalError("non-informative coupling: sin^2(theta/2) < 1e-12 at theta = " +
                         std::to_string(theta)),
          theta_(theta) {}
    double theta() const { return theta_; }

private:
    double theta_;
};

/// An outcome probability vanished, so the Fisher matrix cannot be assembled.
class SingularInformation : public NumericalError {
public:
    SingularInformation(int outcome, double probability)
        : NumericalError("singular information: outcome " + std::to_string(outcome) +
                         " has probability " + std::to_string(probability)),
          outcome_(outcome),
          probability_(probability) {}
    int outcome() const { return outcome_; }
    double probability() const { return probability_; }

private:
    int outcome_;
    double probability_;
};

/// The transfer matrix (or a derived matrix) cannot be inverted.
class NonInvertibleModel : public NumericalError {
public:
    explicit NonInvertibleModel(double condition_number, const std::string &what = "transfer matrix")
        : NumericalError("non-invertible model: " + what + " condition number " +
                         std::to_string(condition_number)),
          condition_number_(condition_number) {}
    double condition_number() const { return condition_number_; }

private:
    double condition_number_;
};

/// An error figure that is either finite or explicitly divergent.
///
/// Estimation errors diverge when a setup carries no information about some
/// parameter. That case is reported as a tagged value instead of letting the
/// arithmetic overflow to inf/nan somewhere downstream.
class ErrorFigure {
public:
    static ErrorFigure finite(double value) { return ErrorFigure(value, false); }
    static ErrorFigure divergent() {
        return ErrorFigure(std::numeric_limits<double>::infinity(), true);
    }

    bool is_divergent() const { return divergent_; }
    bool is_finite() const { return !divergent_; }
    /// +inf when divergent.
    double value() const { return value_; }

private:
    ErrorFigure(double v, bool d) : value_(v), divergent_(d) {}
    double value_;
    bool divergent_;
};

}  // namespace qtomo
