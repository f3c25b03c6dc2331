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
#include <span>
#include <vector>

#include "qtomo/nelder_mead.hpp"
#include "qtomo/tomography_model.hpp"

/// Twelve-parameter circuit on (A, S, B): two CNOTs from the system to the
/// meters, interleaved with general single-qubit gates on the meters.
namespace qtomo::circuit {

/// How the first angle of a U gate enters its matrix.
enum class AngleConvention {
    /// cos(theta/2), sin(theta/2) (the usual U3 gate).
    kHalf,
    /// cos(theta), sin(theta).
    kFull,
};

/// [[cos t, -e^{i l} sin t], [e^{i p} sin t, e^{i(p+l)} cos t]] with
/// t = theta (kFull) or theta/2 (kHalf).
Mat2c u3(double theta, double phi, double lambda, AngleConvention conv = AngleConvention::kFull);

struct CircuitParams {
    using Gate = std::array<double, 3>;
    Gate a1{};
    Gate a2{};
    Gate b1{};
    Gate b2{};
    AngleConvention convention = AngleConvention::kHalf;

    /// Order (a1, a2, b1, b2), each (theta, phi, lambda).
    std::array<double, 12> flat() const;
    static CircuitParams from_flat(std::span<const double> x,
                                   AngleConvention conv = AngleConvention::kHalf);
};

/// Reference optimum of the mean error (half-angle gates).
CircuitParams reference_optimum(AngleConvention conv = AngleConvention::kHalf);

/// 8x8 unitary of the gate sequence including the final H on both meters.
/// Basis index 4a + 2s + b.
Mat8c build_unitary(const CircuitParams &p);

class CircuitModel final : public TomographyModel {
public:
    explicit CircuitModel(const CircuitParams &p);

    const CircuitParams &params() const { return params_; }
    const Mat8c &unitary() const { return u_; }
    /// Meters start in |+>; outcomes (00, 01, 10, 11), A first.
    Vec4 probabilities(const DensityMatrix &rho0) const override;
    /// Columns by linearity from I/2 and (I + sigma_mu)/2.
    const TransferMatrix &transfer_matrix() const override { return t_; }

private:
    Vec4 probabilities_unchecked(const Mat2c &rho0) const;

    CircuitParams params_;
    Mat8c u_;
    TransferMatrix t_;
};

ErrorFigure qttf(const CircuitParams &p, const QuadratureRule &rule);

struct OptimizeOptions {
    int restarts = 50;
    std::uint64_t seed = 0;
    NelderMeadOptions nelder_mead{};
    AngleConvention convention = AngleConvention::kHalf;
};

struct RestartRecord {
    std::array<double, 12> start;
    CircuitParams best;
    double value;
    int iterations;
    bool converged;
};

struct OptimizeResult {
    CircuitParams best;
    double value;
    std::vector<RestartRecord> restarts;
};

/// Nelder-Mead from starts uniform in [0, 2 pi]^12.
OptimizeResult optimize(const QuadratureRule &rule, const OptimizeOptions &opts);

OptimizeResult optimize_from(const CircuitParams &start, const QuadratureRule &rule,
                             const NelderMeadOptions &nm = {});

}  // namespace qtomo::circuit
