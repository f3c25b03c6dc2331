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

#include "qtomo/tomography_model.hpp"

namespace qtomo {

/// Empirical outcome frequencies: nonnegative, summing to one within 1e-9.
class FrequencyVector {
public:
    explicit FrequencyVector(const Vec4 &p);
    static FrequencyVector from_counts(const std::array<std::int64_t, 4> &counts);

    const Vec4 &values() const { return p_; }
    double operator[](int q) const { return p_(q); }

private:
    Vec4 p_;
};

struct LinearInversionResult {
    /// T^{-1} P with s0 renormalized to one.
    BlochState estimate;
    /// |s0 - 1| before renormalization.
    double s0_deviation;
    /// |s| <= 1 + 1e-9.
    bool physical;
    double condition_number;
};

/// S = T^{-1} P. Never projects into the ball; the physical flag reports it.
/// Throws NonInvertibleModel for a condition number >= 1e12.
LinearInversionResult linear_inversion(const FrequencyVector &p, const TransferMatrix &t);

struct MleConfig {
    int max_iterations = 10000;
    double tol = 1e-10;
};

/// Floor applied to predicted probabilities inside the iteration.
inline constexpr double kMleProbabilityFloor = 1e-14;

struct MleResult {
    DensityMatrix rho = DensityMatrix::maximally_mixed();
    int iterations = 0;
    bool converged = false;
    /// Number of predicted probabilities raised to the floor.
    int floored = 0;
    /// Number of iterations that needed a diluted step.
    int diluted = 0;
    /// Log-likelihood after each accepted iterate, starting with I/2.
    std::vector<double> log_likelihood;
};

/// sum_q P_q log(T rho)_q over cells with P_q > 0.
double log_likelihood(const FrequencyVector &p, const TransferMatrix &t, const DensityMatrix &rho);

/// Iterative R rho R maximum likelihood from I/2 with
/// R = sum_mu r_mu sigma_mu, r_mu = sum_q (P_q / Pc_q) T_q,mu.
/// A step that would lower the likelihood is replaced by the diluted step
/// (I + eps R) rho (I + eps R), eps halved until it does not. Stops when the
/// predicted probabilities or the Bloch vector move by less than tol.
MleResult rho_r_mle(const FrequencyVector &p, const TransferMatrix &t, const MleConfig &cfg = {});

}  // namespace qtomo
