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
#include <string>
#include <vector>

#include "qtomo/estimators.hpp"
#include "qtomo/tomography_model.hpp"

namespace qtomo {

struct NamedState {
    std::string name;
    PureState state;
};

/// |0>, |1>, |+>, |->, |+i>, |-i> named z0, z1, x0, x1, y0, y1.
const std::vector<NamedState> &pauli_eigenstate_set();

/// Outcome counts of one multinomial draw.
struct CountRecord {
    std::vector<std::int64_t> counts;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    /// Only for four-outcome records.
    FrequencyVector frequencies() const;
};

/// Multinomial draw of `shots` outcomes from p (nonnegative, sums to one
/// within 1e-9) on substream (seed, stream).
CountRecord sample_counts(std::span<const double> p, std::int64_t shots, std::uint64_t seed,
                          std::uint64_t stream = 0);

struct SingleRow {
    std::string state;
    double theta;
    double truth;
    double mean;
    double std;
    /// sqrt(F^{-1} / shots) for one repeat.
    double sigma;
    bool pass;
    std::vector<double> estimates;
};

struct SingleReport {
    std::vector<SingleRow> rows;
    std::int64_t shots;
    int repeats;
    std::uint64_t seed;
};

/// s_z estimates from `repeats` independent runs of `shots` shots for every
/// (theta, state). A row passes when |mean - truth| <= 3 max(std, sigma),
/// with a 1e-12 floor.
SingleReport run_single_experiment(std::span<const double> thetas, const std::vector<NamedState> &states,
                                   std::int64_t shots, int repeats, std::uint64_t seed);

enum class Estimator { kLinearInversion, kRhoR };

const char *estimator_name(Estimator e);

struct FullRow {
    std::string state;
    Vec3 truth;
    Vec3 mean;
    Vec3 std;
    /// Mean over repeats of the fidelity of s/|s| with the target.
    double fidelity;
    /// Fidelity of the mean estimate (clipped into the ball) with the target.
    double fidelity_of_mean;
    /// Linear-inversion repeats that landed outside the ball.
    int unphysical;
    std::vector<Vec3> estimates;
};

struct FullReport {
    std::vector<FullRow> rows;
    Estimator estimator;
    std::int64_t shots;
    int repeats;
    std::uint64_t seed;
};

/// Full Bloch estimates for each state. shots == 0 runs on the exact
/// probabilities (one noiseless estimate per repeat).
FullReport run_full_experiment(const TomographyModel &model, Estimator estimator,
                               const std::vector<NamedState> &states, std::int64_t shots, int repeats,
                               std::uint64_t seed, const MleConfig &mle = {});

struct ScanRow {
    std::int64_t shots;
    /// Estimator variance averaged over the six Pauli eigenstates (trace of
    /// the covariance for full models).
    double mean_variance;
    /// Mean F^{-1} (or Tr F^{-1}) over the same states, divided by shots.
    double bound;
    /// mean_variance (shots - 1) / mean F^{-1}.
    double ratio;
    /// mean_variance >= bound (1 - 3 / sqrt(trials)).
    bool cramer_rao;
};

struct ScanReport {
    std::vector<ScanRow> rows;
    int trials;
    std::uint64_t seed;
    /// ratio in [0.9, 1.1] at the largest shot count.
    bool converged;
    bool cramer_rao;
};

/// Empirical estimator variance against the Fisher bound for the
/// single-meter model at theta. `shots` must be ascending, each >= 2.
ScanReport variance_vs_fisher_scan(double theta, std::span<const std::int64_t> shots, int trials,
                                   std::uint64_t seed);
/// Same with linear inversion on a full model.
ScanReport variance_vs_fisher_scan(const TomographyModel &model, std::span<const std::int64_t> shots,
                                   int trials, std::uint64_t seed);

/// Single-shot estimates of s_z: the values the estimator takes for the
/// frequency vectors (1, 0) and (0, 1).
std::array<double, 2> single_shot_estimates(double theta);

/// P0 P1 (s_0 - s_1)^2 from the single-shot estimates.
double bernoulli_variance(const PureState &psi, double theta);

/// Unbiased sample variance of n0 copies of s0 and n1 copies of s1, summed
/// value by value.
double sample_variance(std::int64_t n0, std::int64_t n1, double s0, double s1);
/// N / (N - 1) f0 f1 (s0 - s1)^2.
double sample_variance_closed_form(std::int64_t n0, std::int64_t n1, double s0, double s1);

struct B2Result {
    /// sum_j G_ij^2 sum_l p_l (s_l^j - sum_m p_m s_m^j)^2, i = 0..3.
    Vec4 lhs;
    /// (0, (F^{-1})_11, (F^{-1})_22, (F^{-1})_33).
    Vec4 rhs;
    double max_abs_diff;
};

/// Variance of the single-outcome estimates mapped through G = T^{-1} S^{-1}
/// against the Fisher diagonal.
B2Result appendix_b2_check(const PureState &psi, const TransferMatrix &t);

}  // namespace qtomo
