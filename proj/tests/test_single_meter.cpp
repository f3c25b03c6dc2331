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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtomo/harness.hpp"
#include "qtomo/single_meter.hpp"

namespace qtomo::single {
namespace {

using oracle::kPi;

TEST(SingleMeter, ProbabilitiesMatchCircuitSimulation) {
    for (int i = 0; i < 300; ++i) {
        const PureState psi = oracle::random_pure();
        const double th = oracle::uniform(0, 2 * kPi);
        const auto p = probabilities(psi, th);
        const auto q = oracle::single_meter_probs(psi.c0(), psi.c1(), th);
        EXPECT_NEAR(p[0], q[0], 1e-12);
        EXPECT_NEAR(p[1], q[1], 1e-12);
        EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
    }
}

TEST(SingleMeter, EstimatorInvertsProbabilities) {
    for (int i = 0; i < 300; ++i) {
        const PureState psi = oracle::random_pure();
        const double th = oracle::uniform(0.05, 2 * kPi - 0.05);
        const auto p = probabilities(psi, th);
        EXPECT_NEAR(estimate_sz(p[0], p[1], th), psi.bloch().z(), 1e-10);
    }
}

TEST(SingleMeter, EstimatorErrors) {
    EXPECT_THROW(estimate_sz(1.0, 0.0, 0.0), NonInformativeCoupling);
    EXPECT_THROW(estimate_sz(1.0, 0.0, 2 * kPi), NonInformativeCoupling);
    EXPECT_THROW(estimate_sz(0.7, 0.4, kPi), ValidationError);
    EXPECT_TRUE(is_non_informative(1e-7));
    EXPECT_FALSE(is_non_informative(1e-3));
}

TEST(SingleMeter, FisherInverseEqualsBinomialForm) {
    for (int i = 0; i < 300; ++i) {
        const double a1 = oracle::uniform(0, kPi / 2), a2 = oracle::uniform(0, kPi);
        const double th = oracle::uniform(0.1, kPi);
        const PureState psi = PureState::from_angles(a1, a2);
        const auto q = oracle::single_meter_probs(psi.c0(), psi.c1(), th);
        const double s4 = std::pow(std::sin(th / 2), 4);
        const double expect = 4 * q[0] * q[1] / s4;
        EXPECT_NEAR(fisher_inverse(psi, th), expect, 1e-9 * std::max(1.0, expect));
        EXPECT_NEAR(fisher_inverse_angles(a1, th), expect, 1e-9 * std::max(1.0, expect));
    }
}

TEST(SingleMeter, FisherInverseExamples) {
    EXPECT_NEAR(fisher_inverse_angles(0.0, kPi), 0.0, 1e-15);
    EXPECT_NEAR(fisher_inverse_angles(kPi / 4, kPi), 1.0, 1e-12);
    EXPECT_NEAR(fisher_inverse_angles(kPi / 2, kPi), 0.0, 1e-12);
}

TEST(SingleMeter, MeanErrorAtPi) {
    EXPECT_NEAR(qttf(kPi).value(), 2.0 / 3.0, 1e-12);
    EXPECT_TRUE(qttf(0.0).is_divergent());
    EXPECT_TRUE(max_error(0.0).is_divergent());
}

TEST(SingleMeter, ClosedFormMatchesQuadrature) {
    const auto rule = make_quadrature();
    for (int i = 0; i < 50; ++i) {
        const double th = 0.1 + (kPi - 0.1) * (i + 1) / 50.0;
        EXPECT_NEAR(qttf(th).value(), qttf_quadrature(th, rule).value(), 1e-8) << "theta " << th;
    }
}

TEST(SingleMeter, MeanErrorMinimizedAtPi) {
    const double at_pi = qttf(kPi).value();
    for (int i = 0; i < 200; ++i) {
        const double th = oracle::uniform(0.05, 2 * kPi - 0.05);
        EXPECT_GE(qttf(th).value(), at_pi - 1e-12);
    }
}

TEST(SingleMeter, MaxErrorMatchesGridMaximum) {
    for (int i = 0; i < 60; ++i) {
        const double th = 0.1 + (kPi - 0.1) * i / 59.0;
        double best = 0.0;
        for (int k = 0; k <= 20000; ++k) best = std::max(best, fisher_inverse_angles(kPi / 2 * k / 20000.0, th));
        EXPECT_NEAR(max_error(th).value(), best, 1e-6 * std::max(1.0, best)) << "theta " << th;
    }
    EXPECT_NEAR(max_error(kPi).value(), 1.0, 1e-12);
}

TEST(SingleMeter, PauliAverageEqualsMeanError) {
    for (int i = 0; i < 100; ++i) {
        const double th = oracle::uniform(0.1, kPi);
        double sum = 0.0;
        for (const auto &s : pauli_eigenstate_set()) sum += fisher_inverse(s.state, th);
        EXPECT_NEAR(sum / 6.0, qttf(th).value(), 1e-10 * qttf(th).value());
        EXPECT_NEAR(two_design_average(th), qttf(th).value(), 1e-10 * qttf(th).value());
    }
}

TEST(SingleMeter, ZeroErrorImpliesZeroEntropy) {
    for (int i = 0; i <= 40; ++i) {
        for (int j = 1; j <= 40; ++j) {
            const double a1 = kPi / 2 * i / 40.0, th = kPi * j / 40.0;
            const double f = fisher_inverse_angles(a1, th);
            const double e = entanglement_entropy(a1, th);
            if (f < 1e-12) {
                EXPECT_LT(e, 1e-10);
            }
            // Off the a1 = pi/2 edge the two vanish together.
            if (i < 40) {
                EXPECT_EQ(f < 1e-12, e < 1e-10) << a1 << " " << th;
            }
        }
    }
}

}  // namespace
}  // namespace qtomo::single
