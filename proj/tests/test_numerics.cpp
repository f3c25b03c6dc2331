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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qtomo/nelder_mead.hpp"
#include "qtomo/parallel.hpp"

namespace qtomo {
namespace {

TEST(NelderMead, Quadratic) {
    auto f = [](std::span<const double> x) {
        return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 2) * (x[1] + 2) + (x[2] - 0.5) * (x[2] - 0.5);
    };
    const auto r = nelder_mead(f, {0.0, 0.0, 0.0});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.0, 1e-3);
    EXPECT_NEAR(r.x[1], -2.0, 1e-3);
    EXPECT_NEAR(r.x[2], 0.5, 1e-3);
    EXPECT_LT(r.fval, 1e-6);
    EXPECT_GE(r.evaluations, r.iterations);
}

TEST(NelderMead, Rosenbrock) {
    auto f = [](std::span<const double> x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    NelderMeadOptions o;
    o.xatol = 1e-10;
    o.fatol = 1e-12;
    o.max_iterations = 5000;
    const auto r = nelder_mead(f, {-1.2, 1.0}, o);
    EXPECT_NEAR(r.x[0], 1.0, 1e-5);
    EXPECT_NEAR(r.x[1], 1.0, 1e-5);
}

TEST(NelderMead, InfiniteRegionsAreAvoided) {
    auto f = [](std::span<const double> x) {
        if (x[0] < 0.5) return std::nan("");
        return (x[0] - 2) * (x[0] - 2);
    };
    const auto r = nelder_mead(f, {1.0});
    EXPECT_NEAR(r.x[0], 2.0, 1e-3);
}

TEST(NelderMead, IterationCap) {
    auto f = [](std::span<const double> x) { return std::abs(x[0]) + std::abs(x[1]); };
    NelderMeadOptions o;
    o.max_iterations = 5;
    const auto r = nelder_mead(f, {3.0, 4.0}, o);
    EXPECT_EQ(r.iterations, 5);
    EXPECT_FALSE(r.converged);
}

TEST(Parallel, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto &h : hits) EXPECT_EQ(h.load(), 1);
    parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(Parallel, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(50, [](std::size_t i) {
                     if (i == 17) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(Parallel, ThreadCapFromEnvironment) {
    setenv("QTOMO_THREADS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    setenv("QTOMO_THREADS", "zero", 1);
    EXPECT_GE(worker_count(), 1u);
    unsetenv("QTOMO_THREADS");
}

TEST(Streams, DeterministicAndDistinct) {
    auto a = make_stream(1, 0), b = make_stream(1, 0), c = make_stream(1, 1), d = make_stream(2, 0);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
}

}  // namespace
}  // namespace qtomo
