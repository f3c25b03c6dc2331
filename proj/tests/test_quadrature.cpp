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
#include "qtomo/quadrature.hpp"

namespace qtomo {
namespace {

using oracle::kPi;

TEST(GaussLegendre, KnownNodes) {
    std::vector<double> x, w;
    gauss_legendre(3, x, w);
    ASSERT_EQ(x.size(), 3u);
    EXPECT_NEAR(x[0], -std::sqrt(0.6), 1e-15);
    EXPECT_NEAR(x[1], 0.0, 1e-15);
    EXPECT_NEAR(w[0], 5.0 / 9.0, 1e-15);
    EXPECT_NEAR(w[1], 8.0 / 9.0, 1e-15);
}

TEST(GaussLegendre, ExactForPolynomials) {
    std::vector<double> x, w;
    gauss_legendre(10, x, w);
    for (int deg = 0; deg <= 19; ++deg) {
        double sum = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * std::pow(x[i], deg);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        EXPECT_NEAR(sum, exact, 1e-14) << "degree " << deg;
    }
}

TEST(Quadrature, WeightsNormalized) {
    for (int n : {2, 7, 64}) {
        const auto rule = make_quadrature(n, n + 1);
        double sum = 0.0;
        for (const auto &node : rule.nodes()) {
            EXPECT_GE(node.weight, 0.0);
            EXPECT_GE(node.alpha1, 0.0);
            EXPECT_LE(node.alpha1, kPi / 2);
            EXPECT_GE(node.alpha2, 0.0);
            EXPECT_LE(node.alpha2, kPi);
            sum += node.weight;
        }
        EXPECT_NEAR(sum, 1.0, 1e-10);
        EXPECT_EQ(rule.nodes().size(), static_cast<std::size_t>(n * (n + 1)));
    }
    EXPECT_THROW(make_quadrature(1, 4), ValidationError);
}

TEST(Quadrature, SphericalMoments) {
    // Bloch components of the angle parameterization.
    const auto rule = make_quadrature();
    auto comp = [](int k) {
        return [k](double a1, double a2) {
            const double v[3] = {std::sin(2 * a1) * std::cos(2 * a2), -std::sin(2 * a1) * std::sin(2 * a2),
                                 std::cos(2 * a1)};
            return v[k];
        };
    };
    for (int k = 0; k < 3; ++k) {
        const auto f = comp(k);
        EXPECT_NEAR(rule.integrate(f), 0.0, 1e-12);
        EXPECT_NEAR(rule.integrate([&](double a, double b) { return f(a, b) * f(a, b); }), 1.0 / 3.0, 1e-12);
        EXPECT_NEAR(rule.integrate([&](double a, double b) { return std::pow(f(a, b), 4); }), 1.0 / 5.0, 1e-12);
    }
    EXPECT_NEAR(rule.integrate([&](double a, double b) { return comp(0)(a, b) * comp(2)(a, b); }), 0.0, 1e-12);
}

}  // namespace
}  // namespace qtomo
