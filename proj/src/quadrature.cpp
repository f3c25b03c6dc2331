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

#include "qtomo/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace qtomo {

void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Final derivative at the converged root.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

QuadratureRule make_quadrature(int n1, int n2) {
    if (n1 < 2 || n2 < 2) {
        throw ValidationError("quadrature orders must be >= 2");
    }
    constexpr double pi = std::numbers::pi;
    std::vector<double> x, w;
    gauss_legendre(n1, x, w);

    std::vector<QuadratureNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
    double total = 0.0;
    for (int i = 0; i < n1; ++i) {
        const double a1 = (x[static_cast<std::size_t>(i)] + 1.0) * pi / 4.0;
        const double w1 = w[static_cast<std::size_t>(i)] * pi / 4.0 * std::sin(2.0 * a1);
        for (int j = 0; j < n2; ++j) {
            const double a2 = (j + 0.5) * pi / n2;
            const double weight = w1 * (pi / n2) / pi;
            nodes.push_back({a1, a2, weight});
            total += weight;
        }
    }
    // The analytic total is exactly one; remove the O(eps) Gauss residue.
    for (auto &n : nodes) n.weight /= total;
    return QuadratureRule(n1, n2, std::move(nodes));
}

double QuadratureRule::integrate(const std::function<double(double, double)> &f) const {
    double acc = 0.0;
    for (const auto &n : nodes_) acc += n.weight * f(n.alpha1, n.alpha2);
    return acc;
}

}  // namespace qtomo
