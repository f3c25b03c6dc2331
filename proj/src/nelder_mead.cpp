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

#include "qtomo/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qtomo {

namespace {

double sanitize(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

}  // namespace

NelderMeadResult nelder_mead(const Objective &f, std::vector<double> x0,
                             const NelderMeadOptions &opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    int evaluations = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evaluations;
        return sanitize(f(std::span<const double>(x)));
    };

    std::vector<std::vector<double>> sim(n + 1, x0);
    for (std::size_t k = 0; k < n; ++k) {
        double &c = sim[k + 1][k];
        c = c != 0.0 ? 1.05 * c : 0.00025;
    }
    std::vector<double> fsim(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fsim[i] = eval(sim[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fsim[a] < fsim[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = std::move(sim[order[i]]);
            f2[i] = fsim[order[i]];
        }
        sim = std::move(s2);
        fsim = std::move(f2);
    };
    sort_simplex();

    auto converged = [&] {
        double dx = 0.0, df = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) dx = std::max(dx, std::abs(sim[i][k] - sim[0][k]));
            const double d = fsim[i] - fsim[0];
            // inf - inf is NaN; a simplex stuck on +inf has not converged.
            df = std::max(df, std::isnan(d) ? std::numeric_limits<double>::infinity() : std::abs(d));
        }
        return dx <= opts.xatol && df <= opts.fatol;
    };

    auto affine = [&](const std::vector<double> &c, const std::vector<double> &w, double t) {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (w[k] - c[k]);
        return out;
    };

    int iterations = 0;
    bool done = converged();
    while (!done && iterations < opts.max_iterations) {
        ++iterations;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) centroid[k] += sim[i][k] / static_cast<double>(n);
        }
        const auto &worst = sim[n];

        const auto xr = affine(centroid, worst, -kReflect);
        const double fr = eval(xr);
        bool shrink = false;
        if (fr < fsim[0]) {
            const auto xe = affine(centroid, worst, -kReflect * kExpand);
            const double fe = eval(xe);
            if (fe < fr) {
                sim[n] = xe;
                fsim[n] = fe;
            } else {
                sim[n] = xr;
                fsim[n] = fr;
            }
        } else if (fr < fsim[n - 1]) {
            sim[n] = xr;
            fsim[n] = fr;
        } else if (fr < fsim[n]) {
            const auto xc = affine(centroid, worst, -kReflect * kContract);
            const double fc = eval(xc);
            if (fc <= fr) {
                sim[n] = xc;
                fsim[n] = fc;
            } else {
                shrink = true;
            }
        } else {
            const auto xcc = affine(centroid, worst, kContract);
            const double fcc = eval(xcc);
            if (fcc < fsim[n]) {
                sim[n] = xcc;
                fsim[n] = fcc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n; ++i) {
                sim[i] = affine(sim[0], sim[i], kShrink);
                fsim[i] = eval(sim[i]);
            }
        }
        sort_simplex();
        done = converged();
    }

    return NelderMeadResult{sim[0], fsim[0], iterations, evaluations, done};
}

}  // namespace qtomo
