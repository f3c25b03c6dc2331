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

#include "qtomo/estimators.hpp"

#include <cmath>

namespace qtomo {

FrequencyVector::FrequencyVector(const Vec4 &p) : p_(p) {
    for (int q = 0; q < 4; ++q) {
        if (!std::isfinite(p(q)) || p(q) < 0.0) {
            throw ValidationError("frequencies must be finite and nonnegative");
        }
    }
    if (std::abs(p.sum() - 1.0) > 1e-9) {
        throw ValidationError("frequencies must sum to 1, got " + std::to_string(p.sum()));
    }
}

FrequencyVector FrequencyVector::from_counts(const std::array<std::int64_t, 4> &counts) {
    std::int64_t total = 0;
    for (auto c : counts) {
        if (c < 0) throw ValidationError("counts must be nonnegative");
        total += c;
    }
    if (total <= 0) throw ValidationError("counts must sum to a positive number");
    Vec4 p;
    for (int q = 0; q < 4; ++q) {
        p(q) = static_cast<double>(counts[static_cast<std::size_t>(q)]) / static_cast<double>(total);
    }
    return FrequencyVector(p);
}

LinearInversionResult linear_inversion(const FrequencyVector &p, const TransferMatrix &t) {
    const double cond = t.condition_number();
    const Vec4 s = t.inverse() * p.values();
    const BlochState est(Vec4(1.0, s(1), s(2), s(3)));
    return {est, std::abs(s(0) - 1.0), est.is_physical(), cond};
}

namespace {

Vec4 predicted(const TransferMatrix &t, const Mat2c &rho) {
    Vec4 s;
    for (int mu = 0; mu < 4; ++mu) s(mu) = (rho * pauli(mu)).trace().real();
    return t.matrix() * s;
}

double likelihood_of(const Vec4 &p, const Vec4 &pc) {
    double l = 0.0;
    for (int q = 0; q < 4; ++q) {
        if (p(q) > 0.0) l += p(q) * std::log(std::max(pc(q), kMleProbabilityFloor));
    }
    return l;
}

Mat2c normalized(const Mat2c &m) {
    const Mat2c h = 0.5 * (m + m.adjoint());
    return h / h.trace().real();
}

}  // namespace

double log_likelihood(const FrequencyVector &p, const TransferMatrix &t, const DensityMatrix &rho) {
    return likelihood_of(p.values(), predicted(t, rho.matrix()));
}

MleResult rho_r_mle(const FrequencyVector &p, const TransferMatrix &t, const MleConfig &cfg) {
    if (cfg.max_iterations <= 0 || !(cfg.tol > 0.0)) {
        throw ValidationError("MLE config needs max_iterations > 0 and tol > 0");
    }
    const Vec4 &f = p.values();
    const Mat4 &tm = t.matrix();
    MleResult out;
    Mat2c rho = 0.5 * Mat2c::Identity();
    Vec4 pc = predicted(t, rho);
    double ll = likelihood_of(f, pc);
    out.log_likelihood.push_back(ll);

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        Vec4 ratio;
        for (int q = 0; q < 4; ++q) {
            double v = pc(q);
            if (v <= kMleProbabilityFloor) {
                v = kMleProbabilityFloor;
                ++out.floored;
            }
            ratio(q) = f(q) / v;
        }
        const Vec4 r = tm.transpose() * ratio;
        Mat2c big_r = Mat2c::Zero();
        for (int mu = 0; mu < 4; ++mu) big_r += r(mu) * pauli(mu);

        Mat2c next = normalized(big_r * rho * big_r);
        Vec4 pc_next = predicted(t, next);
        double ll_next = likelihood_of(f, pc_next);
        if (ll_next < ll) {
            ++out.diluted;
            double eps = 1.0;
            while (ll_next < ll && eps > 1e-12) {
                eps *= 0.5;
                const Mat2c step = Mat2c::Identity() + eps * big_r;
                next = normalized(step * rho * step.adjoint());
                pc_next = predicted(t, next);
                ll_next = likelihood_of(f, pc_next);
            }
            if (ll_next < ll) {
                // No ascent direction left: rho is the fixed point.
                out.iterations = it;
                out.converged = true;
                break;
            }
        }
        const double dp = (pc_next - pc).cwiseAbs().maxCoeff();
        Vec3 ds;
        for (int mu = 1; mu < 4; ++mu) ds(mu - 1) = ((next - rho) * pauli(mu)).trace().real();
        rho = next;
        pc = pc_next;
        ll = ll_next;
        out.log_likelihood.push_back(ll);
        out.iterations = it;
        if (dp < cfg.tol || ds.norm() < cfg.tol) {
            out.converged = true;
            break;
        }
    }
    out.rho = DensityMatrix(rho);
    return out;
}

}  // namespace qtomo
