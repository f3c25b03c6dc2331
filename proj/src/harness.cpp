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

#include "qtomo/harness.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qtomo/parallel.hpp"
#include "qtomo/single_meter.hpp"

namespace qtomo {

const std::vector<NamedState> &pauli_eigenstate_set() {
    static const std::vector<NamedState> states = [] {
        const double r = 1.0 / std::numbers::sqrt2;
        const cplx i(0.0, 1.0);
        return std::vector<NamedState>{
            {"z0", PureState(1.0, 0.0)}, {"z1", PureState(0.0, 1.0)},
            {"x0", PureState(r, r)},     {"x1", PureState(r, -r)},
            {"y0", PureState(r, i * r)}, {"y1", PureState(r, -i * r)},
        };
    }();
    return states;
}

namespace {

void validate_distribution(std::span<const double> p) {
    if (p.empty()) throw ValidationError("probability vector is empty");
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < -1e-12) {
            throw ValidationError("probabilities must be finite and nonnegative");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("probabilities must sum to 1, got " + std::to_string(total));
    }
}

// Sequential binomial decomposition of the multinomial.
std::vector<std::int64_t> multinomial(std::mt19937_64 &gen, std::span<const double> p, std::int64_t shots) {
    std::vector<std::int64_t> counts(p.size(), 0);
    std::int64_t remaining = shots;
    double mass = 1.0;
    for (std::size_t k = 0; k + 1 < p.size() && remaining > 0; ++k) {
        const double pk = std::max(p[k], 0.0);
        const double q = mass > 0.0 ? std::clamp(pk / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::int64_t> bin(remaining, q);
        counts[k] = bin(gen);
        remaining -= counts[k];
        mass -= pk;
    }
    counts.back() += remaining;
    return counts;
}

double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double> &v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double projected_fidelity(const PureState &target, const Vec3 &s) {
    const double n = s.norm();
    if (n < 1e-15) return 0.5;
    return 0.5 * (1.0 + target.bloch().vector().dot(s / n));
}

Vec3 estimate_bloch(const Vec4 &freq, const TransferMatrix &t, Estimator e, const MleConfig &mle) {
    const FrequencyVector f(freq);
    if (e == Estimator::kLinearInversion) return linear_inversion(f, t).estimate.vector();
    return rho_r_mle(f, t, mle).rho.bloch().vector();
}

}  // namespace

FrequencyVector CountRecord::frequencies() const {
    if (counts.size() != 4) throw ValidationError("frequency vector needs four outcomes");
    return FrequencyVector::from_counts({counts[0], counts[1], counts[2], counts[3]});
}

CountRecord sample_counts(std::span<const double> p, std::int64_t shots, std::uint64_t seed,
                          std::uint64_t stream) {
    validate_distribution(p);
    if (shots < 1) throw ValidationError("shots must be >= 1");
    auto gen = make_stream(seed, stream);
    return CountRecord{multinomial(gen, p, shots), shots, seed, stream};
}

SingleReport run_single_experiment(std::span<const double> thetas, const std::vector<NamedState> &states,
                                   std::int64_t shots, int repeats, std::uint64_t seed) {
    if (shots < 1 || repeats < 1) throw ValidationError("shots and repeats must be >= 1");
    for (double th : thetas) {
        if (single::is_non_informative(th)) throw NonInformativeCoupling(th);
    }
    const std::size_t ns = states.size();
    std::vector<SingleRow> rows(thetas.size() * ns);
    parallel_for(rows.size(), [&](std::size_t idx) {
        const double theta = thetas[idx / ns];
        const NamedState &st = states[idx % ns];
        const auto p = single::probabilities(st.state, theta);
        SingleRow row{st.name, theta, st.state.bloch().z(), 0.0, 0.0, 0.0, false, {}};
        for (int r = 0; r < repeats; ++r) {
            const auto c = sample_counts(p, shots, seed, idx * static_cast<std::size_t>(repeats) + r);
            const double n = static_cast<double>(shots);
            row.estimates.push_back(single::estimate_sz(c.counts[0] / n, c.counts[1] / n, theta));
        }
        row.mean = mean_of(row.estimates);
        row.std = std_of(row.estimates);
        row.sigma = std::sqrt(single::fisher_inverse(st.state, theta) / static_cast<double>(shots));
        const double tol = std::max(3.0 * std::max(row.std, row.sigma), 1e-12);
        row.pass = std::abs(row.mean - row.truth) <= tol;
        rows[idx] = std::move(row);
    });
    return SingleReport{std::move(rows), shots, repeats, seed};
}

const char *estimator_name(Estimator e) {
    return e == Estimator::kLinearInversion ? "linear-inversion" : "rho-r";
}

FullReport run_full_experiment(const TomographyModel &model, Estimator estimator,
                               const std::vector<NamedState> &states, std::int64_t shots, int repeats,
                               std::uint64_t seed, const MleConfig &mle) {
    if (shots < 0 || repeats < 1) throw ValidationError("shots must be >= 0 and repeats >= 1");
    const TransferMatrix &t = model.transfer_matrix();
    std::vector<FullRow> rows(states.size());
    parallel_for(states.size(), [&](std::size_t i) {
        const NamedState &st = states[i];
        const Vec4 p = model.probabilities(st.state.density());
        FullRow row;
        row.state = st.name;
        row.truth = st.state.bloch().vector();
        row.unphysical = 0;
        for (int r = 0; r < repeats; ++r) {
            Vec4 freq = p;
            if (shots > 0) {
                const std::array<double, 4> pa{p(0), p(1), p(2), p(3)};
                const auto c = sample_counts(pa, shots, seed, i * static_cast<std::size_t>(repeats) + r);
                freq = c.frequencies().values();
            } else {
                freq /= freq.sum();
            }
            const Vec3 s = estimate_bloch(freq, t, estimator, mle);
            if (s.norm() > 1.0 + kPhysicalTol) ++row.unphysical;
            row.estimates.push_back(s);
        }
        row.mean = Vec3::Zero();
        for (const auto &s : row.estimates) row.mean += s;
        row.mean /= static_cast<double>(repeats);
        row.std = Vec3::Zero();
        double fid = 0.0;
        for (const auto &s : row.estimates) {
            row.std += (s - row.mean).cwiseAbs2();
            fid += projected_fidelity(st.state, s);
        }
        row.std = repeats > 1 ? Vec3((row.std / (repeats - 1)).cwiseSqrt()) : Vec3::Zero();
        row.fidelity = fid / repeats;
        row.fidelity_of_mean = fidelity(st.state, BlochState(row.mean(0), row.mean(1), row.mean(2)).clipped_to_ball());
        rows[i] = std::move(row);
    });
    return FullReport{std::move(rows), estimator, shots, repeats, seed};
}

namespace {

void validate_grid(std::span<const std::int64_t> shots, int trials) {
    if (shots.empty()) throw ValidationError("shot grid is empty");
    if (trials < 2) throw ValidationError("trials must be >= 2");
    for (std::size_t i = 0; i < shots.size(); ++i) {
        if (shots[i] < 2) throw ValidationError("shot counts must be >= 2");
        if (i > 0 && shots[i] <= shots[i - 1]) throw ValidationError("shot grid must be ascending");
    }
}

ScanReport finish_scan(std::vector<ScanRow> rows, int trials, std::uint64_t seed) {
    ScanReport rep{std::move(rows), trials, seed, false, true};
    for (const auto &r : rep.rows) rep.cramer_rao = rep.cramer_rao && r.cramer_rao;
    const double last = rep.rows.back().ratio;
    rep.converged = last >= 0.9 && last <= 1.1;
    return rep;
}

ScanRow make_row(std::int64_t n, double var, double finv, int trials) {
    const double bound = finv / static_cast<double>(n);
    return ScanRow{n, var, bound, var * static_cast<double>(n - 1) / finv,
                   var >= bound * (1.0 - 3.0 / std::sqrt(static_cast<double>(trials)))};
}

}  // namespace

ScanReport variance_vs_fisher_scan(double theta, std::span<const std::int64_t> shots, int trials,
                                   std::uint64_t seed) {
    validate_grid(shots, trials);
    if (single::is_non_informative(theta)) throw NonInformativeCoupling(theta);
    const auto &states = pauli_eigenstate_set();
    const std::size_t ns = states.size();
    std::vector<double> var(shots.size() * ns);
    parallel_for(var.size(), [&](std::size_t idx) {
        const std::int64_t n = shots[idx / ns];
        const auto p = single::probabilities(states[idx % ns].state, theta);
        auto gen = make_stream(seed, idx);
        std::vector<double> est(static_cast<std::size_t>(trials));
        for (auto &e : est) {
            const auto c = multinomial(gen, p, n);
            const double nn = static_cast<double>(n);
            e = single::estimate_sz(c[0] / nn, c[1] / nn, theta);
        }
        const double sd = std_of(est);
        var[idx] = sd * sd;
    });
    double finv = 0.0;
    for (const auto &st : states) finv += single::fisher_inverse(st.state, theta);
    finv /= static_cast<double>(ns);
    std::vector<ScanRow> rows;
    for (std::size_t k = 0; k < shots.size(); ++k) {
        double v = 0.0;
        for (std::size_t s = 0; s < ns; ++s) v += var[k * ns + s];
        rows.push_back(make_row(shots[k], v / static_cast<double>(ns), finv, trials));
    }
    return finish_scan(std::move(rows), trials, seed);
}

ScanReport variance_vs_fisher_scan(const TomographyModel &model, std::span<const std::int64_t> shots,
                                   int trials, std::uint64_t seed) {
    validate_grid(shots, trials);
    const auto &states = pauli_eigenstate_set();
    const std::size_t ns = states.size();
    const TransferMatrix &t = model.transfer_matrix();
    const Mat4 tinv = t.inverse();
    std::vector<double> var(shots.size() * ns);
    parallel_for(var.size(), [&](std::size_t idx) {
        const std::int64_t n = shots[idx / ns];
        const Vec4 p = model.probabilities(states[idx % ns].state.density());
        const std::array<double, 4> pa{p(0), p(1), p(2), p(3)};
        auto gen = make_stream(seed, idx);
        std::vector<Vec3> est(static_cast<std::size_t>(trials));
        Vec3 mean = Vec3::Zero();
        for (auto &e : est) {
            const auto c = multinomial(gen, pa, n);
            Vec4 f;
            for (int q = 0; q < 4; ++q) f(q) = static_cast<double>(c[static_cast<std::size_t>(q)]) / n;
            e = (tinv * f).tail<3>();
            mean += e;
        }
        mean /= trials;
        double ss = 0.0;
        for (const auto &e : est) ss += (e - mean).squaredNorm();
        var[idx] = ss / (trials - 1);
    });
    double finv = 0.0;
    for (const auto &st : states) {
        const ErrorFigure d = delta_error(t, st.state.bloch());
        if (d.is_divergent()) throw NumericalError("Fisher matrix is singular for state " + st.name);
        finv += d.value();
    }
    finv /= static_cast<double>(ns);
    std::vector<ScanRow> rows;
    for (std::size_t k = 0; k < shots.size(); ++k) {
        double v = 0.0;
        for (std::size_t s = 0; s < ns; ++s) v += var[k * ns + s];
        rows.push_back(make_row(shots[k], v / static_cast<double>(ns), finv, trials));
    }
    return finish_scan(std::move(rows), trials, seed);
}

std::array<double, 2> single_shot_estimates(double theta) {
    return {single::estimate_sz(1.0, 0.0, theta), single::estimate_sz(0.0, 1.0, theta)};
}

double bernoulli_variance(const PureState &psi, double theta) {
    const auto p = single::probabilities(psi, theta);
    const auto s = single_shot_estimates(theta);
    return p[0] * p[1] * (s[0] - s[1]) * (s[0] - s[1]);
}

double sample_variance(std::int64_t n0, std::int64_t n1, double s0, double s1) {
    const std::int64_t n = n0 + n1;
    if (n0 < 0 || n1 < 0 || n < 2) throw ValidationError("sample variance needs n0, n1 >= 0 and N >= 2");
    double mean = 0.0;
    for (std::int64_t k = 0; k < n; ++k) mean += k < n0 ? s0 : s1;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        const double d = (k < n0 ? s0 : s1) - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(n - 1);
}

double sample_variance_closed_form(std::int64_t n0, std::int64_t n1, double s0, double s1) {
    const std::int64_t n = n0 + n1;
    if (n0 < 0 || n1 < 0 || n < 2) throw ValidationError("sample variance needs n0, n1 >= 0 and N >= 2");
    const double nn = static_cast<double>(n);
    const double f0 = n0 / nn, f1 = n1 / nn;
    return nn / (nn - 1.0) * f0 * f1 * (s0 - s1) * (s0 - s1);
}

B2Result appendix_b2_check(const PureState &psi, const TransferMatrix &t) {
    const Mat4 tinv = t.inverse();
    // Column l holds the estimate from the frequency vector e_l.
    const Mat4 single_outcome = tinv;
    const double cond = TransferMatrix(single_outcome).condition_number();
    if (!(cond < 1e12)) throw NonInvertibleModel(cond, "single-outcome estimate matrix");
    const Mat4 g = tinv * single_outcome.inverse();
    const BlochState s = psi.bloch();
    const Vec4 p = t.apply(s);
    const Vec4 mean = single_outcome * p;
    Vec4 var = Vec4::Zero();
    for (int j = 0; j < 4; ++j) {
        for (int l = 0; l < 4; ++l) {
            const double d = single_outcome(j, l) - mean(j);
            var(j) += p(l) * d * d;
        }
    }
    B2Result out;
    out.lhs = g.cwiseAbs2() * var;
    const Mat3 finv = fisher_matrix(t, s).inverse();
    out.rhs << 0.0, finv(0, 0), finv(1, 1), finv(2, 2);
    out.max_abs_diff = (out.lhs - out.rhs).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace qtomo
