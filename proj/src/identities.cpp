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

#include "qtomo/identities.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "qtomo/circuit.hpp"
#include "qtomo/estimators.hpp"
#include "qtomo/harness.hpp"
#include "qtomo/parallel.hpp"
#include "qtomo/single_meter.hpp"
#include "qtomo/two_meter.hpp"

namespace qtomo {

bool IdentityReport::all_passed() const {
    for (const auto &c : checks) {
        if (!c.passed()) return false;
    }
    return true;
}

const IdentityCheck &IdentityReport::check(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) return c;
    }
    throw ValidationError("no identity check named " + name);
}

namespace {

constexpr double kPi = std::numbers::pi;

class Sampler {
public:
    Sampler(std::uint64_t seed, std::uint64_t stream) : gen_(make_stream(seed, stream)) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

    PureState pure() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * kPi);
        const double t = std::acos(z);
        return PureState(std::cos(t / 2), std::polar(std::sin(t / 2), phi));
    }

    DensityMatrix mixed() {
        const Vec3 dir = pure().bloch().vector();
        const double r = 0.95 * std::cbrt(uniform(0.0, 1.0));
        return BlochState(r * dir(0), r * dir(1), r * dir(2)).density();
    }

    two_meter::TwoMeterParams two_meter() {
        const auto coupling = uniform(0.0, 1.0) < 0.5 ? two_meter::BCoupling::kProjector
                                                      : two_meter::BCoupling::kUnnormalized;
        return {uniform(-3 * kPi, 3 * kPi), uniform(-3 * kPi, 3 * kPi), coupling};
    }

    circuit::CircuitParams circuit() {
        std::array<double, 12> x;
        for (double &v : x) v = uniform(0.0, 2 * kPi);
        return circuit::CircuitParams::from_flat(x);
    }

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }

    std::uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

class Accumulator {
public:
    Accumulator(std::string name, double tol) {
        c_.name = std::move(name);
        c_.tolerance = tol;
    }
    void add(double deviation) {
        ++c_.cases;
        if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
        c_.max_deviation = std::max(c_.max_deviation, deviation);
    }
    IdentityCheck result() const { return c_; }

private:
    IdentityCheck c_;
};

double max_abs(const Vec4 &v) { return v.cwiseAbs().maxCoeff(); }

double coefficient_gap(double ta, double tb) {
    const auto cf = two_meter::coefficients_closed_form(ta, tb);
    const auto tr = two_meter::coefficients_trace_form(ta, tb);
    return std::max({max_abs(cf.a - tr.a), max_abs(cf.b - tr.b), max_abs(cf.c - tr.c)});
}

IdentityCheck check_coefficients(std::uint64_t seed) {
    Sampler rng(seed, 1);
    Accumulator acc("coefficient_forms", 1e-10);
    for (int i = 0; i < 1000; ++i) acc.add(coefficient_gap(rng.uniform(-3 * kPi, 3 * kPi), rng.uniform(-3 * kPi, 3 * kPi)));
    for (int i = 0; i < 50; ++i) {
        const double r = rng.uniform(0.0, 1e-6), phi = rng.uniform(0.0, 2 * kPi);
        acc.add(coefficient_gap(r * std::cos(phi), r * std::sin(phi)));
    }
    return acc.result();
}

IdentityCheck check_two_meter_simulation(std::uint64_t seed, Fault fault) {
    Sampler rng(seed, 2);
    Accumulator acc("two_meter_transfer_vs_simulation", 1e-12);
    for (int i = 0; i < 100; ++i) {
        const auto p = rng.two_meter();
        Mat4 t = two_meter::transfer_matrix(p).matrix();
        if (fault == Fault::kCorruptTransfer) t(0, 1) += 1e-3;
        const DensityMatrix rho = rng.mixed();
        acc.add(max_abs(t * rho.bloch().components() - two_meter::simulate_probabilities(rho, p)));
    }
    return acc.result();
}

IdentityCheck check_circuit_simulation(std::uint64_t seed, Fault fault) {
    Sampler rng(seed, 3);
    Accumulator acc("circuit_transfer_vs_simulation", 1e-12);
    for (int i = 0; i < 100; ++i) {
        const circuit::CircuitModel m(rng.circuit());
        Mat4 t = m.transfer_matrix().matrix();
        if (fault == Fault::kCorruptTransfer) t(2, 3) -= 1e-3;
        const DensityMatrix rho = rng.mixed();
        acc.add(max_abs(t * rho.bloch().components() - m.probabilities(rho)));
    }
    return acc.result();
}

IdentityCheck check_normalization(std::uint64_t seed) {
    Sampler rng(seed, 4);
    Accumulator acc("probability_normalization", 1e-12);
    for (int i = 0; i < 100; ++i) {
        const PureState psi = rng.pure();
        const auto p1 = single::probabilities(psi, rng.uniform(0.0, 2 * kPi));
        acc.add(std::abs(p1[0] + p1[1] - 1.0));
        const DensityMatrix rho = rng.mixed();
        acc.add(std::abs(two_meter::simulate_probabilities(rho, rng.two_meter()).sum() - 1.0));
        acc.add(std::abs(circuit::CircuitModel(rng.circuit()).probabilities(rho).sum() - 1.0));
    }
    return acc.result();
}

IdentityCheck check_unitarity(std::uint64_t seed) {
    Sampler rng(seed, 5);
    Accumulator acc("unitarity", 1e-12);
    for (int i = 0; i < 100; ++i) {
        acc.add(unitarity_defect(circuit::build_unitary(rng.circuit())));
        const auto p = rng.two_meter();
        for (const auto &u : two_meter::branch_unitaries(p.theta_a, p.projector_theta_b())) {
            acc.add(unitarity_defect(u));
        }
        acc.add(unitarity_defect(circuit::u3(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                             rng.uniform(-kPi, kPi), circuit::AngleConvention::kFull)));
    }
    return acc.result();
}

// Fisher matrices on random (state, model) pairs, skipping vanishing outcomes.
template <typename F>
void for_each_fisher(std::uint64_t seed, std::uint64_t stream, F &&visit) {
    Sampler rng(seed, stream);
    for (int i = 0; i < 100; ++i) {
        const BlochState s = rng.pure().bloch();
        const TransferMatrix tms[2] = {two_meter::transfer_matrix(rng.two_meter()),
                                       circuit::CircuitModel(rng.circuit()).transfer_matrix()};
        for (const auto &t : tms) {
            try {
                visit(t, s, fisher_matrix(t, s));
            } catch (const SingularInformation &) {
            }
        }
    }
}

std::vector<IdentityCheck> check_fisher(std::uint64_t seed) {
    Accumulator sym("fisher_symmetry", 1e-12), psd("fisher_psd", 1e-12), forms("fisher_forms", 1e-10);
    for_each_fisher(seed, 6, [&](const TransferMatrix &t, const BlochState &s, const Mat3 &f) {
        const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
        sym.add((f - f.transpose()).cwiseAbs().maxCoeff() / scale);
        Eigen::SelfAdjointEigenSolver<Mat3> es(f, Eigen::EigenvaluesOnly);
        psd.add(std::max(0.0, -es.eigenvalues()(0)) / scale);
        forms.add((f - fisher_matrix_factored(t, s)).cwiseAbs().maxCoeff() / scale);
    });
    return {sym.result(), psd.result(), forms.result()};
}

std::vector<TransferMatrix> reference_models() {
    return {two_meter::transfer_matrix(two_meter::kReferenceOptimum),
            circuit::CircuitModel(circuit::reference_optimum()).transfer_matrix()};
}

IdentityCheck check_round_trip(std::uint64_t seed) {
    Sampler rng(seed, 7);
    Accumulator acc("linear_inversion_round_trip", 1e-12);
    for (const auto &t : reference_models()) {
        for (int i = 0; i < 100; ++i) {
            const BlochState s = rng.mixed().bloch();
            Vec4 p = t.apply(s);
            const auto res = linear_inversion(FrequencyVector(p / p.sum()), t);
            acc.add(max_abs(res.estimate.components() - s.components()));
        }
    }
    return acc.result();
}

std::vector<IdentityCheck> check_mle(std::uint64_t seed) {
    Sampler rng(seed, 8);
    Accumulator mono("mle_monotonicity", 1e-12), phys("mle_physicality", 1e-9);
    const auto models = reference_models();
    std::vector<std::pair<std::size_t, Vec4>> cases;
    for (std::size_t m = 0; m < models.size(); ++m) {
        for (int i = 0; i < 20; ++i) {
            const Vec4 p = models[m].apply(rng.pure().bloch());
            const std::array<double, 4> pa{p(0), p(1), p(2), p(3)};
            const auto c = sample_counts(pa, rng.integer(20, 2000), rng.bits());
            cases.emplace_back(m, c.frequencies().values());
        }
    }
    std::vector<MleResult> results(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        results[i] = rho_r_mle(FrequencyVector(cases[i].second), models[cases[i].first]);
    });
    for (const auto &r : results) {
        double drop = 0.0;
        for (std::size_t k = 1; k < r.log_likelihood.size(); ++k) {
            drop = std::max(drop, r.log_likelihood[k - 1] - r.log_likelihood[k]);
        }
        mono.add(drop);
        phys.add(std::max(0.0, -r.rho.min_eigenvalue()));
    }
    return {mono.result(), phys.result()};
}

std::vector<IdentityCheck> check_bernoulli(std::uint64_t seed) {
    Sampler rng(seed, 9);
    Accumulator fisher("bernoulli_variance", 1e-12), sample("sample_variance", 1e-12);
    for (int i = 0; i < 1000; ++i) {
        const PureState psi = rng.pure();
        const double theta = rng.uniform(0.1, kPi);
        const double finv = single::fisher_inverse(psi, theta);
        fisher.add(std::abs(bernoulli_variance(psi, theta) - finv) / std::max(1.0, finv));
    }
    for (int i = 0; i < 200; ++i) {
        const double theta = rng.uniform(0.1, kPi);
        const auto s = single_shot_estimates(theta);
        const std::int64_t n0 = rng.integer(0, 1000), n1 = rng.integer(n0 == 0 ? 2 : 0, 1000);
        const double exact = sample_variance_closed_form(n0, n1, s[0], s[1]);
        sample.add(std::abs(sample_variance(n0, n1, s[0], s[1]) - exact) / std::max(1.0, exact));
    }
    return {fisher.result(), sample.result()};
}

std::vector<IdentityCheck> check_single_outcome(std::uint64_t seed) {
    const auto models = reference_models();
    const char *names[2] = {"single_outcome_variance_two_meter", "single_outcome_variance_circuit"};
    std::vector<IdentityCheck> out;
    for (std::size_t m = 0; m < 2; ++m) {
        Sampler rng(seed, 10 + m);
        Accumulator acc(names[m], 1e-8);
        for (int i = 0; i < 100; ++i) acc.add(appendix_b2_check(rng.pure(), models[m]).max_abs_diff);
        out.push_back(acc.result());
    }
    return out;
}

std::vector<IdentityCheck> check_pauli_averages(std::uint64_t seed) {
    Sampler rng(seed, 12);
    Accumulator single_acc("pauli_average_single", 1e-12), full("pauli_average_two_meter", 1e-9);
    for (int i = 0; i < 100; ++i) {
        const double theta = rng.uniform(0.1, kPi);
        const double q = single::qttf(theta).value();
        single_acc.add(std::abs(single::two_design_average(theta) - q) / std::max(1.0, q));
    }
    const QuadratureRule rule = make_quadrature();
    for (int i = 0; i < 3; ++i) {
        const auto p = i == 0 ? two_meter::kReferenceOptimum : rng.two_meter();
        const TransferMatrix t = two_meter::transfer_matrix(p);
        const ErrorFigure q = qttf(t, rule);
        double avg = 0.0;
        bool finite = q.is_finite();
        for (const auto &st : pauli_eigenstate_set()) {
            const ErrorFigure d = delta_error(t, st.state.bloch());
            finite = finite && d.is_finite();
            avg += d.value();
        }
        if (!finite) continue;
        avg /= 6.0;
        full.add(std::abs(avg - q.value()) / std::max(1.0, q.value()));
    }
    return {single_acc.result(), full.result()};
}

}  // namespace

IdentityReport run_identity_suite(std::uint64_t seed, Fault fault) {
    IdentityReport rep;
    rep.seed = seed;
    auto append = [&](std::vector<IdentityCheck> v) {
        for (auto &c : v) rep.checks.push_back(std::move(c));
    };
    append({check_coefficients(seed), check_two_meter_simulation(seed, fault),
            check_circuit_simulation(seed, fault), check_normalization(seed), check_unitarity(seed)});
    append(check_fisher(seed));
    append({check_round_trip(seed)});
    append(check_mle(seed));
    append(check_bernoulli(seed));
    append(check_single_outcome(seed));
    append(check_pauli_averages(seed));
    return rep;
}

}  // namespace qtomo
