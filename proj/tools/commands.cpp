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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtomo/circuit.hpp"
#include "qtomo/estimators.hpp"
#include "qtomo/harness.hpp"
#include "qtomo/identities.hpp"
#include "qtomo/single_meter.hpp"
#include "qtomo/two_meter.hpp"

namespace qtomo::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::string model = "two-meter";
    std::optional<double> theta;
    double theta_min = 0.1;
    double theta_max = std::numbers::pi;
    int points = 50;
    std::optional<double> theta_a;
    std::optional<double> theta_b;
    std::vector<double> params;
    std::int64_t shots = 1024;
    int repeats = 5;
    std::optional<std::uint64_t> seed;
    int quad = kDefaultQuadratureOrder;
    int restarts = 0;
    int table = 0;
    std::string out;
    std::string format = "json";
    std::string b_coupling = "unnormalized";
    std::string gate_convention = "half";
    std::string counts;
    std::string state;
    std::string truth;
    std::string estimator = "both";
    bool inject_fault = false;
};

class Output {
public:
    Output(const std::string &path, std::ostream &fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ValidationError("cannot open output file " + path);
        }
        os_ = path.empty() ? &fallback : &file_;
        *os_ << std::setprecision(10);
    }
    std::ostream &stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream *os_;
};

json metadata(const RunConfig &cfg) {
    json m;
    m["version"] = kVersion;
    m["command"] = cfg.command;
    if (cfg.seed) {
        m["seed"] = *cfg.seed;
    } else {
        m["seed"] = nullptr;
    }
    m["quad"] = cfg.quad;
    return m;
}

void csv_header(std::ostream &os, const RunConfig &cfg) {
    os << "# qtomo " << kVersion << " command=" << cfg.command
       << " seed=" << (cfg.seed ? std::to_string(*cfg.seed) : std::string("none")) << " quad=" << cfg.quad
       << "\n";
}

double finite_or_inf(const ErrorFigure &e) { return e.value(); }

json number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::uint64_t require_seed(const RunConfig &cfg) {
    if (!cfg.seed) throw ValidationError(cfg.command + " needs --seed");
    return *cfg.seed;
}

two_meter::BCoupling coupling_of(const RunConfig &cfg) {
    if (cfg.b_coupling == "unnormalized") return two_meter::BCoupling::kUnnormalized;
    if (cfg.b_coupling == "projector") return two_meter::BCoupling::kProjector;
    throw ValidationError("--b-coupling must be unnormalized or projector");
}

circuit::AngleConvention convention_of(const RunConfig &cfg) {
    if (cfg.gate_convention == "half") return circuit::AngleConvention::kHalf;
    if (cfg.gate_convention == "full") return circuit::AngleConvention::kFull;
    throw ValidationError("--gate-convention must be half or full");
}

two_meter::TwoMeterParams two_meter_params(const RunConfig &cfg) {
    two_meter::TwoMeterParams p = two_meter::kReferenceOptimum;
    p.coupling = coupling_of(cfg);
    if (cfg.theta_a) p.theta_a = *cfg.theta_a;
    if (cfg.theta_b) p.theta_b = *cfg.theta_b;
    if (!std::isfinite(p.theta_a) || !std::isfinite(p.theta_b)) throw ValidationError("angles must be finite");
    return p;
}

circuit::CircuitParams circuit_params(const RunConfig &cfg) {
    if (cfg.params.empty()) return circuit::reference_optimum(convention_of(cfg));
    return circuit::CircuitParams::from_flat(cfg.params, convention_of(cfg));
}

std::unique_ptr<TomographyModel> full_model(const RunConfig &cfg) {
    if (cfg.model == "two-meter") return std::make_unique<two_meter::TwoMeterModel>(two_meter_params(cfg));
    if (cfg.model == "circuit") return std::make_unique<circuit::CircuitModel>(circuit_params(cfg));
    throw ValidationError("--model must be two-meter or circuit for this command");
}

json two_meter_json(const two_meter::TwoMeterParams &p) {
    return {{"theta_a", p.theta_a},
            {"theta_b", p.theta_b},
            {"b_coupling", p.coupling == two_meter::BCoupling::kUnnormalized ? "unnormalized" : "projector"}};
}

json circuit_json(const circuit::CircuitParams &p) {
    const auto x = p.flat();
    return {{"a1", {x[0], x[1], x[2]}},
            {"a2", {x[3], x[4], x[5]}},
            {"b1", {x[6], x[7], x[8]}},
            {"b2", {x[9], x[10], x[11]}},
            {"gate_convention", p.convention == circuit::AngleConvention::kHalf ? "half" : "full"}};
}

json vec3_json(const Vec3 &v) { return {v(0), v(1), v(2)}; }

// ---------------------------------------------------------------------------

int cmd_qttf_sweep(const RunConfig &cfg, std::ostream &out) {
    std::vector<double> thetas;
    if (cfg.theta) {
        thetas.push_back(*cfg.theta);
    } else {
        if (cfg.points < 2 || !(cfg.theta_min > 0.0) || !(cfg.theta_max > cfg.theta_min)) {
            throw ValidationError("grid needs --points >= 2 and 0 < --theta-min < --theta-max");
        }
        for (int i = 0; i < cfg.points; ++i) {
            thetas.push_back(cfg.theta_min + (cfg.theta_max - cfg.theta_min) * i / (cfg.points - 1));
        }
    }
    for (double th : thetas) {
        if (!std::isfinite(th) || th <= 0.0 || th > 2.0 * std::numbers::pi) {
            throw ValidationError("theta must lie in (0, 2 pi]");
        }
    }
    Output o(cfg.out, out);
    if (cfg.format == "csv") {
        csv_header(o.stream(), cfg);
        o.stream() << "theta,qttf,max_error\n";
        for (double th : thetas) {
            o.stream() << th << "," << finite_or_inf(single::qttf(th)) << "," << finite_or_inf(single::max_error(th))
                       << "\n";
        }
    } else {
        json rows = json::array();
        for (double th : thetas) {
            rows.push_back({{"theta", th},
                            {"qttf", number(single::qttf(th).value())},
                            {"max_error", number(single::max_error(th).value())}});
        }
        o.stream() << json{{"meta", metadata(cfg)}, {"rows", rows}}.dump(2) << "\n";
    }
    return kOk;
}

int cmd_optimize(const RunConfig &cfg, std::ostream &out) {
    const QuadratureRule rule = make_quadrature(cfg.quad, cfg.quad);
    const std::uint64_t seed = cfg.seed.value_or(0);
    json result{{"meta", metadata(cfg)}, {"model", cfg.model}};
    double best = 0.0;
    json restarts = json::array();
    if (cfg.model == "two-meter") {
        const bool from_start = cfg.theta_a.has_value() || cfg.theta_b.has_value();
        two_meter::OptimizeResult res;
        if (from_start) {
            res = two_meter::optimize_from(two_meter_params(cfg), rule);
        } else {
            two_meter::OptimizeOptions opts;
            opts.restarts = cfg.restarts > 0 ? cfg.restarts : 20;
            opts.seed = seed;
            opts.coupling = coupling_of(cfg);
            res = two_meter::optimize(rule, opts);
        }
        for (const auto &r : res.restarts) {
            restarts.push_back({{"start", {r.start[0], r.start[1]}},
                                {"best", two_meter_json(r.best)},
                                {"value", number(r.value)},
                                {"iterations", r.iterations},
                                {"converged", r.converged}});
        }
        result["best"] = two_meter_json(res.best);
        best = res.value;
    } else if (cfg.model == "circuit") {
        circuit::OptimizeResult res;
        if (!cfg.params.empty()) {
            res = circuit::optimize_from(circuit_params(cfg), rule);
        } else {
            circuit::OptimizeOptions opts;
            opts.restarts = cfg.restarts > 0 ? cfg.restarts : 50;
            opts.seed = seed;
            opts.convention = convention_of(cfg);
            res = circuit::optimize(rule, opts);
        }
        for (const auto &r : res.restarts) {
            restarts.push_back({{"start", r.start},
                                {"best", circuit_json(r.best)},
                                {"value", number(r.value)},
                                {"iterations", r.iterations},
                                {"converged", r.converged}});
        }
        result["best"] = circuit_json(res.best);
        best = res.value;
    } else {
        throw ValidationError("--model must be two-meter or circuit for optimize");
    }
    result["value"] = number(best);
    result["restarts"] = restarts;
    Output o(cfg.out, out);
    o.stream() << result.dump(2) << "\n";
    if (!std::isfinite(best)) throw NumericalError("objective is singular at every restart");
    return kOk;
}

int reproduce_single_table(const RunConfig &cfg, std::ostream &out) {
    const double pi = std::numbers::pi;
    const std::vector<double> thetas = cfg.theta ? std::vector<double>{*cfg.theta}
                                                 : std::vector<double>{pi, 2 * pi / 3, pi / 2};
    const auto rep = run_single_experiment(thetas, pauli_eigenstate_set(), cfg.shots, cfg.repeats, require_seed(cfg));
    Output o(cfg.out, out);
    if (cfg.format == "csv") {
        csv_header(o.stream(), cfg);
        o.stream() << "state,theta,truth,mean,std,sigma,pass\n";
        for (const auto &r : rep.rows) {
            o.stream() << r.state << "," << r.theta << "," << r.truth << "," << r.mean << "," << r.std << ","
                       << r.sigma << "," << (r.pass ? "pass" : "fail") << "\n";
        }
    } else {
        json rows = json::array();
        for (const auto &r : rep.rows) {
            rows.push_back({{"state", r.state},
                            {"theta", r.theta},
                            {"truth", r.truth},
                            {"mean", r.mean},
                            {"std", r.std},
                            {"sigma", r.sigma},
                            {"pass", r.pass},
                            {"estimates", r.estimates}});
        }
        o.stream() << json{{"meta", metadata(cfg)}, {"table", 1}, {"shots", rep.shots},
                           {"repeats", rep.repeats}, {"rows", rows}}
                          .dump(2)
                   << "\n";
    }
    return kOk;
}

int reproduce_full_table(const RunConfig &cfg, std::ostream &out) {
    constexpr double kFidelityThreshold = 0.995;
    RunConfig c = cfg;
    c.model = cfg.table == 2 ? "two-meter" : "circuit";
    const auto model = full_model(c);
    const Estimator est = cfg.table == 2 ? Estimator::kRhoR : Estimator::kLinearInversion;
    const auto rep = run_full_experiment(*model, est, pauli_eigenstate_set(), cfg.shots, cfg.repeats,
                                         require_seed(cfg));
    Output o(cfg.out, out);
    if (cfg.format == "csv") {
        csv_header(o.stream(), cfg);
        o.stream() << "state,sx,sx_hat,sx_std,sy,sy_hat,sy_std,sz,sz_hat,sz_std,fidelity,fidelity_of_mean,pass\n";
        for (const auto &r : rep.rows) {
            o.stream() << r.state;
            for (int k = 0; k < 3; ++k) o.stream() << "," << r.truth(k) + 0.0 << "," << r.mean(k) << "," << r.std(k);
            o.stream() << "," << r.fidelity << "," << r.fidelity_of_mean << ","
                       << (r.fidelity >= kFidelityThreshold ? "pass" : "fail") << "\n";
        }
    } else {
        json rows = json::array();
        for (const auto &r : rep.rows) {
            json ests = json::array();
            for (const auto &e : r.estimates) ests.push_back(vec3_json(e));
            rows.push_back({{"state", r.state},
                            {"truth", vec3_json(r.truth)},
                            {"mean", vec3_json(r.mean)},
                            {"std", vec3_json(r.std)},
                            {"fidelity", r.fidelity},
                            {"fidelity_of_mean", r.fidelity_of_mean},
                            {"unphysical_repeats", r.unphysical},
                            {"pass", r.fidelity >= kFidelityThreshold},
                            {"estimates", ests}});
        }
        o.stream() << json{{"meta", metadata(cfg)},  {"table", cfg.table},       {"estimator", estimator_name(est)},
                           {"shots", rep.shots},     {"repeats", rep.repeats},   {"rows", rows}}
                          .dump(2)
                   << "\n";
    }
    return kOk;
}

int cmd_reproduce_table(const RunConfig &cfg, std::ostream &out) {
    if (cfg.shots < 1 || cfg.repeats < 1) throw ValidationError("--shots and --repeats must be >= 1");
    switch (cfg.table) {
        case 1:
            return reproduce_single_table(cfg, out);
        case 2:
        case 3:
            return reproduce_full_table(cfg, out);
        default:
            throw ValidationError("--table must be 1, 2 or 3");
    }
}

int cmd_check_identities(const RunConfig &cfg, std::ostream &out) {
    const std::uint64_t seed = cfg.seed.value_or(0);
    const auto rep = run_identity_suite(seed, cfg.inject_fault ? Fault::kCorruptTransfer : Fault::kNone);
    json checks = json::array();
    for (const auto &c : rep.checks) {
        checks.push_back({{"name", c.name},
                          {"cases", c.cases},
                          {"max_deviation", number(c.max_deviation)},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed()}});
    }
    Output o(cfg.out, out);
    o.stream() << json{{"meta", metadata(cfg)}, {"fault_injected", cfg.inject_fault},
                       {"all_passed", rep.all_passed()}, {"checks", checks}}
                      .dump(2)
               << "\n";
    return rep.all_passed() ? kOk : kIdentityFailure;
}

std::optional<PureState> named_state(const std::string &name) {
    if (name.empty()) return std::nullopt;
    for (const auto &s : pauli_eigenstate_set()) {
        if (s.name == name) return s.state;
    }
    throw ValidationError("unknown state " + name + " (expected z0, z1, x0, x1, y0 or y1)");
}

CountRecord read_counts(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open counts file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ValidationError("malformed counts file: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("outcomes") || !j["outcomes"].is_array() || j["outcomes"].size() != 4) {
        throw ValidationError("counts file needs \"outcomes\": [n00, n01, n10, n11]");
    }
    CountRecord rec;
    for (const auto &v : j["outcomes"]) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw ValidationError("outcome counts must be nonnegative integers");
        }
        rec.counts.push_back(v.get<std::int64_t>());
    }
    for (auto c : rec.counts) rec.shots += c;
    if (j.contains("shots")) {
        if (!j["shots"].is_number_integer() || j["shots"].get<std::int64_t>() != rec.shots) {
            throw ValidationError("\"shots\" does not equal the sum of the outcome counts");
        }
    }
    if (rec.shots <= 0) throw ValidationError("counts must sum to a positive number");
    return rec;
}

int cmd_estimate(const RunConfig &cfg, std::ostream &out) {
    const auto model = full_model(cfg);
    const TransferMatrix &t = model->transfer_matrix();
    CountRecord rec;
    if (!cfg.counts.empty()) {
        rec = read_counts(cfg.counts);
    } else {
        const auto src = named_state(cfg.state);
        if (!src) throw ValidationError("estimate needs --counts or --state with --shots and --seed");
        if (cfg.shots < 1) throw ValidationError("--shots must be >= 1");
        const Vec4 p = model->probabilities(src->density());
        const std::array<double, 4> pa{p(0), p(1), p(2), p(3)};
        rec = sample_counts(pa, cfg.shots, require_seed(cfg));
    }
    const FrequencyVector f = rec.frequencies();
    const std::string truth_name = cfg.truth.empty() ? cfg.state : cfg.truth;
    const auto truth = named_state(truth_name);
    if (cfg.estimator != "both" && cfg.estimator != "linear-inversion" && cfg.estimator != "rho-r") {
        throw ValidationError("--estimator must be linear-inversion, rho-r or both");
    }

    json result{{"meta", metadata(cfg)}, {"model", cfg.model}, {"counts", rec.counts}, {"shots", rec.shots}};
    if (cfg.estimator != "rho-r") {
        const auto li = linear_inversion(f, t);
        json j{{"bloch", vec3_json(li.estimate.vector())},
               {"physical", li.physical},
               {"s0_deviation", li.s0_deviation},
               {"condition_number", li.condition_number}};
        if (truth) j["fidelity_projected"] = 0.5 * (1.0 + truth->bloch().vector().dot(li.estimate.projected_to_pure().vector()));
        result["linear_inversion"] = j;
    }
    if (cfg.estimator != "linear-inversion") {
        const auto mle = rho_r_mle(f, t);
        const BlochState s = mle.rho.bloch();
        json j{{"bloch", vec3_json(s.vector())},
               {"physical", mle.rho.is_physical()},
               {"iterations", mle.iterations},
               {"converged", mle.converged},
               {"floored", mle.floored},
               {"diluted", mle.diluted},
               {"log_likelihood", mle.log_likelihood.back()},
               {"condition_number", t.condition_number()}};
        if (truth) j["fidelity"] = fidelity(truth->density(), mle.rho);
        result["rho_r"] = j;
    }
    if (truth) result["truth"] = vec3_json(truth->bloch().vector());
    Output o(cfg.out, out);
    o.stream() << result.dump(2) << "\n";
    return kOk;
}

std::vector<double> parse_params(const std::string &text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw ValidationError("--params: not a number: '" + item + "'");
        }
    }
    if (v.size() != 12) throw ValidationError("--params needs 12 comma-separated reals, got " + std::to_string(v.size()));
    return v;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    std::string params_text;
    std::optional<std::uint64_t> seed;

    CLI::App app{"qtomo: single-observable qubit state estimation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--quad", cfg.quad, "quadrature order per angle")->check(CLI::Range(2, 4096));
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_model = [&](CLI::App *sub) {
        sub->add_option("--model", cfg.model, "two-meter or circuit");
        sub->add_option("--theta-a", cfg.theta_a, "two-meter coupling angle of meter A");
        sub->add_option("--theta-b", cfg.theta_b, "two-meter coupling angle of meter B");
        sub->add_option("--b-coupling", cfg.b_coupling, "unnormalized (K = I + sigma_x) or projector");
        sub->add_option("--params", params_text, "12 comma-separated circuit angles a1,a2,b1,b2");
        sub->add_option("--gate-convention", cfg.gate_convention, "half or full U-gate angle");
    };

    auto *sweep = app.add_subcommand("qttf-sweep", "single-meter mean and max error over theta\n"
                                                   "  csv columns: theta,qttf,max_error");
    add_common(sweep);
    sweep->add_option("--theta", cfg.theta, "single theta instead of a grid");
    sweep->add_option("--theta-min", cfg.theta_min, "grid start");
    sweep->add_option("--theta-max", cfg.theta_max, "grid end");
    sweep->add_option("--points", cfg.points, "grid points");

    auto *opt = app.add_subcommand("optimize", "minimize the mean error of a full model\n"
                                               "  json: meta, model, best, value, restarts[]");
    add_common(opt);
    add_model(opt);
    opt->add_option("--restarts", cfg.restarts, "random restarts (default 20 two-meter, 50 circuit)");

    auto *table = app.add_subcommand("reproduce-table", "simulated estimation tables\n"
                                                        "  table 1 csv: state,theta,truth,mean,std,sigma,pass\n"
                                                        "  table 2/3 csv: state,sx,sx_hat,sx_std,sy,sy_hat,sy_std,"
                                                        "sz,sz_hat,sz_std,fidelity,fidelity_of_mean,pass");
    add_common(table);
    add_model(table);
    table->add_option("--table", cfg.table, "1, 2 or 3")->required();
    table->add_option("--theta", cfg.theta, "table 1: single theta instead of pi, 2pi/3, pi/2");
    table->add_option("--shots", cfg.shots, "shots per repeat");
    table->add_option("--repeats", cfg.repeats, "repeats per state");

    auto *ident = app.add_subcommand("check-identities", "run the invariant suite\n"
                                                         "  json: meta, fault_injected, all_passed, checks[]");
    add_common(ident);
    ident->add_flag("--inject-fault", cfg.inject_fault, "corrupt the transfer matrices (negative control)");

    auto *estimate = app.add_subcommand("estimate", "reconstruct a state from counts\n"
                                                    "  counts file: {\"outcomes\": [n00, n01, n10, n11], \"shots\": N}");
    add_common(estimate);
    add_model(estimate);
    estimate->add_option("--counts", cfg.counts, "counts file");
    estimate->add_option("--state", cfg.state, "sample from a Pauli eigenstate (z0..y1) instead");
    estimate->add_option("--shots", cfg.shots, "shots when sampling");
    estimate->add_option("--truth", cfg.truth, "reference state for fidelity");
    estimate->add_option("--estimator", cfg.estimator, "linear-inversion, rho-r or both");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        for (auto *sub : app.get_subcommands()) out << sub->help();
        return kOk;
    } catch (const CLI::CallForVersion &) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError &e) {
        std::stringstream msg, dummy;
        const int code = app.exit(e, dummy, msg);
        err << msg.str() << dummy.str();
        return code == 0 ? kOk : kValidationFailure;
    }

    try {
        cfg.seed = seed;
        CLI::App *chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        if (!params_text.empty()) cfg.params = parse_params(params_text);
        if (chosen == sweep) return cmd_qttf_sweep(cfg, out);
        if (chosen == opt) return cmd_optimize(cfg, out);
        if (chosen == table) return cmd_reproduce_table(cfg, out);
        if (chosen == ident) return cmd_check_identities(cfg, out);
        return cmd_estimate(cfg, out);
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

}  // namespace qtomo::cli
