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

#include "qtomo/two_meter.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "qtomo/parallel.hpp"

namespace qtomo::two_meter {

namespace {

// sin(x/2)/x with its removable singularity at 0.
double sinc_half(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 0.5 - x2 / 48.0 + x2 * x2 / 3840.0;
    }
    return std::sin(x / 2.0) / x;
}

struct PrintedA {
    double a0, a1, a2, a3;
};

PrintedA printed_a(double ta, double tb) {
    const double tc = std::hypot(ta, tb);
    const double sc = sinc_half(tc);  // sin(tc/2)/tc
    const double cA = std::cos(ta / 2), sA = std::sin(ta / 2);
    const double cB = std::cos(tb / 2), sB = std::sin(tb / 2);
    const double cC = std::cos(tc / 2);
    PrintedA r;
    r.a0 = cA * (cA + tb * sB * sc + cB * cC) / 8.0;
    r.a1 = sA * (sB * cC - tb * cB * sc) / 8.0;
    r.a2 = -ta * sA * sB * sc / 8.0;
    r.a3 = -sA * (ta * cB * sc + sA) / 8.0;
    return r;
}

struct PrintedC {
    double c0, c1, c2;
};

PrintedC printed_c(double ta, double tb) {
    const double tc = std::hypot(ta, tb);
    const double sc = sinc_half(tc);
    PrintedC r;
    r.c0 = (4.0 * std::cos(tc / 2) * std::cos(ta / 2 + tb / 2) + std::cos(ta - tb) + std::cos(ta) +
            std::cos(tb) + 1.0) /
           32.0;
    r.c1 = (std::cos(ta / 2) * std::sin(tb / 2) * std::sin((ta - tb) / 2) -
            tb * sc * std::sin((ta + tb) / 2)) /
           8.0;
    r.c2 = -std::sin(ta / 2) * std::sin(tb / 2) * std::sin((ta - tb) / 2) / 8.0;
    return r;
}

Vec4 half_trace_pauli(const Mat2c &m) {
    Vec4 v;
    for (int mu = 0; mu < 4; ++mu) v(mu) = 0.5 * (m * pauli(mu)).trace().real();
    return v;
}

// Outcome order (00, 01, 10, 11) with k, l = +1 for outcome 0.
constexpr int kSignK[4] = {1, 1, -1, -1};
constexpr int kSignL[4] = {1, -1, 1, -1};

}  // namespace

Coefficients coefficients_as_printed(double ta, double tb) {
    const PrintedA a = printed_a(ta, tb);
    const PrintedA sw = printed_a(tb, ta);
    const PrintedC c = printed_c(ta, tb);
    const PrintedC csw = printed_c(tb, ta);
    Coefficients out;
    out.a << a.a0, a.a1, a.a2, a.a3;
    out.b << sw.a0, sw.a3, -sw.a2, sw.a1;
    out.c << c.c0, c.c1, c.c2, csw.c1;
    return out;
}

Coefficients coefficients_closed_form(double ta, double tb) {
    Coefficients c = coefficients_as_printed(ta, tb);
    // Undo the sigma_x conjugation: sigma_y -> -sigma_y, sigma_z -> -sigma_z.
    for (Vec4 *v : {&c.a, &c.b, &c.c}) {
        (*v)(2) = -(*v)(2);
        (*v)(3) = -(*v)(3);
    }
    return c;
}

std::array<Mat2c, 4> branch_unitaries(double ta, double tb) {
    const Mat2c p1 = projector_one();
    const Mat2c pp = projector_plus();
    return {Mat2c::Identity(), expm_hermitian(pp, tb), expm_hermitian(p1, ta),
            expm_hermitian(ta * p1 + tb * pp, 1.0)};
}

Coefficients coefficients_trace_form(double ta, double tb) {
    const auto u = branch_unitaries(ta, tb);
    auto idx = [](int i, int j) { return static_cast<std::size_t>(2 * i + j); };
    Mat2c a = Mat2c::Zero(), b = Mat2c::Zero(), c = Mat2c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Mat2c ud = u[idx(i, j)].adjoint();
            a += ud * u[idx(1 - i, j)];
            b += ud * u[idx(i, 1 - j)];
            c += ud * u[idx(1 - i, 1 - j)];
        }
    }
    return {half_trace_pauli(a / 16.0), half_trace_pauli(b / 16.0), half_trace_pauli(c / 16.0)};
}

TransferMatrix transfer_matrix_from(const Coefficients &c) {
    Mat4 t;
    for (int r = 0; r < 4; ++r) {
        const double k = kSignK[r], l = kSignL[r];
        t.row(r) = (k * c.a + l * c.b + k * l * c.c).transpose();
        t(r, 0) += 0.25;
    }
    return TransferMatrix(t);
}

TransferMatrix transfer_matrix(const TwoMeterParams &p) {
    return transfer_matrix_from(coefficients_closed_form(p.theta_a, p.projector_theta_b()));
}

Vec4 simulate_probabilities(const DensityMatrix &rho0, const TwoMeterParams &p) {
    rho0.require_physical();
    // Qubit order (S, A, B); basis index 4 s + 2 a + b.
    const auto u = branch_unitaries(p.theta_a, p.projector_theta_b());
    Mat8c uab = Mat8c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Mat2c &uij = u[static_cast<std::size_t>(2 * i + j)];
            for (int s = 0; s < 2; ++s) {
                for (int s2 = 0; s2 < 2; ++s2) uab(4 * s + 2 * i + j, 4 * s2 + 2 * i + j) = uij(s, s2);
            }
        }
    }
    const Mat2c plus = projector_plus();
    Mat4c meters = Eigen::kroneckerProduct(plus, plus);
    Mat8c rho = Eigen::kroneckerProduct(rho0.matrix(), meters);
    const Mat2c h = hadamard();
    const Mat8c readout = Eigen::kroneckerProduct(Mat2c::Identity(), Mat4c(Eigen::kroneckerProduct(h, h)));
    const Mat8c total = readout * uab;
    const Mat8c out = total * rho * total.adjoint();
    Vec4 probs = Vec4::Zero();
    for (int s = 0; s < 2; ++s) {
        for (int m = 0; m < 4; ++m) probs(m) += out(4 * s + m, 4 * s + m).real();
    }
    return probs;
}

TwoMeterModel::TwoMeterModel(const TwoMeterParams &p) : params_(p), t_(two_meter::transfer_matrix(p)) {}

Vec4 TwoMeterModel::probabilities(const DensityMatrix &rho0) const {
    return simulate_probabilities(rho0, params_);
}

Mat3 fisher_matrix(const PureState &psi, const TwoMeterParams &p) {
    return qtomo::fisher_matrix(transfer_matrix(p), psi.bloch());
}

ErrorFigure delta_error(const PureState &psi, const TwoMeterParams &p) {
    return qtomo::delta_error(transfer_matrix(p), psi.bloch());
}

ErrorFigure qttf(const TwoMeterParams &p, const QuadratureRule &rule) {
    return qtomo::qttf(transfer_matrix(p), rule);
}

namespace {

double objective(double ta, double tb, BCoupling coupling, const QuadratureRule &rule) {
    try {
        const ErrorFigure e = qttf(TwoMeterParams{ta, tb, coupling}, rule);
        return e.value();
    } catch (const NumericalError &) {
        return std::numeric_limits<double>::infinity();
    }
}

RestartRecord run_restart(std::array<double, 2> start, BCoupling coupling, const QuadratureRule &rule,
                          const NelderMeadOptions &nm) {
    const auto res = nelder_mead(
        [&](std::span<const double> x) { return objective(x[0], x[1], coupling, rule); },
        {start[0], start[1]}, nm);
    return RestartRecord{start, TwoMeterParams{res.x[0], res.x[1], coupling}, res.fval, res.iterations,
                         res.converged};
}

OptimizeResult merge(std::vector<RestartRecord> records) {
    OptimizeResult out{records.front().best, records.front().value, {}};
    for (const auto &r : records) {
        if (r.value < out.value) {
            out.best = r.best;
            out.value = r.value;
        }
    }
    out.restarts = std::move(records);
    return out;
}

}  // namespace

OptimizeResult optimize(const QuadratureRule &rule, const OptimizeOptions &opts) {
    if (opts.restarts < 1) throw ValidationError("optimize: restarts must be >= 1");
    std::vector<std::array<double, 2>> starts(static_cast<std::size_t>(opts.restarts));
    for (std::size_t r = 0; r < starts.size(); ++r) {
        auto gen = make_stream(opts.seed, r);
        std::uniform_real_distribution<double> u(-opts.start_box, opts.start_box);
        starts[r][0] = u(gen);
        starts[r][1] = u(gen);
    }
    std::vector<RestartRecord> records(starts.size());
    parallel_for(starts.size(), [&](std::size_t r) {
        records[r] = run_restart(starts[r], opts.coupling, rule, opts.nelder_mead);
    });
    return merge(std::move(records));
}

OptimizeResult optimize_from(const TwoMeterParams &start, const QuadratureRule &rule,
                             const NelderMeadOptions &nm) {
    return merge({run_restart({start.theta_a, start.theta_b}, start.coupling, rule, nm)});
}

}  // namespace qtomo::two_meter
