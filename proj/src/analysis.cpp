// Copyright 2026 The qgrad Authors
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

#include "qgrad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qgrad/errors.hpp"
#include "qgrad/gates.hpp"
#include "qgrad/oracle.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "theorem-analysis";
constexpr double kTol = 1e-12;
constexpr double kPi = std::numbers::pi;

Complex phase_of_turns(double turns) { return std::polar(1.0, 2.0 * kPi * (turns - std::floor(turns))); }

InequalityCheck make_check(std::string name, std::string relation, double lhs, double rhs) {
    InequalityCheck c;
    c.name = std::move(name);
    c.relation = std::move(relation);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = c.relation == "<=" ? rhs - lhs : lhs - rhs;
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    c.holds = std::isfinite(c.slack) && c.slack >= -kTol * scale;
    return c;
}

// 1 - ((2 + eps)/3)^(2/p), the leakage budget per grid point.
double leakage_budget(double epsilon, unsigned p) {
    return 1.0 - std::pow((2.0 + epsilon) / 3.0, 2.0 / static_cast<double>(p));
}

}  // namespace

void AccuracySpec::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument(kModule, "gamma must be positive");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument(kModule, "delta must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument(kModule, "epsilon must lie in (0, 1)");
}

AlgorithmParams select_parameters(const AccuracySpec &spec, double L, double M, unsigned p,
                                  unsigned max_grid_bits) {
    spec.validate();
    if (!(L >= 0.0) || !(M >= 0.0) || !std::isfinite(L) || !std::isfinite(M)) {
        throw InvalidArgument(kModule, "L and M must be finite and non-negative");
    }
    if (p < 1) throw InvalidArgument(kModule, "dimension p must be at least 1");

    const double width = L + spec.delta;
    const double s = std::sin(kPi * spec.delta / (2.0 * width));
    const double bits = -std::log2(s * s * leakage_budget(spec.epsilon, p));
    const double n_real = std::max(1.0, std::ceil(bits));
    if (n_real * p > max_grid_bits) {
        std::ostringstream os;
        os << "accuracy target needs n = " << n_real << " bits per axis (p*n = " << n_real * p
           << " > " << max_grid_bits << "); loosen delta or epsilon, or raise --max-grid-bits";
        throw GuardError(kModule, os.str());
    }
    AlgorithmParams params;
    params.n = static_cast<unsigned>(n_real);
    const int n = static_cast<int>(params.n);
    const double margin_branch = std::ldexp(1.0, n - 2) / (spec.gamma * width);
    const double curvature_branch = 3.0 * std::ldexp(1.0, 2 * (n - 2)) * kPi * M /
                                    (std::sqrt(5.0) * width * width * (1.0 - spec.epsilon));
    params.lambda = std::max(margin_branch, curvature_branch);
    params.mu = 1.0 / (2.0 * params.lambda * width);
    params.nu = (1.0 - spec.epsilon) / (6.0 * kPi * params.lambda);

    // The closed forms meet several conditions with equality; step mu and nu
    // down by ulps until the floating-point slacks are non-negative too.
    const double budget = (1.0 - spec.epsilon) / 3.0;
    for (int i = 0; i < 64; ++i) {
        const bool tight = nonlinear_norm_bound(params, M) > budget ||
                           std::ldexp(params.mu, n - 1) > spec.gamma ||
                           1.0 / (2.0 * params.lambda * params.mu) < width;
        if (!tight) break;
        params.mu = std::nextafter(params.mu, 0.0);
    }
    for (int i = 0; i < 64 && discretization_norm_bound(params) > budget; ++i) {
        params.nu = std::nextafter(params.nu, 0.0);
    }
    return params;
}

bool InequalityReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck &c) { return c.holds; });
}

const InequalityCheck &InequalityReport::by_name(const std::string &name) const {
    for (const InequalityCheck &c : checks) {
        if (c.name == name) return c;
    }
    throw InvalidArgument(kModule, "no inequality named '" + name + "'");
}

double nonlinear_norm_bound(const AlgorithmParams &params, double M) {
    return std::ldexp(1.0, 2 * (static_cast<int>(params.n) - 1)) * kPi * params.lambda * M * params.mu *
           params.mu / std::sqrt(5.0);
}

double discretization_norm_bound(const AlgorithmParams &params) { return 2.0 * kPi * params.lambda * params.nu; }

InequalityReport check_inequalities(const AlgorithmParams &params, const AccuracySpec &spec, double L,
                                    double M, unsigned p) {
    params.validate();
    spec.validate();
    const double budget = (1.0 - spec.epsilon) / 3.0;
    InequalityReport report;
    report.checks[0] = make_check("nonlinearity", "<=", nonlinear_norm_bound(params, M), budget);
    report.checks[1] = make_check("precision", "<=", discretization_norm_bound(params), budget);
    report.checks[2] =
        make_check("margin", "<=", std::ldexp(params.mu, static_cast<int>(params.n) - 1), spec.gamma);
    report.checks[3] = make_check("bandwidth", ">=", 1.0 / (2.0 * params.lambda * params.mu), L + spec.delta);

    const double angle = kPi * params.lambda * params.mu * spec.delta;
    const double leak_rhs = std::sqrt(std::ldexp(1.0, static_cast<int>(params.n)) * leakage_budget(spec.epsilon, p));
    if (angle > 0.0 && angle < kPi) {
        report.checks[4] = make_check("leakage", "<=", 1.0 / std::sin(angle), leak_rhs);
        report.checks[4].note = "cosecant bound also requires the bandwidth condition";
    } else {
        report.checks[4] = make_check("leakage", "<=", std::numeric_limits<double>::infinity(), leak_rhs);
        report.checks[4].holds = false;
        report.checks[4].note = "pi lambda mu delta outside (0, pi); cosecant undefined";
    }
    return report;
}

double ErrorDecomposition::reconstruction_error() const {
    double worst = 0.0;
    for (std::size_t h = 0; h < psi.size(); ++h) {
        worst = std::max(worst, std::abs(psi_linear[h] + psi_nonlinear[h] + psi_discrete[h] - psi[h]));
    }
    return worst;
}

double ErrorDecomposition::max_abs_eps_discrete() const {
    double worst = 0.0;
    for (double e : eps_discrete) worst = std::max(worst, std::abs(e));
    return worst;
}

double ErrorDecomposition::worst_eps_nonlinear_excess() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < eps_nonlinear.size(); ++h) {
        worst = std::max(worst, std::abs(eps_nonlinear[h]) - eps_nonlinear_bound[h]);
    }
    return worst;
}

ErrorDecomposition decompose_state(const FunctionModel &model, std::span<const double> x,
                                   const AlgorithmParams &params, const FixedPointFormat &format,
                                   unsigned max_grid_bits) {
    params.validate();
    if (x.size() != model.dimension()) throw InvalidArgument(kModule, "point dimension mismatch");
    const GridShape shape{params.n, static_cast<unsigned>(x.size())};
    shape.check(max_grid_bits);

    const double fx = model.evaluate(x);
    const Point grad = model.gradient(x);
    const double g0 = params.grid_center();
    const double amp = std::pow(2.0, -0.5 * shape.total_bits());
    const DomainLabel start = DomainLabel::base(Point(x.begin(), x.end()));

    ErrorDecomposition d;
    d.shape = shape;
    const std::size_t size = shape.size();
    d.psi.resize(size);
    d.psi_linear.resize(size);
    d.psi_nonlinear.resize(size);
    d.psi_discrete.resize(size);
    d.eps_nonlinear.resize(size);
    d.eps_discrete.resize(size);
    d.eps_nonlinear_bound.resize(size);

    for (std::uint64_t h = 0; h < size; ++h) {
        const GridIndex g = shape.decode(h);
        const Point pt = grid_point(x, g, params);
        const double f_pt = model.evaluate(pt);
        double ramp = 0.0;
        double offset_sq = 0.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            const double off = static_cast<double>(g[m]) - g0;
            ramp += grad[m] * off;
            offset_sq += off * off;
        }
        const double linear = fx + params.mu * ramp;
        const RangeWord word = oracle_value(model, format, params, shape, shift_label(start, h, shape));
        const double computed = decode(format, word);

        const Complex e_linear = phase_of_turns(params.lambda * linear);
        const Complex e_true = phase_of_turns(params.lambda * f_pt);
        const Complex e_computed = range_word_phase(format, params.lambda, word);
        d.psi[h] = amp * e_computed;
        d.psi_linear[h] = amp * e_linear;
        d.psi_nonlinear[h] = amp * (e_true - e_linear);
        d.psi_discrete[h] = amp * (e_computed - e_true);
        d.eps_nonlinear[h] = f_pt - linear;
        d.eps_discrete[h] = computed - f_pt;
        // Round-off allowance: the linearisation is itself computed in floating point.
        d.eps_nonlinear_bound[h] = 0.5 * model.hess_bound() * params.mu * params.mu * offset_sq +
                                   kTol * (1.0 + std::abs(f_pt));
    }
    return d;
}

std::vector<std::vector<bool>> projection_windows(std::span<const double> true_grad, double delta,
                                                  const AlgorithmParams &params) {
    const std::uint32_t axis = std::uint32_t{1} << params.n;
    std::vector<std::vector<bool>> windows(true_grad.size(), std::vector<bool>(axis));
    for (std::size_t m = 0; m < true_grad.size(); ++m) {
        for (std::uint32_t g = 0; g < axis; ++g) {
            windows[m][g] = std::abs(decode_gradient_component(g, params) - true_grad[m]) < delta;
        }
    }
    return windows;
}

ProjectionResult success_projection(std::span<const Complex> chi, const GridShape &shape,
                                    std::span<const double> true_grad, double delta,
                                    const AlgorithmParams &params) {
    if (true_grad.size() != shape.p || chi.size() != shape.size()) {
        throw InvalidArgument(kModule, "projection arguments do not match the grid shape");
    }
    const auto windows = projection_windows(true_grad, delta, params);
    double prob = 0.0;
    for (std::uint64_t flat = 0; flat < chi.size(); ++flat) {
        bool inside = true;
        for (unsigned m = 0; m < shape.p && inside; ++m) inside = windows[m][shape.component(flat, m)];
        if (inside) prob += std::norm(chi[flat]);
    }
    return ProjectionResult{std::sqrt(prob), prob};
}

LeakageReport leakage_check(const FunctionModel &model, std::span<const double> x,
                            const AlgorithmParams &params, double delta, unsigned max_grid_bits) {
    params.validate();
    if (!model.is_linear()) throw InvalidArgument(kModule, "leakage check needs a linear model (M = 0)");
    if (!(delta > 0.0)) throw InvalidArgument(kModule, "delta must be positive");
    const double bandwidth = 1.0 / (2.0 * params.lambda * params.mu);
    if (bandwidth < model.grad_bound() + delta) {
        throw InvalidArgument(kModule, "leakage check requires 1/(2 lambda mu) >= L + delta");
    }
    const GridShape shape{params.n, static_cast<unsigned>(x.size())};
    shape.check(max_grid_bits);
    const std::uint64_t axis = shape.axis_size();
    const Point grad = model.gradient(x);
    const double lm = params.lambda * params.mu;

    LeakageReport report;
    report.bound = std::ldexp(1.0, -static_cast<int>(params.n)) / std::abs(std::sin(kPi * lm * delta));
    report.vacuous = report.bound >= 1.0;

    // phi_m(g) = 2^-n sum_h exp(2 pi i h (g/2^n + lambda mu grad_m)), summed directly.
    report.factors.assign(shape.p, std::vector<Complex>(axis));
    const auto windows = projection_windows(grad, delta, params);
    report.projected_norm = 1.0;
    for (unsigned m = 0; m < shape.p; ++m) {
        double in_window = 0.0;
        for (std::uint64_t g = 0; g < axis; ++g) {
            Complex sum = 0.0;
            for (std::uint64_t h = 0; h < axis; ++h) {
                const double grid_turns = static_cast<double>((h * g) & (axis - 1)) / static_cast<double>(axis);
                sum += phase_of_turns(grid_turns + static_cast<double>(h) * lm * grad[m]);
            }
            const Complex phi = sum / static_cast<double>(axis);
            report.factors[m][g] = phi;
            if (windows[m][g]) {
                in_window += std::norm(phi);
            } else {
                report.max_out_of_window = std::max(report.max_out_of_window, std::abs(phi));
            }
        }
        report.projected_norm *= std::sqrt(in_window);
    }
    report.bound_holds = report.max_out_of_window <= report.bound + kTol;

    // Compare against the transformed linear ramp built on the full grid.
    const double fx = model.evaluate(x);
    const double g0 = params.grid_center();
    const double amp = std::pow(2.0, -0.5 * shape.total_bits());
    std::vector<Complex> ramp(shape.size());
    for (std::uint64_t h = 0; h < shape.size(); ++h) {
        double dot = 0.0;
        for (unsigned m = 0; m < shape.p; ++m) dot += grad[m] * (shape.component(h, m) - g0);
        ramp[h] = amp * phase_of_turns(params.lambda * (fx + params.mu * dot));
    }
    qft_inplace(ramp, shape, QftDirection::kForward);
    double grad_dot_center = 0.0;
    for (unsigned m = 0; m < shape.p; ++m) grad_dot_center += grad[m] * g0;
    const Complex global = phase_of_turns(params.lambda * (fx - params.mu * grad_dot_center));
    for (std::uint64_t h = 0; h < shape.size(); ++h) {
        Complex product = global;
        for (unsigned m = 0; m < shape.p; ++m) product *= report.factors[m][shape.component(h, m)];
        report.factorization_error = std::max(report.factorization_error, std::abs(ramp[h] - product));
    }
    return report;
}

BaselineResult classical_baseline(const FunctionModel &model, std::span<const double> x, double step,
                                  bool central) {
    if (!(step > 0.0)) throw InvalidArgument(kModule, "finite-difference step must be positive");
    BaselineResult out;
    auto f = [&](const Point &pt) {
        ++out.calls;
        return model.evaluate(pt);
    };
    const std::size_t p = x.size();
    out.gradient.resize(p);
    Point probe(x.begin(), x.end());
    if (!central) {
        const double fx = f(probe);
        for (std::size_t m = 0; m < p; ++m) {
            probe[m] = x[m] + step;
            out.gradient[m] = (f(probe) - fx) / step;
            probe[m] = x[m];
        }
    } else {
        for (std::size_t m = 0; m < p; ++m) {
            probe[m] = x[m] + step;
            const double up = f(probe);
            probe[m] = x[m] - step;
            const double down = f(probe);
            probe[m] = x[m];
            out.gradient[m] = (up - down) / (2.0 * step);
        }
    }
    return out;
}

std::vector<std::string> TheoremReport::failures() const {
    std::vector<std::string> out;
    auto fail = [&out](bool ok, const std::string &what) {
        if (!ok) out.push_back(what);
    };
    fail(reconstruction_error <= kTol, "psi_L + psi_N + psi_D does not reconstruct psi");
    fail(pipeline_vs_direct <= 1e-10, "pipeline output differs from the directly transformed state");
    fail(discrete_bound_holds, "||psi_D|| exceeds 2 pi lambda nu");
    if (nonlinear_bound_asserted) fail(nonlinear_bound_holds, "||psi_N|| exceeds 4^(n-1) pi lambda M mu^2/sqrt(5)");
    fail(eps_discrete_holds, "arithmetic error exceeds nu");
    fail(eps_nonlinear_holds, "curvature error exceeds M mu^2 |h - g0|^2 / 2");
    fail(triangle_holds, "||P chi|| below ||P U psi_L|| - ||psi_N|| - ||psi_D||");
    if (leakage) {
        fail(leakage->bound_holds, "out-of-window amplitude exceeds the cosecant bound");
        fail(leakage->factorization_error <= 1e-10, "U_QFT psi_L does not factor over axes");
    }
    if (inequalities.all_hold()) {
        fail(linear_projection_holds, "||P U psi_L|| below (2 + epsilon)/3");
        fail(theorem_holds, "||P chi|| below epsilon");
    }
    return out;
}

TheoremReport verify_theorem(const FunctionModel &model, std::span<const double> x,
                             const AccuracySpec &spec, const AlgorithmParams &params,
                             const PipelineOptions &options) {
    spec.validate();
    const PipelineResult run = run_pipeline(model, x, params, options);

    TheoremReport r;
    r.params = params;
    r.spec = spec;
    r.grad_bound = model.grad_bound();
    r.hess_bound = model.hess_bound();
    r.p = static_cast<unsigned>(x.size());
    r.format = run.format;
    r.oracle_calls = run.oracle_calls;
    r.true_gradient = model.gradient(x);
    r.inequalities = check_inequalities(params, spec, r.grad_bound, r.hess_bound, r.p);

    const ErrorDecomposition d = decompose_state(model, x, params, run.format, options.max_grid_bits);
    r.reconstruction_error = d.reconstruction_error();
    r.norm_linear = d.norm_linear();

    std::vector<Complex> direct = d.psi;
    qft_inplace(direct, d.shape, QftDirection::kForward);
    if (options.phase_variant == PhaseVariant::kDirect) {
        r.pipeline_vs_direct = max_abs_diff(run.chi.amplitudes, direct);
    } else {
        r.pipeline_vs_direct = max_abs_diff_up_to_phase(run.chi.amplitudes, direct);
    }

    r.norm_nonlinear = d.norm_nonlinear();
    r.bound_nonlinear = nonlinear_norm_bound(params, r.hess_bound);
    r.nonlinear_bound_asserted = r.p == 1;
    r.nonlinear_bound_holds = r.norm_nonlinear <= r.bound_nonlinear + kTol;

    r.norm_discrete = d.norm_discrete();
    r.bound_discrete = discretization_norm_bound(params);
    r.discrete_bound_holds = r.norm_discrete <= r.bound_discrete + kTol;

    r.max_eps_discrete = d.max_abs_eps_discrete();
    r.eps_discrete_holds = r.max_eps_discrete <= params.nu * (1.0 + kTol);
    r.worst_eps_nonlinear_excess = d.worst_eps_nonlinear_excess();
    r.eps_nonlinear_holds = r.worst_eps_nonlinear_excess <= 0.0;

    std::vector<Complex> transformed_linear = d.psi_linear;
    qft_inplace(transformed_linear, d.shape, QftDirection::kForward);
    r.linear_projection =
        success_projection(transformed_linear, d.shape, r.true_gradient, spec.delta, params).norm;
    r.linear_projection_target = (2.0 + spec.epsilon) / 3.0;
    r.linear_projection_holds = r.linear_projection >= r.linear_projection_target - kTol;

    const ProjectionResult success =
        success_projection(run.chi.amplitudes, d.shape, r.true_gradient, spec.delta, params);
    r.success_norm = success.norm;
    r.success_probability = success.probability;
    r.theorem_holds = r.success_norm >= spec.epsilon - kTol;

    r.triangle_lower_bound = r.linear_projection - r.norm_nonlinear - r.norm_discrete;
    r.triangle_holds = r.success_norm >= r.triangle_lower_bound - kTol;

    if (model.is_linear() && 1.0 / (2.0 * params.lambda * params.mu) >= r.grad_bound + spec.delta) {
        r.leakage = leakage_check(model, x, params, spec.delta, options.max_grid_bits);
    }
    return r;
}

}  // namespace qgrad
