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

#include "qgrad/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "qgrad/errors.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "experiment-cli";

// Planned n can exceed what bench executes; execution is capped at this many
// grid qubits since the call count does not depend on n.
constexpr unsigned kBenchExecBits = 16;

[[noreturn]] void schema_error(const std::string &what) { throw InvalidArgument(kModule, "config: " + what); }

void check_keys(const Json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object()) schema_error(where + " must be an object");
    for (const auto &[key, value] : obj.items()) {
        if (!allowed.count(key)) schema_error("unknown key '" + key + "' in " + where);
    }
}

double get_number(const Json &j, const std::string &what) {
    if (!j.is_number()) schema_error(what + " must be a number");
    return j.get<double>();
}

Point broadcast_vector(const Json &j, unsigned dim, const std::string &what) {
    if (j.is_number()) return Point(dim, j.get<double>());
    if (!j.is_array()) schema_error(what + " must be a number or an array");
    if (j.size() != dim) {
        schema_error(what + " has " + std::to_string(j.size()) + " entries, dimension is " + std::to_string(dim));
    }
    Point out;
    for (const Json &v : j) out.push_back(get_number(v, what));
    return out;
}

std::vector<Point> broadcast_matrix(const Json &j, unsigned dim, const std::string &what) {
    if (j.is_number()) {
        std::vector<Point> out(dim, Point(dim, 0.0));
        for (unsigned m = 0; m < dim; ++m) out[m][m] = j.get<double>();
        return out;
    }
    if (!j.is_array() || j.size() != dim) schema_error(what + " must be a scalar or a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
    std::vector<Point> out;
    for (const Json &row : j) out.push_back(broadcast_vector(row, dim, what + " row"));
    return out;
}

Json matrix_json(const std::vector<Point> &m) {
    Json out = Json::array();
    for (const Point &row : m) out.push_back(row);
    return out;
}

Json estimate_json(const GradientEstimate &e) {
    return Json{{"index", e.outcome}, {"flat", e.flat}, {"gradient", e.gradient}, {"probability", e.probability}};
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

bool within_delta(const Point &a, const Point &b, double delta) {
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (!(std::abs(a[m] - b[m]) < delta)) return false;
    }
    return true;
}

PipelineOptions pipeline_options(const ExperimentConfig &config) {
    PipelineOptions o;
    o.group_mode = config.group_mode;
    o.phase_variant = config.phase_variant;
    o.max_grid_bits = config.max_grid_bits;
    return o;
}

Json base_record(const std::string &command, const ExperimentConfig &config) {
    return Json{{"command", command}, {"config", config_to_json(config)}};
}

}  // namespace

ExperimentConfig parse_config(const Json &json) {
    check_keys(json,
               {"dimension", "function", "x", "accuracy", "params", "shots", "seed", "group_mode", "phase_variant",
                "max_grid_bits", "prob_floor", "fd_step", "central_differences", "timings", "sweep"},
               "config");
    ExperimentConfig c;
    if (json.contains("dimension")) {
        if (!json["dimension"].is_number_integer() || json["dimension"].get<long long>() < 1) {
            schema_error("dimension must be a positive integer");
        }
        c.dimension = json["dimension"].get<unsigned>();
    } else if (json.contains("x") && json["x"].is_array()) {
        c.dimension = static_cast<unsigned>(json["x"].size());
        if (c.dimension < 1) schema_error("x must not be empty");
    }
    const unsigned p = c.dimension;

    if (!json.contains("function")) schema_error("missing 'function'");
    const Json &fj = json["function"];
    check_keys(fj, {"kind", "a", "hessian", "constant", "amplitude", "frequency", "coefficients", "domain"},
               "function");
    FunctionSpec &f = c.function;
    if (!fj.contains("kind") || !fj["kind"].is_string()) schema_error("function.kind must be a string");
    f.kind = fj["kind"].get<std::string>();
    if (f.kind == "custom-coefficients") f.kind = "custom";
    if (f.kind == "linear" || f.kind == "quadratic") {
        f.a = fj.contains("a") ? broadcast_vector(fj["a"], p, "function.a") : Point(p, 0.0);
        f.constant = fj.contains("constant") ? get_number(fj["constant"], "function.constant") : 0.0;
        if (f.kind == "quadratic") {
            if (!fj.contains("hessian")) schema_error("quadratic function needs 'hessian'");
            f.hessian = broadcast_matrix(fj["hessian"], p, "function.hessian");
        }
    } else if (f.kind == "sinusoidal") {
        f.amplitude = fj.contains("amplitude") ? get_number(fj["amplitude"], "function.amplitude") : 1.0;
        if (!fj.contains("frequency")) schema_error("sinusoidal function needs 'frequency'");
        f.frequency = broadcast_vector(fj["frequency"], p, "function.frequency");
    } else if (f.kind == "custom") {
        if (!fj.contains("coefficients") || !fj["coefficients"].is_array() || fj["coefficients"].empty()) {
            schema_error("custom function needs a non-empty 'coefficients' array");
        }
        const Json &cj = fj["coefficients"];
        if (cj[0].is_number()) {
            Point shared;
            for (const Json &v : cj) shared.push_back(get_number(v, "function.coefficients"));
            f.coefficients.assign(p, shared);
        } else {
            if (cj.size() != p) schema_error("function.coefficients needs one row per axis");
            for (const Json &row : cj) {
                if (!row.is_array()) schema_error("function.coefficients rows must be arrays");
                Point r;
                for (const Json &v : row) r.push_back(get_number(v, "function.coefficients"));
                f.coefficients.push_back(std::move(r));
            }
        }
    } else {
        schema_error("unknown function kind '" + f.kind + "' (linear, quadratic, sinusoidal, custom)");
    }
    if (!fj.contains("domain")) schema_error("function needs a 'domain' with center and half_width");
    check_keys(fj["domain"], {"center", "half_width"}, "function.domain");
    f.domain_center = fj["domain"].contains("center") ? broadcast_vector(fj["domain"]["center"], p, "domain.center")
                                                      : Point(p, 0.0);
    if (!fj["domain"].contains("half_width")) schema_error("domain needs half_width");
    f.domain_half_width = broadcast_vector(fj["domain"]["half_width"], p, "domain.half_width");

    if (!json.contains("x")) schema_error("missing 'x'");
    c.x = broadcast_vector(json["x"], p, "x");

    if (json.contains("accuracy")) {
        const Json &aj = json["accuracy"];
        check_keys(aj, {"gamma", "delta", "epsilon"}, "accuracy");
        AccuracySpec s;
        if (aj.contains("gamma")) s.gamma = get_number(aj["gamma"], "accuracy.gamma");
        if (aj.contains("delta")) s.delta = get_number(aj["delta"], "accuracy.delta");
        if (aj.contains("epsilon")) s.epsilon = get_number(aj["epsilon"], "accuracy.epsilon");
        s.validate();
        c.accuracy = s;
    }
    if (json.contains("params")) {
        const Json &pj = json["params"];
        check_keys(pj, {"n", "nu", "lambda", "mu"}, "params");
        for (const char *key : {"n", "nu", "lambda", "mu"}) {
            if (!pj.contains(key)) schema_error(std::string("params needs '") + key + "'");
        }
        if (!pj["n"].is_number_integer() || pj["n"].get<long long>() < 1) schema_error("params.n must be a positive integer");
        AlgorithmParams ap;
        ap.n = pj["n"].get<unsigned>();
        ap.nu = get_number(pj["nu"], "params.nu");
        ap.lambda = get_number(pj["lambda"], "params.lambda");
        ap.mu = get_number(pj["mu"], "params.mu");
        ap.validate();
        c.params = ap;
    }
    if (!c.accuracy && !c.params) schema_error("need an 'accuracy' block, explicit 'params', or both");

    auto get_u64 = [&](const char *key, std::uint64_t &out) {
        if (!json.contains(key)) return;
        if (!json[key].is_number_integer() || json[key].get<long long>() < 0) schema_error(std::string(key) + " must be a non-negative integer");
        out = json[key].get<std::uint64_t>();
    };
    get_u64("shots", c.shots);
    get_u64("seed", c.seed);
    std::uint64_t bits = c.max_grid_bits;
    get_u64("max_grid_bits", bits);
    if (bits < 1 || bits > 62) schema_error("max_grid_bits must be in [1, 62]");
    c.max_grid_bits = static_cast<unsigned>(bits);
    if (json.contains("group_mode")) c.group_mode = group_mode_from_string(json["group_mode"].get<std::string>());
    if (json.contains("phase_variant")) {
        c.phase_variant = phase_variant_from_string(json["phase_variant"].get<std::string>());
    }
    if (json.contains("prob_floor")) c.prob_floor = get_number(json["prob_floor"], "prob_floor");
    if (json.contains("fd_step")) c.fd_step = get_number(json["fd_step"], "fd_step");
    if (json.contains("central_differences")) c.central_differences = json["central_differences"].get<bool>();
    if (json.contains("timings")) c.timings = json["timings"].get<bool>();
    if (c.prob_floor < 0.0) schema_error("prob_floor must be non-negative");
    if (!(c.fd_step > 0.0)) schema_error("fd_step must be positive");
    return c;
}

Json config_to_json(const ExperimentConfig &c) {
    const FunctionSpec &f = c.function;
    Json fj{{"kind", f.kind}, {"domain", {{"center", f.domain_center}, {"half_width", f.domain_half_width}}}};
    if (f.kind == "linear" || f.kind == "quadratic") {
        fj["a"] = f.a;
        fj["constant"] = f.constant;
        if (f.kind == "quadratic") fj["hessian"] = matrix_json(f.hessian);
    } else if (f.kind == "sinusoidal") {
        fj["amplitude"] = f.amplitude;
        fj["frequency"] = f.frequency;
    } else {
        fj["coefficients"] = matrix_json(f.coefficients);
    }
    Json j{{"dimension", c.dimension},
           {"function", fj},
           {"x", c.x},
           {"shots", c.shots},
           {"seed", c.seed},
           {"group_mode", std::string(to_string(c.group_mode))},
           {"phase_variant", std::string(to_string(c.phase_variant))},
           {"max_grid_bits", c.max_grid_bits},
           {"prob_floor", c.prob_floor},
           {"fd_step", c.fd_step},
           {"central_differences", c.central_differences},
           {"timings", c.timings}};
    if (c.accuracy) {
        j["accuracy"] = {{"gamma", c.accuracy->gamma}, {"delta", c.accuracy->delta}, {"epsilon", c.accuracy->epsilon}};
    }
    if (c.params) j["params"] = params_to_json(*c.params);
    return j;
}

FunctionModel build_model(const ExperimentConfig &c) {
    const FunctionSpec &f = c.function;
    DomainBox box{f.domain_center, f.domain_half_width};
    if (f.kind == "linear") return make_linear(f.a, f.constant, box);
    if (f.kind == "quadratic") {
        const auto p = static_cast<Eigen::Index>(c.dimension);
        Eigen::MatrixXd h(p, p);
        for (Eigen::Index i = 0; i < p; ++i) {
            for (Eigen::Index j = 0; j < p; ++j) {
                h(i, j) = f.hessian[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        }
        return make_quadratic(f.a, h, f.constant, box);
    }
    if (f.kind == "sinusoidal") return make_sinusoidal(f.amplitude, f.frequency, box);
    return make_separable_polynomial(f.coefficients, box);
}

AlgorithmParams resolve_params(const ExperimentConfig &c, const FunctionModel &model) {
    if (c.params) return *c.params;
    return select_parameters(*c.accuracy, model.grad_bound(), model.hess_bound(), c.dimension, c.max_grid_bits);
}

Json params_to_json(const AlgorithmParams &p) {
    return Json{{"n", p.n}, {"nu", p.nu}, {"lambda", p.lambda}, {"mu", p.mu}};
}

Json format_to_json(const FixedPointFormat &f) {
    return Json{{"bits", f.bits}, {"a0", f.offset}, {"a1", f.step}, {"group_mode", std::string(to_string(f.group_mode))}};
}

Json inequalities_to_json(const InequalityReport &report) {
    Json out = Json::array();
    for (const InequalityCheck &c : report.checks) {
        Json item{{"name", c.name}, {"relation", c.relation}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack},
                  {"holds", c.holds}};
        if (!std::isfinite(c.lhs)) item["lhs"] = nullptr;
        if (!std::isfinite(c.slack)) item["slack"] = nullptr;
        if (!c.note.empty()) item["note"] = c.note;
        out.push_back(item);
    }
    return out;
}

Json theorem_to_json(const TheoremReport &r) {
    Json j{{"params", params_to_json(r.params)},
           {"accuracy", {{"gamma", r.spec.gamma}, {"delta", r.spec.delta}, {"epsilon", r.spec.epsilon}}},
           {"L", r.grad_bound},
           {"M", r.hess_bound},
           {"p", r.p},
           {"format", format_to_json(r.format)},
           {"oracle_calls", r.oracle_calls},
           {"true_gradient", r.true_gradient},
           {"inequalities", inequalities_to_json(r.inequalities)},
           {"hypotheses_hold", r.inequalities.all_hold()},
           {"reconstruction_error", r.reconstruction_error},
           {"pipeline_vs_direct", r.pipeline_vs_direct},
           {"norm_psi_L", r.norm_linear},
           {"psi_N", {{"norm", r.norm_nonlinear}, {"bound", r.bound_nonlinear},
                      {"asserted", r.nonlinear_bound_asserted}, {"holds", r.nonlinear_bound_holds}}},
           {"psi_D", {{"norm", r.norm_discrete}, {"bound", r.bound_discrete}, {"holds", r.discrete_bound_holds}}},
           {"eps_D", {{"max_abs", r.max_eps_discrete}, {"nu", r.params.nu}, {"holds", r.eps_discrete_holds}}},
           {"eps_N", {{"worst_excess", r.worst_eps_nonlinear_excess}, {"holds", r.eps_nonlinear_holds}}},
           {"linear_projection", {{"norm", r.linear_projection}, {"target", r.linear_projection_target},
                                  {"holds", r.linear_projection_holds}}},
           {"success", {{"norm", r.success_norm}, {"probability", r.success_probability},
                        {"epsilon", r.spec.epsilon}, {"holds", r.theorem_holds}}},
           {"triangle", {{"lower_bound", r.triangle_lower_bound}, {"holds", r.triangle_holds}}},
           {"failures", r.failures()}};
    if (r.leakage) {
        j["leakage"] = {{"bound", r.leakage->bound},
                        {"vacuous", r.leakage->vacuous},
                        {"max_out_of_window", r.leakage->max_out_of_window},
                        {"holds", r.leakage->bound_holds},
                        {"factorization_error", r.leakage->factorization_error},
                        {"projected_norm", r.leakage->projected_norm}};
    }
    return j;
}

CommandOutcome cmd_plan(const ExperimentConfig &config) {
    if (!config.accuracy) throw InvalidArgument(kModule, "plan needs an 'accuracy' block");
    const FunctionModel model = build_model(config);
    const AlgorithmParams params = resolve_params(config, model);
    const InequalityReport report =
        check_inequalities(params, *config.accuracy, model.grad_bound(), model.hess_bound(), config.dimension);
    const GridShape shape{params.n, config.dimension};
    CommandOutcome out;
    out.record = base_record("plan", config);
    out.record["params_source"] = config.params ? "explicit" : "planner";
    out.record["params"] = params_to_json(params);
    out.record["L"] = model.grad_bound();
    out.record["M"] = model.hess_bound();
    out.record["inequalities"] = inequalities_to_json(report);
    out.record["all_hold"] = report.all_hold();
    const unsigned qubits = shape.total_bits();
    out.record["grid"] = {{"p", shape.p},
                          {"n", shape.n},
                          {"qubits", qubits},
                          {"points", qubits < 64 ? Json(std::ldexp(1.0, static_cast<int>(qubits))) : Json(nullptr)},
                          {"dense_bytes", std::ldexp(16.0, static_cast<int>(qubits))},
                          {"within_guard", qubits <= config.max_grid_bits}};
    out.exit_code = report.all_hold() ? 0 : 1;
    return out;
}

CommandOutcome cmd_run(const ExperimentConfig &config) {
    const auto t0 = std::chrono::steady_clock::now();
    const FunctionModel model = build_model(config);
    const AlgorithmParams params = resolve_params(config, model);
    const PipelineResult run = run_pipeline(model, config.x, params, pipeline_options(config));
    const double pipeline_ms = elapsed_ms(t0);

    const Point truth = model.gradient(config.x);
    CommandOutcome out;
    Json &rec = out.record;
    rec = base_record("run", config);
    rec["params_source"] = config.params ? "explicit" : "planner";
    rec["params"] = params_to_json(params);
    rec["format"] = format_to_json(run.format);
    rec["oracle_calls"] = run.oracle_calls;
    rec["true_gradient"] = truth;

    const auto dist = outcome_distribution(run.chi, params, config.prob_floor);
    Json outcomes = Json::array();
    double kept = 0.0;
    for (const GradientEstimate &e : dist) {
        outcomes.push_back(estimate_json(e));
        kept += e.probability;
    }
    const auto top = std::max_element(dist.begin(), dist.end(), [](const auto &a, const auto &b) {
        return a.probability < b.probability;
    });
    rec["distribution"] = {{"floor", config.prob_floor}, {"kept_probability", kept}, {"outcomes", outcomes}};
    if (top != dist.end()) rec["top_outcome"] = estimate_json(*top);

    const auto t1 = std::chrono::steady_clock::now();
    const auto samples = sample_measurements(run.chi, config.shots, config.seed, params);
    std::map<std::uint64_t, std::pair<const GradientEstimate *, std::uint64_t>> counts;
    Point mean(config.dimension, 0.0);
    std::uint64_t in_window = 0;
    for (const GradientEstimate &s : samples) {
        auto &slot = counts[s.flat];
        slot.first = &s;
        ++slot.second;
        for (std::size_t m = 0; m < mean.size(); ++m) mean[m] += s.gradient[m] / static_cast<double>(samples.size());
        if (config.accuracy && within_delta(s.gradient, truth, config.accuracy->delta)) ++in_window;
    }
    Json count_list = Json::array();
    for (const auto &[flat, slot] : counts) {
        count_list.push_back({{"index", slot.first->outcome}, {"gradient", slot.first->gradient}, {"count", slot.second}});
    }
    rec["samples"] = {{"shots", config.shots}, {"seed", config.seed}, {"mean_gradient", mean}, {"counts", count_list}};
    if (config.accuracy) {
        const ProjectionResult proj =
            success_projection(run.chi.amplitudes, run.chi.shape, truth, config.accuracy->delta, params);
        rec["samples"]["in_window_frequency"] = static_cast<double>(in_window) / static_cast<double>(config.shots);
        rec["success"] = {{"norm", proj.norm}, {"probability", proj.probability}, {"delta", config.accuracy->delta}};
    }
    const BaselineResult classical = classical_baseline(model, config.x, config.fd_step, config.central_differences);
    rec["classical"] = {{"gradient", classical.gradient}, {"calls", classical.calls}, {"step", config.fd_step},
                        {"central", config.central_differences}};
    if (config.timings) rec["timings_ms"] = {{"pipeline", pipeline_ms}, {"sampling", elapsed_ms(t1)}};
    return out;
}

CommandOutcome cmd_verify(const ExperimentConfig &config) {
    if (!config.accuracy) throw InvalidArgument(kModule, "verify needs an 'accuracy' block");
    const auto t0 = std::chrono::steady_clock::now();
    const FunctionModel model = build_model(config);
    const AlgorithmParams params = resolve_params(config, model);
    const TheoremReport report = verify_theorem(model, config.x, *config.accuracy, params, pipeline_options(config));
    CommandOutcome out;
    out.record = base_record("verify", config);
    out.record["params_source"] = config.params ? "explicit" : "planner";
    out.record["theorem"] = theorem_to_json(report);
    if (config.timings) out.record["timings_ms"] = {{"verify", elapsed_ms(t0)}};
    out.exit_code = report.failures().empty() ? 0 : 1;
    return out;
}

CommandOutcome cmd_bench(const Json &base) {
    CommandOutcome out;
    out.record = Json{{"command", "bench"}, {"entries", Json::array()}};
    std::ostringstream table;
    table.precision(10);
    table << "index,p,delta,epsilon,n,nu,lambda,mu,grid_qubits,executed_n,quantum_oracle_calls,classical_calls\n";
    if (!base.is_object()) throw InvalidArgument(kModule, "bench config must be an object");
    const Json sweep = base.value("sweep", Json::array());
    if (!sweep.is_array()) throw InvalidArgument(kModule, "config: sweep must be an array");
    Json stem = base;
    stem.erase("sweep");

    for (std::size_t i = 0; i < sweep.size(); ++i) {
        Json merged = stem;
        merged.merge_patch(sweep[i]);
        const ExperimentConfig config = parse_config(merged);
        const FunctionModel model = build_model(config);
        // Plan without the grid guard: the table reports the full requirement.
        const AlgorithmParams planned =
            config.params ? *config.params
                          : select_parameters(*config.accuracy, model.grad_bound(), model.hess_bound(),
                                              config.dimension, 62);
        AlgorithmParams executed = planned;
        const unsigned cap = std::min(config.max_grid_bits, kBenchExecBits);
        executed.n = std::max(1u, std::min(planned.n, cap / config.dimension));
        PipelineOptions options = pipeline_options(config);
        const PipelineResult run = run_pipeline(model, config.x, executed, options);
        const BaselineResult classical =
            classical_baseline(model, config.x, config.fd_step, config.central_differences);

        Json entry{{"index", i},
                   {"config", config_to_json(config)},
                   {"params", params_to_json(planned)},
                   {"grid_qubits", planned.n * config.dimension},
                   {"executed_n", executed.n},
                   {"format", format_to_json(run.format)},
                   {"quantum_oracle_calls", run.oracle_calls},
                   {"classical_calls", classical.calls}};
        out.record["entries"].push_back(entry);
        table << i << ',' << config.dimension << ','
              << (config.accuracy ? config.accuracy->delta : std::nan("")) << ','
              << (config.accuracy ? config.accuracy->epsilon : std::nan("")) << ',' << planned.n << ','
              << planned.nu << ',' << planned.lambda << ',' << planned.mu << ',' << planned.n * config.dimension
              << ',' << executed.n << ',' << run.oracle_calls << ',' << classical.calls << '\n';
    }
    out.table = table.str();
    return out;
}

}  // namespace qgrad
