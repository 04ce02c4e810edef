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

/**
 * @file
 * Experiment configuration, result records and the plan / run / verify /
 * bench commands behind the `qgrad` tool. Configs and records are JSON; the
 * schema is described in README.md.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgrad/analysis.hpp"
#include "qgrad/function_model.hpp"
#include "qgrad/gradient.hpp"

namespace qgrad {

using Json = nlohmann::json;

struct FunctionSpec {
    std::string kind = "quadratic";  // linear | quadratic | sinusoidal | custom
    Point a;                         // linear term (linear, quadratic)
    std::vector<Point> hessian;      // quadratic
    double constant = 0.0;           // linear, quadratic
    double amplitude = 1.0;          // sinusoidal c
    Point frequency;                 // sinusoidal b
    std::vector<Point> coefficients; // custom: per-axis polynomial coefficients
    Point domain_center;
    Point domain_half_width;
};

struct ExperimentConfig {
    unsigned dimension = 1;
    FunctionSpec function;
    Point x;
    std::optional<AccuracySpec> accuracy;
    std::optional<AlgorithmParams> params;  // overrides the planner when present
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    GroupMode group_mode = GroupMode::kModularAdd;
    PhaseVariant phase_variant = PhaseVariant::kDirect;
    unsigned max_grid_bits = kDefaultMaxGridBits;
    double prob_floor = 1e-12;
    double fd_step = 1e-6;
    bool central_differences = false;
    bool timings = false;
};

/// Parses and normalises a config: scalars given for vector or matrix
/// fields are broadcast to `dimension` (a scalar Hessian s becomes s I).
/// Throws InvalidArgument on schema violations.
ExperimentConfig parse_config(const Json &json);
/// Normalised form; parse_config(config_to_json(c)) reproduces c.
Json config_to_json(const ExperimentConfig &config);

FunctionModel build_model(const ExperimentConfig &config);

/// Explicit params if given, otherwise the closed-form planner.
AlgorithmParams resolve_params(const ExperimentConfig &config, const FunctionModel &model);

Json params_to_json(const AlgorithmParams &params);
Json format_to_json(const FixedPointFormat &format);
Json inequalities_to_json(const InequalityReport &report);
Json theorem_to_json(const TheoremReport &report);

struct CommandOutcome {
    Json record;
    int exit_code = 0;   // 0 ok, 1 an asserted check failed
    std::string table;   // bench only: comma-separated table
};

CommandOutcome cmd_plan(const ExperimentConfig &config);
CommandOutcome cmd_run(const ExperimentConfig &config);
CommandOutcome cmd_verify(const ExperimentConfig &config);

/// `base` is a raw config whose "sweep" array holds patches merged onto the
/// base (RFC 7386) to form each entry. Entries run in order.
CommandOutcome cmd_bench(const Json &base);

}  // namespace qgrad
