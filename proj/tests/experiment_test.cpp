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

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <sstream>

#include "qgrad/errors.hpp"

namespace qgrad {
namespace {

Json worked_example() {
    return Json::parse(R"({
        "function": {"kind": "quadratic", "hessian": 1.0, "domain": {"center": 0.0, "half_width": 1.0}},
        "x": [0.0],
        "accuracy": {"gamma": 1.0, "delta": 0.5, "epsilon": 0.5},
        "shots": 2000,
        "seed": 5
    })");
}

// Every numeric leaf of `a` equals the matching leaf of `b` within tol.
void expect_json_close(const Json &a, const Json &b, double tol, const std::string &path = "") {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>(), y = b.get<double>();
        if (std::isfinite(x) || std::isfinite(y)) {
            EXPECT_NEAR(x, y, tol) << path;
        }
        return;
    }
    ASSERT_EQ(a.type(), b.type()) << path;
    if (a.is_object()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (auto it = a.begin(); it != a.end(); ++it) {
            ASSERT_TRUE(b.contains(it.key())) << path << "/" << it.key();
            expect_json_close(it.value(), b[it.key()], tol, path + "/" + it.key());
        }
    } else if (a.is_array()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (std::size_t i = 0; i < a.size(); ++i) expect_json_close(a[i], b[i], tol, path + "/" + std::to_string(i));
    } else {
        EXPECT_EQ(a, b) << path;
    }
}

TEST(Config, BroadcastsScalars) {
    Json j = worked_example();
    j["dimension"] = 3;
    j["x"] = 0.1;
    const ExperimentConfig c = parse_config(j);
    EXPECT_EQ(c.x, (Point{0.1, 0.1, 0.1}));
    ASSERT_EQ(c.function.hessian.size(), 3u);
    EXPECT_EQ(c.function.hessian[1], (Point{0.0, 1.0, 0.0}));
    EXPECT_EQ(c.function.domain_half_width, (Point{1.0, 1.0, 1.0}));
}

TEST(Config, NormalizedFormRoundTrips) {
    const ExperimentConfig c = parse_config(worked_example());
    const Json once = config_to_json(c);
    EXPECT_EQ(config_to_json(parse_config(once)), once);
    EXPECT_EQ(config_to_json(parse_config(Json::parse(once.dump()))), once);
}

TEST(Config, RejectsBadInput) {
    Json unknown = worked_example();
    unknown["shot"] = 3;
    EXPECT_THROW(parse_config(unknown), InvalidArgument);
    Json neither = worked_example();
    neither.erase("accuracy");
    EXPECT_THROW(parse_config(neither), InvalidArgument);
    Json kind = worked_example();
    kind["function"]["kind"] = "cubic";
    EXPECT_THROW(parse_config(kind), InvalidArgument);
    Json eps = worked_example();
    eps["accuracy"]["epsilon"] = 1.0;
    EXPECT_THROW(parse_config(eps), InvalidArgument);
    Json mode = worked_example();
    mode["group_mode"] = "sum";
    EXPECT_THROW(parse_config(mode), InvalidArgument);
}

TEST(Config, ExplicitParamsOverridePlanner) {
    Json j = worked_example();
    j["params"] = {{"n", 3}, {"nu", 1e-4}, {"lambda", 2.0}, {"mu", 0.01}};
    const ExperimentConfig c = parse_config(j);
    const AlgorithmParams p = resolve_params(c, build_model(c));
    EXPECT_EQ(p.n, 3u);
    EXPECT_EQ(p.lambda, 2.0);
}

TEST(Config, CustomPolynomialAlias) {
    const Json j = Json::parse(R"({
        "dimension": 2,
        "function": {"kind": "custom-coefficients", "coefficients": [0.0, 1.0, 0.5],
                     "domain": {"half_width": 1.0}},
        "x": [0.2, -0.1],
        "params": {"n": 2, "nu": 1e-6, "lambda": 1.0, "mu": 0.1}
    })");
    const ExperimentConfig c = parse_config(j);
    EXPECT_EQ(c.function.kind, "custom");
    const FunctionModel f = build_model(c);
    EXPECT_NEAR(f.gradient(c.x)[0], 1.2, 1e-15);
    EXPECT_NEAR(f.gradient(c.x)[1], 0.9, 1e-15);
}

TEST(Plan, WorkedExample) {
    const CommandOutcome out = cmd_plan(parse_config(worked_example()));
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_EQ(out.record["params"]["n"], 4);
    EXPECT_TRUE(out.record["all_hold"].get<bool>());
    EXPECT_EQ(out.record["grid"]["qubits"], 4);
}

TEST(Plan, PrecisionViolationExitsOne) {
    Json j = worked_example();
    const AlgorithmParams p = resolve_params(parse_config(j), build_model(parse_config(j)));
    j["params"] = {{"n", p.n}, {"nu", p.nu * 1000.0}, {"lambda", p.lambda}, {"mu", p.mu}};
    const CommandOutcome out = cmd_plan(parse_config(j));
    EXPECT_EQ(out.exit_code, 1);
    bool flagged = false;
    for (const Json &c : out.record["inequalities"]) {
        if (c["name"] == "precision") flagged = !c["holds"].get<bool>();
    }
    EXPECT_TRUE(flagged);
}

TEST(Run, RecordInvariants) {
    const ExperimentConfig c = parse_config(worked_example());
    const CommandOutcome out = cmd_run(c);
    const Json &r = out.record;
    EXPECT_EQ(r["oracle_calls"], 2);
    EXPECT_FALSE(r.contains("timings_ms"));
    const double floor = r["distribution"]["floor"].get<double>();
    double total = 0.0;
    for (const Json &o : r["distribution"]["outcomes"]) total += o["probability"].get<double>();
    EXPECT_GE(total, 1.0 - floor * 16.0);
    std::uint64_t counted = 0;
    for (const Json &o : r["samples"]["counts"]) counted += o["count"].get<std::uint64_t>();
    EXPECT_EQ(counted, 2000u);
    EXPECT_EQ(r["classical"]["calls"], 2);
    EXPECT_GE(r["success"]["norm"].get<double>(), 0.5);
    // Lossless serialization.
    EXPECT_EQ(Json::parse(r.dump()), r);
    EXPECT_EQ(Json::parse(r.dump(2)).dump(), r.dump());
}

TEST(Run, SameSeedGivesIdenticalRecords) {
    const ExperimentConfig c = parse_config(worked_example());
    EXPECT_EQ(cmd_run(c).record.dump(2), cmd_run(c).record.dump(2));
    ExperimentConfig other = c;
    other.seed = 6;
    EXPECT_NE(cmd_run(other).record["samples"].dump(), cmd_run(c).record["samples"].dump());
}

TEST(Run, TimingsAreOptIn) {
    ExperimentConfig c = parse_config(worked_example());
    c.timings = true;
    EXPECT_TRUE(cmd_run(c).record.contains("timings_ms"));
}

TEST(Verify, ReloadedRecordReproducesReport) {
    for (const char *mode : {"modular", "xor"}) {
        Json j = worked_example();
        j["group_mode"] = mode;
        const CommandOutcome first = cmd_verify(parse_config(j));
        EXPECT_EQ(first.exit_code, 0) << first.record["theorem"]["failures"].dump();
        const Json reloaded = Json::parse(first.record.dump());
        const CommandOutcome second = cmd_verify(parse_config(reloaded["config"]));
        expect_json_close(second.record["theorem"], first.record["theorem"], 1e-10);
    }
}

TEST(Verify, LinearModelIncludesLeakage) {
    const Json j = Json::parse(R"({
        "function": {"kind": "linear", "a": 0.3, "domain": {"half_width": 1.0}},
        "x": [0.0],
        "accuracy": {"gamma": 1.0, "delta": 0.5, "epsilon": 0.5}
    })");
    const CommandOutcome out = cmd_verify(parse_config(j));
    EXPECT_EQ(out.exit_code, 0);
    ASSERT_TRUE(out.record["theorem"].contains("leakage"));
    EXPECT_TRUE(out.record["theorem"]["leakage"]["holds"].get<bool>());
}

TEST(Bench, OracleCallsAcrossDimensions) {
    const Json base = Json::parse(R"({
        "function": {"kind": "quadratic", "hessian": 1.0, "domain": {"half_width": 1.0}},
        "x": 0.0,
        "accuracy": {"gamma": 1.0, "delta": 0.5, "epsilon": 0.5},
        "sweep": [{"dimension": 1}, {"dimension": 2}, {"dimension": 3}, {"dimension": 4}]
    })");
    const CommandOutcome out = cmd_bench(base);
    ASSERT_EQ(out.record["entries"].size(), 4u);
    for (unsigned p = 1; p <= 4; ++p) {
        const Json &e = out.record["entries"][p - 1];
        EXPECT_EQ(e["quantum_oracle_calls"], 2);
        EXPECT_EQ(e["classical_calls"], p + 1);
    }
    std::istringstream table(out.table);
    std::string line;
    int lines = 0;
    while (std::getline(table, line)) ++lines;
    EXPECT_EQ(lines, 5);
}

TEST(Bench, EmptySweep) {
    Json base = worked_example();
    base["sweep"] = Json::array();
    const CommandOutcome out = cmd_bench(base);
    EXPECT_TRUE(out.record["entries"].empty());
    EXPECT_EQ(std::count(out.table.begin(), out.table.end(), '\n'), 1);
}

}  // namespace
}  // namespace qgrad
