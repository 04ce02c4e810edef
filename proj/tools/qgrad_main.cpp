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

// qgrad: plan, run, verify and benchmark the two-call gradient estimator.
//
// Exit status: 0 success, 1 an asserted check failed, 2 configuration or
// pipeline error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qgrad/errors.hpp"
#include "qgrad/experiment.hpp"

namespace {

constexpr const char *kOutputDirEnv = "QGRAD_OUTPUT_DIR";

struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::string> group_mode;
    std::optional<std::string> phase_variant;
    std::optional<unsigned> max_grid_bits;
    std::optional<double> prob_floor;
    std::string out;
    bool timings = false;
};

qgrad::Json load_config(const Flags &flags) {
    std::ifstream in(flags.config_path);
    if (!in) throw qgrad::InvalidArgument("experiment-cli", "cannot open config '" + flags.config_path + "'");
    qgrad::Json j;
    try {
        j = qgrad::Json::parse(in);
    } catch (const qgrad::Json::parse_error &e) {
        throw qgrad::InvalidArgument("experiment-cli", "config is not valid JSON: " + std::string(e.what()));
    }
    if (flags.seed) j["seed"] = *flags.seed;
    if (flags.shots) j["shots"] = *flags.shots;
    if (flags.group_mode) j["group_mode"] = *flags.group_mode;
    if (flags.phase_variant) j["phase_variant"] = *flags.phase_variant;
    if (flags.max_grid_bits) j["max_grid_bits"] = *flags.max_grid_bits;
    if (flags.prob_floor) j["prob_floor"] = *flags.prob_floor;
    if (flags.timings) j["timings"] = true;
    return j;
}

std::optional<std::filesystem::path> output_path(const Flags &flags, const std::string &command) {
    if (!flags.out.empty()) return std::filesystem::path(flags.out);
    if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir) {
        return std::filesystem::path(dir) / (command + ".json");
    }
    return std::nullopt;
}

void emit(const qgrad::CommandOutcome &outcome, const Flags &flags, const std::string &command) {
    const std::string text = outcome.record.dump(2) + "\n";
    if (auto path = output_path(flags, command)) {
        if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
        std::ofstream out(*path);
        if (!out) throw qgrad::InvalidArgument("experiment-cli", "cannot write '" + path->string() + "'");
        out << text;
        if (command != "bench") std::cerr << "wrote " << path->string() << "\n";
    } else if (command != "bench") {
        std::cout << text;
    }
    if (command == "bench") std::cout << outcome.table;
}

void add_common(CLI::App *sub, Flags &flags) {
    sub->add_option("--config", flags.config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Sampling seed");
    sub->add_option("--shots", flags.shots, "Number of measurement shots");
    sub->add_option("--group-mode", flags.group_mode, "Range-register group: modular or xor")
        ->check(CLI::IsMember({"modular", "xor"}));
    sub->add_option("--phase-variant", flags.phase_variant, "Phase rotation: direct or per-bit")
        ->check(CLI::IsMember({"direct", "per-bit"}));
    sub->add_option("--max-grid-bits", flags.max_grid_bits, "Limit on p*n grid qubits")->check(CLI::Range(1, 62));
    sub->add_option("--prob-floor", flags.prob_floor, "Drop outcomes below this probability from records");
    sub->add_option("--out", flags.out, std::string("Write the record here (default: $") + kOutputDirEnv +
                                            "/<command>.json, else stdout)");
    sub->add_flag("--timings", flags.timings, "Include wall-clock timings in the record");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator and verifier for two-oracle-call quantum gradient estimation"};
    app.require_subcommand(1);
    Flags flags;
    auto *plan = app.add_subcommand("plan", "Choose (n, nu, lambda, mu) and check the accuracy conditions");
    auto *run = app.add_subcommand("run", "Execute the estimator, report the outcome distribution and samples");
    auto *verify = app.add_subcommand("verify", "Run every accuracy bound check on one configuration");
    auto *bench = app.add_subcommand("bench", "Oracle-call and precision table over a config sweep");
    for (auto *sub : {plan, run, verify, bench}) add_common(sub, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        const qgrad::Json raw = load_config(flags);
        qgrad::CommandOutcome outcome;
        std::string command;
        if (*plan) {
            command = "plan";
            outcome = qgrad::cmd_plan(qgrad::parse_config(raw));
        } else if (*run) {
            command = "run";
            outcome = qgrad::cmd_run(qgrad::parse_config(raw));
        } else if (*verify) {
            command = "verify";
            outcome = qgrad::cmd_verify(qgrad::parse_config(raw));
        } else {
            command = "bench";
            outcome = qgrad::cmd_bench(raw);
        }
        emit(outcome, flags, command);
        return outcome.exit_code;
    } catch (const qgrad::Error &e) {
        std::cerr << "error [" << e.module() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
