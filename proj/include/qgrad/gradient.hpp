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
 * The two-oracle-call gradient estimator.
 *
 * Starting from |c_d(x)> |0> |0> the pipeline applies
 *
 *   U_QFT, U_+, U_f, U_R, U_f^{-1}, U_+^{-1}, U_QFT
 *
 * and leaves |c_d(x)> |0> |chi>. Measuring the grid register and decoding
 * the outcome with decode_gradient yields the estimate; chi concentrates
 * near the true gradient when the parameters satisfy the accuracy
 * conditions checked in analysis.hpp.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qgrad/fixed_point.hpp"
#include "qgrad/function_model.hpp"
#include "qgrad/grid_state.hpp"
#include "qgrad/params.hpp"
#include "qgrad/sparse_state.hpp"

namespace qgrad {

struct PipelineOptions {
    GroupMode group_mode = GroupMode::kModularAdd;
    PhaseVariant phase_variant = PhaseVariant::kDirect;
    unsigned max_grid_bits = kDefaultMaxGridBits;
    /// Range register to use; planned from nu and the grid's range when empty.
    std::optional<FixedPointFormat> format;
};

struct PipelineResult {
    GridState chi;
    std::uint64_t oracle_calls = 0;
    FixedPointFormat format;
    /// Largest number of sparse terms alive at any stage.
    std::size_t peak_terms = 0;
};

/// Range register the pipeline uses by default: precision nu, covering |f|
/// over the sampling grid, in the requested group mode.
FixedPointFormat plan_pipeline_format(const FunctionModel &model, std::span<const double> x,
                                      const AlgorithmParams &params, GroupMode mode);

/// Runs A(n, nu, lambda, mu; x). Throws DomainError if the sampling grid
/// leaves the domain and ResidualEntanglementError if uncomputation fails.
PipelineResult run_pipeline(const FunctionModel &model, std::span<const double> x,
                            const AlgorithmParams &params, const PipelineOptions &options = {});

/// c_g for one axis: -g/(2^n lambda mu) below 2^(n-1), (2^n - g)/(2^n lambda mu) above.
double decode_gradient_component(std::uint32_t g, const AlgorithmParams &params);
Point decode_gradient(const GridIndex &g, const AlgorithmParams &params);

struct GradientEstimate {
    std::uint64_t flat = 0;
    GridIndex outcome;
    Point gradient;
    double probability = 0.0;
};

/// Every outcome with |chi_g|^2 >= floor, in row-major order.
std::vector<GradientEstimate> outcome_distribution(const GridState &chi, const AlgorithmParams &params,
                                                   double floor = 0.0);

/// Draws `shots` i.i.d. outcomes by inverse CDF over row-major order using
/// mt19937_64(seed). Throws InvalidArgument if |chi| deviates from 1 by more
/// than 1e-8.
std::vector<GradientEstimate> sample_measurements(const GridState &chi, std::uint64_t shots,
                                                  std::uint64_t seed, const AlgorithmParams &params);

}  // namespace qgrad
