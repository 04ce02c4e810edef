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
 * Accuracy analysis of the gradient estimator.
 *
 * Given a target (gamma, delta, epsilon) the estimator succeeds, in the sense
 * ||P chi||_2 >= epsilon for the projection P onto outcomes whose decoded
 * gradient lies within delta of the truth in the infinity norm, whenever
 *
 *   nonlinearity  4^(n-1) pi lambda M mu^2 / sqrt(5)       <= (1 - eps)/3
 *   precision     2 pi lambda nu                           <= (1 - eps)/3
 *   margin        2^(n-1) mu                               <= gamma
 *   bandwidth     1 / (2 lambda mu)                        >= L + delta
 *   leakage       csc(pi lambda mu delta) <= sqrt(2^n (1 - ((2+eps)/3)^(2/p)))
 *
 * The pre-transform state psi splits as psi_L + psi_N + psi_D: the ideal
 * linear phase ramp, the curvature error and the arithmetic error. This
 * header computes each piece, its norm bound, and the end-to-end guarantee.
 * It uses the model's exact gradient; the estimator never does.
 */

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qgrad/fixed_point.hpp"
#include "qgrad/function_model.hpp"
#include "qgrad/gradient.hpp"
#include "qgrad/grid_state.hpp"
#include "qgrad/params.hpp"

namespace qgrad {

struct AccuracySpec {
    double gamma = 1.0;
    double delta = 0.5;
    double epsilon = 0.5;

    /// gamma, delta > 0 and 0 < epsilon < 1.
    void validate() const;
};

/// Closed-form parameter choice satisfying all five conditions. Throws
/// GuardError if p * n would exceed `max_grid_bits`.
AlgorithmParams select_parameters(const AccuracySpec &spec, double L, double M, unsigned p,
                                  unsigned max_grid_bits = kDefaultMaxGridBits);

/// One condition. `slack` is positive when satisfied: rhs - lhs for "<=",
/// lhs - rhs for ">=". `holds` allows a relative 1e-12 round-off on slack
/// because the closed-form choice meets several conditions with equality.
struct InequalityCheck {
    std::string name;
    std::string relation;  // "<=" or ">="
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    std::string note;
};

struct InequalityReport {
    std::array<InequalityCheck, 5> checks;  // nonlinearity, precision, margin, bandwidth, leakage

    bool all_hold() const;
    const InequalityCheck &by_name(const std::string &name) const;
};

InequalityReport check_inequalities(const AlgorithmParams &params, const AccuracySpec &spec, double L,
                                    double M, unsigned p);

/// 4^(n-1) pi lambda M mu^2 / sqrt(5).
double nonlinear_norm_bound(const AlgorithmParams &params, double M);
/// 2 pi lambda nu.
double discretization_norm_bound(const AlgorithmParams &params);

struct ErrorDecomposition {
    GridShape shape;
    std::vector<Complex> psi;          // state before the final transform
    std::vector<Complex> psi_linear;   // psi_L
    std::vector<Complex> psi_nonlinear;// psi_N
    std::vector<Complex> psi_discrete; // psi_D
    std::vector<double> eps_nonlinear; // f(x + mu(h - g0)) - f(x) - mu grad f(x).(h - g0)
    std::vector<double> eps_discrete;  // c_r c_f c_p(c_d(x), h) - f(x + mu(h - g0))
    std::vector<double> eps_nonlinear_bound;  // M mu^2 |h - g0|^2 / 2

    double norm_nonlinear() const { return l2_norm(psi_nonlinear); }
    double norm_discrete() const { return l2_norm(psi_discrete); }
    double norm_linear() const { return l2_norm(psi_linear); }
    /// max_h |psi_L + psi_N + psi_D - psi|.
    double reconstruction_error() const;
    double max_abs_eps_discrete() const;
    /// Largest |eps_N| minus its bound, scaled by a round-off allowance; <= 0 when all hold.
    double worst_eps_nonlinear_excess() const;
};

ErrorDecomposition decompose_state(const FunctionModel &model, std::span<const double> x,
                                   const AlgorithmParams &params, const FixedPointFormat &format,
                                   unsigned max_grid_bits = kDefaultMaxGridBits);

/// Per-axis windows P_m: g_m is inside when |c_g,m(g_m) - true_grad_m| < delta.
std::vector<std::vector<bool>> projection_windows(std::span<const double> true_grad, double delta,
                                                  const AlgorithmParams &params);

struct ProjectionResult {
    double norm = 0.0;         // ||P chi||_2
    double probability = 0.0;  // ||P chi||_2^2
};

ProjectionResult success_projection(std::span<const Complex> chi, const GridShape &shape,
                                    std::span<const double> true_grad, double delta,
                                    const AlgorithmParams &params);

struct LeakageReport {
    double bound = 0.0;             // 2^-n |csc(pi lambda mu delta)|
    bool vacuous = false;           // bound >= 1 says nothing
    double max_out_of_window = 0.0; // max |<g_m|phi_m>| over out-of-window g_m, all axes
    bool bound_holds = false;       // max_out_of_window <= bound + 1e-12
    double factorization_error = 0.0;  // max |U_QFT psi_L - phase * (x)phi_m|
    double projected_norm = 0.0;    // ||P U_QFT psi_L||_2
    std::vector<std::vector<Complex>> factors;  // phi_m
};

/// Leakage analysis for a linear model. Throws InvalidArgument if the model
/// is not linear or the bandwidth condition fails.
LeakageReport leakage_check(const FunctionModel &model, std::span<const double> x,
                            const AlgorithmParams &params, double delta,
                            unsigned max_grid_bits = kDefaultMaxGridBits);

struct BaselineResult {
    Point gradient;
    std::uint64_t calls = 0;
};

/// Forward differences (p + 1 evaluations) or, with `central`, central
/// differences (2p evaluations).
BaselineResult classical_baseline(const FunctionModel &model, std::span<const double> x, double step,
                                  bool central = false);

struct TheoremReport {
    AlgorithmParams params;
    AccuracySpec spec;
    double grad_bound = 0.0;
    double hess_bound = 0.0;
    unsigned p = 1;
    FixedPointFormat format;
    std::uint64_t oracle_calls = 0;
    Point true_gradient;

    InequalityReport inequalities;

    double reconstruction_error = 0.0;
    double pipeline_vs_direct = 0.0;  // max |chi - U_QFT psi|
    double norm_linear = 0.0;

    double norm_nonlinear = 0.0;
    double bound_nonlinear = 0.0;
    bool nonlinear_bound_asserted = false;  // only for p = 1
    bool nonlinear_bound_holds = false;

    double norm_discrete = 0.0;
    double bound_discrete = 0.0;
    bool discrete_bound_holds = false;

    double max_eps_discrete = 0.0;
    bool eps_discrete_holds = false;
    double worst_eps_nonlinear_excess = 0.0;
    bool eps_nonlinear_holds = false;

    double linear_projection = 0.0;         // ||P U_QFT psi_L||_2
    double linear_projection_target = 0.0;  // (2 + eps)/3
    bool linear_projection_holds = false;

    double success_norm = 0.0;         // ||P chi||_2
    double success_probability = 0.0; // ||P chi||_2^2
    bool theorem_holds = false;

    double triangle_lower_bound = 0.0;  // ||P U psi_L|| - ||psi_N|| - ||psi_D||
    bool triangle_holds = false;

    std::optional<LeakageReport> leakage;

    /// Descriptions of asserted checks that failed. Guarantees conditional on
    /// the five inequalities are only asserted when all of them hold.
    std::vector<std::string> failures() const;
};

/// Runs the pipeline and every analysis on one configuration.
TheoremReport verify_theorem(const FunctionModel &model, std::span<const double> x,
                             const AccuracySpec &spec, const AlgorithmParams &params,
                             const PipelineOptions &options = {});

}  // namespace qgrad
