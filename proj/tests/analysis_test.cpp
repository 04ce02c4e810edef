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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qgrad/errors.hpp"
#include "qgrad/gradient.hpp"

namespace qgrad {
namespace {

constexpr double kPi = std::numbers::pi;

const AccuracySpec kSpec{1.0, 0.5, 0.5};

FunctionModel unit_quadratic() {
    Eigen::MatrixXd h(1, 1);
    h << 1.0;
    return make_quadratic({0.0}, h, 0.0, {{0.0}, {1.0}});
}

// Frozen from an independent high-precision evaluation of the closed forms.
TEST(SelectParameters, WorkedExample) {
    const AlgorithmParams p = select_parameters(kSpec, 1.0, 1.0, 1);
    EXPECT_EQ(p.n, 4u);
    EXPECT_NEAR(p.lambda, 59.945085704880865, 1e-12);
    EXPECT_NEAR(p.mu, 0.0055606448704466958, 1e-17);
    EXPECT_NEAR(p.nu, 0.00044250205895509179, 1e-18);
    EXPECT_NEAR(p.mu, 1.0 / (2.0 * p.lambda * 1.5), 1e-18);
}

TEST(SelectParameters, GridWidthGrowsWithDimension) {
    const unsigned expected[] = {4, 5, 6, 6};
    for (unsigned p = 1; p <= 4; ++p) {
        EXPECT_EQ(select_parameters(kSpec, 1.0, 0.0, p, 62).n, expected[p - 1]) << "p=" << p;
    }
}

TEST(SelectParameters, ResultSatisfiesAllInequalities) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 200; ++trial) {
        const AccuracySpec spec{4 * u(rng), 2 * u(rng), u(rng)};
        const double L = 3 * u(rng), M = 3 * u(rng);
        const unsigned p = 1 + trial % 4;
        const AlgorithmParams params = select_parameters(spec, L, M, p, 62);
        const InequalityReport r = check_inequalities(params, spec, L, M, p);
        for (const InequalityCheck &c : r.checks) {
            EXPECT_TRUE(c.holds) << c.name << " lhs=" << c.lhs << " rhs=" << c.rhs << " trial=" << trial;
        }
    }
}

TEST(SelectParameters, GuardOnLargeGrids) {
    EXPECT_THROW(select_parameters(AccuracySpec{1.0, 1e-6, 0.5}, 1.0, 1.0, 4), GuardError);
    EXPECT_THROW(select_parameters(AccuracySpec{1.0, 0.5, 1.5}, 1.0, 1.0, 1), InvalidArgument);
}

TEST(Inequalities, WorkedExampleHoldsWithSlack) {
    const AlgorithmParams p = select_parameters(kSpec, 1.0, 1.0, 1);
    const InequalityReport r = check_inequalities(p, kSpec, 1.0, 1.0, 1);
    EXPECT_TRUE(r.all_hold());
    for (const InequalityCheck &c : r.checks) EXPECT_GE(c.slack, 0.0) << c.name;
    EXPECT_NEAR(r.by_name("precision").lhs, 1.0 / 6.0, 1e-15);
}

TEST(Inequalities, Violations) {
    AlgorithmParams p = select_parameters(kSpec, 1.0, 1.0, 1);
    p.mu *= 2.0;
    EXPECT_FALSE(check_inequalities(p, kSpec, 1.0, 1.0, 1).by_name("bandwidth").holds);
    const AlgorithmParams base = select_parameters(kSpec, 1.0, 1.0, 1);
    EXPECT_FALSE(check_inequalities(base, AccuracySpec{0.01, 0.5, 0.5}, 1.0, 1.0, 1).by_name("margin").holds);
    AlgorithmParams coarse = base;
    coarse.nu *= 1000.0;
    const InequalityReport r = check_inequalities(coarse, kSpec, 1.0, 1.0, 1);
    EXPECT_FALSE(r.by_name("precision").holds);
    EXPECT_LT(r.by_name("precision").slack, 0.0);
    EXPECT_FALSE(r.all_hold());
    EXPECT_THROW(r.by_name("unknown"), InvalidArgument);
}

TEST(Inequalities, LinearModelHasFullNonlinearitySlack) {
    const AlgorithmParams p = select_parameters(kSpec, 1.0, 0.0, 1);
    const InequalityCheck &c = check_inequalities(p, kSpec, 1.0, 0.0, 1).by_name("nonlinearity");
    EXPECT_EQ(c.lhs, 0.0);
    EXPECT_DOUBLE_EQ(c.slack, 0.5 / 3.0);
}

// Brute-force fourth moment of the centred grid against the constant in the
// nonlinear bound: sqrt(2^-n sum (h - g0)^4) <= 4^(n-1)/sqrt(5).
TEST(NonlinearBound, FourthMomentConstant) {
    for (unsigned n = 1; n <= 20; ++n) {
        const double size = std::ldexp(1.0, static_cast<int>(n));
        const double g0 = size / 2 - 0.5;
        long double sum = 0.0L;
        for (std::uint64_t h = 0; h < static_cast<std::uint64_t>(size); ++h) {
            const long double o = static_cast<long double>(h) - g0;
            sum += o * o * o * o;
        }
        const long double closed = size * (std::pow(16.0L, n) / 80 - std::pow(4.0L, n) / 24 + 7.0L / 240);
        EXPECT_NEAR(static_cast<double>(sum / closed), 1.0, 1e-15) << "n=" << n;
        EXPECT_LE(std::sqrt(static_cast<double>(sum) / size), std::pow(4.0, n - 1) / std::sqrt(5.0)) << "n=" << n;
        const AlgorithmParams params{n, 1e-3, 2.0, 0.01};
        EXPECT_DOUBLE_EQ(nonlinear_norm_bound(params, 3.0),
                         std::pow(4.0, n - 1) * kPi * 2.0 * 3.0 * 1e-4 / std::sqrt(5.0));
    }
    EXPECT_NEAR(discretization_norm_bound(AlgorithmParams{3, 1e-3, 2.0, 0.01}), 2 * kPi * 2.0 * 1e-3, 1e-16);
}

TEST(Decomposition, DyadicLinearHasNoErrorTerms) {
    const FunctionModel f = make_linear({-0.5, 1.0}, 0.25, {{0.0, 0.0}, {1.0, 1.0}});
    const AlgorithmParams params{3, std::ldexp(1.0, -12), 3.0, 0.125};
    const Point x{0.25, -0.5};
    const FixedPointFormat format = plan_pipeline_format(f, x, params, GroupMode::kModularAdd);
    const ErrorDecomposition d = decompose_state(f, x, params, format);
    EXPECT_EQ(d.norm_nonlinear(), 0.0);
    EXPECT_EQ(d.norm_discrete(), 0.0);
    EXPECT_EQ(d.reconstruction_error(), 0.0);
    EXPECT_NEAR(d.norm_linear(), 1.0, 1e-15);
}

TEST(Decomposition, BoundsOnQuadratic) {
    const FunctionModel f = unit_quadratic();
    for (double nu : {1e-3, 1e-6, 1e-12}) {
        const AlgorithmParams params{4, nu, 59.9, 0.0055};
        const FixedPointFormat format = plan_pipeline_format(f, Point{0.0}, params, GroupMode::kModularAdd);
        const ErrorDecomposition d = decompose_state(f, Point{0.0}, params, format);
        EXPECT_LT(d.reconstruction_error(), 1e-12);
        EXPECT_LE(d.norm_discrete(), discretization_norm_bound(params) + 1e-12);
        EXPECT_LE(d.norm_nonlinear(), nonlinear_norm_bound(params, 1.0) + 1e-12);
        EXPECT_LE(d.max_abs_eps_discrete(), format.step / 2 * (1 + 1e-9));
        EXPECT_LE(d.worst_eps_nonlinear_excess(), 0.0);
    }
}

TEST(Projection, StrictWindow) {
    const AlgorithmParams params{3, 1e-3, 1.0, 0.125};  // resolution 1
    const GridShape shape{3, 1};
    const Point zero{0.0};
    const GridState at_one = GridState::basis(shape, 1);  // decodes to -1
    EXPECT_EQ(success_projection(at_one.amplitudes, shape, zero, 1.0, params).norm, 0.0);
    EXPECT_NEAR(success_projection(at_one.amplitudes, shape, zero, 1.0001, params).norm, 1.0, 1e-15);
    const auto w = projection_windows(zero, 1.5, params);
    ASSERT_EQ(w.size(), 1u);
    const std::vector<bool> expected{true, true, false, false, false, false, false, true};
    EXPECT_EQ(w[0], expected);
}

TEST(Leakage, HalfStepOffsetWithinCosecantBound) {
    for (unsigned n = 1; n <= 8; ++n) {
        // Resolution 1, true gradient exactly half-way between two outcomes.
        const double scale = std::ldexp(1.0, static_cast<int>(n));
        const AlgorithmParams params{n, 1e-9, 1.0, 1.0 / scale};
        const double delta = 1.0;
        const double slope = 0.5;
        if (1.0 / (2.0 * params.lambda * params.mu) < slope + delta) continue;
        const FunctionModel f = make_linear({slope}, 0.0, {{0.0}, {1.0}});
        const LeakageReport r = leakage_check(f, Point{0.0}, params, delta);
        EXPECT_NEAR(r.bound, std::abs(1.0 / std::sin(kPi * params.lambda * params.mu * delta)) / scale, 1e-15);
        EXPECT_TRUE(r.bound_holds) << "n=" << n;
        EXPECT_LE(r.max_out_of_window, r.bound + 1e-12);
        EXPECT_LT(r.factorization_error, 1e-10);
    }
}

TEST(Leakage, RequiresLinearModelAndBandwidth) {
    EXPECT_THROW(leakage_check(unit_quadratic(), Point{0.0}, AlgorithmParams{3, 1e-6, 1.0, 0.1}, 0.5),
                 InvalidArgument);
    const FunctionModel f = make_linear({0.5}, 0.0, {{0.0}, {1.0}});
    EXPECT_THROW(leakage_check(f, Point{0.0}, AlgorithmParams{3, 1e-6, 10.0, 0.1}, 0.5), InvalidArgument);
}

TEST(ClassicalBaseline, CallCountsAndAccuracy) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(4, 4);
    for (unsigned p = 1; p <= 4; ++p) {
        const Eigen::MatrixXd hp = h.topLeftCorner(p, p);
        const FunctionModel f = make_quadratic(Point(p, 0.3), hp, 0.0, {Point(p, 0.0), Point(p, 1.0)});
        const Point x(p, 0.2);
        const double step = 1e-4;
        const BaselineResult fwd = classical_baseline(f, x, step);
        EXPECT_EQ(fwd.calls, p + 1u);
        const BaselineResult ctr = classical_baseline(f, x, step, true);
        EXPECT_EQ(ctr.calls, 2u * p);
        const Point g = f.gradient(x);
        for (unsigned m = 0; m < p; ++m) {
            EXPECT_LE(std::abs(fwd.gradient[m] - g[m]), f.hess_bound() * step / 2 + 1e-10);
            EXPECT_NEAR(ctr.gradient[m], g[m], 1e-10);
        }
    }
}

TEST(Theorem, WorkedExampleEndToEnd) {
    const FunctionModel f = unit_quadratic();
    const AlgorithmParams params = select_parameters(kSpec, f.grad_bound(), f.hess_bound(), 1);
    const TheoremReport r = verify_theorem(f, Point{0.0}, kSpec, params);
    EXPECT_TRUE(r.failures().empty());
    EXPECT_TRUE(r.inequalities.all_hold());
    EXPECT_TRUE(r.theorem_holds);
    EXPECT_GE(r.success_norm, 0.5);
    EXPECT_EQ(r.oracle_calls, 2u);
    EXPECT_LT(r.pipeline_vs_direct, 1e-12);
    EXPECT_TRUE(r.nonlinear_bound_asserted);
    EXPECT_TRUE(r.nonlinear_bound_holds);
    EXPECT_TRUE(r.discrete_bound_holds);
    EXPECT_FALSE(r.leakage.has_value());
}

TEST(Theorem, CoarseRangeRegisterIsReported) {
    const FunctionModel f = unit_quadratic();
    AlgorithmParams params = select_parameters(kSpec, f.grad_bound(), f.hess_bound(), 1);
    params.nu *= 1000.0;
    const TheoremReport r = verify_theorem(f, Point{0.0}, kSpec, params);
    EXPECT_FALSE(r.inequalities.by_name("precision").holds);
    // Conditional conclusions are not asserted, the unconditional bounds still are.
    EXPECT_TRUE(r.discrete_bound_holds);
    EXPECT_TRUE(r.failures().empty());
}

}  // namespace
}  // namespace qgrad
