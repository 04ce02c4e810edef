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

#include "qgrad/sparse_state.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qgrad/errors.hpp"
#include "test_oracles.hpp"

namespace qgrad {
namespace {

const GridShape kShape{2, 1};
const AlgorithmParams kParams{2, 0.01, 1.0, 0.5};

FunctionModel identity() { return make_linear({1.0}, 0.0, {{0.0}, {1.0}}); }

// Uniform superposition over the grid with BASE label and range word w.
SparseTripartiteState uniform(const DomainLabel &d, RangeWord w, const GridShape &shape = kShape) {
    std::vector<Term> terms;
    const double a = 1.0 / std::sqrt(static_cast<double>(shape.size()));
    for (std::uint64_t g = 0; g < shape.size(); ++g) terms.push_back(Term{d, w, g, Complex(a)});
    return SparseTripartiteState(shape, std::move(terms));
}

TEST(UPlus, ShiftsEveryTermByItsGridIndex) {
    const DomainLabel base = DomainLabel::base({0.0});
    const SparseTripartiteState s = apply_u_plus(uniform(base, {0}));
    ASSERT_EQ(s.size(), 4u);
    for (const Term &t : s.terms()) {
        ASSERT_FALSE(t.label.is_base());
        EXPECT_EQ(*t.label.shift(), t.grid);
    }
    const SparseTripartiteState back = apply_u_plus_inverse(s);
    for (const Term &t : back.terms()) EXPECT_TRUE(t.label == base);
}

TEST(UF, AddsQuantizedValueAndCountsCalls) {
    const FixedPointFormat format = plan_format(0.01, 1.27);
    const DomainLabel base = DomainLabel::base({0.0});
    OracleCounter counter;
    const SparseTripartiteState s = SparseTripartiteState::basis(kShape, base.shifted(3), {0}, 3);
    const SparseTripartiteState out = apply_u_f(s, identity(), format, kParams, counter);
    EXPECT_EQ(counter.calls, 1u);
    EXPECT_EQ(out.terms()[0].range, quantize(format, 0.75));
    const SparseTripartiteState back = apply_u_f_inverse(out, identity(), format, kParams, counter);
    EXPECT_EQ(counter.calls, 2u);
    EXPECT_EQ(back.terms()[0].range.value, 0u);
}

TEST(UF, XorModeIsSelfInverse) {
    FixedPointFormat format = plan_format(0.01, 1.27, GroupMode::kXor);
    OracleCounter counter;
    const SparseTripartiteState s = apply_u_plus(uniform(DomainLabel::base({0.0}), {17}));
    const SparseTripartiteState twice =
        apply_u_f(apply_u_f(s, identity(), format, kParams, counter), identity(), format, kParams, counter);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(twice.terms()[i].range, s.terms()[i].range);
    EXPECT_EQ(counter.calls, 2u);
}

TEST(Collapse, RejectsResidualEntanglement) {
    const DomainLabel base = DomainLabel::base({0.0});
    const SparseTripartiteState shifted = apply_u_plus(uniform(base, {0}));
    EXPECT_THROW(collapse_to_grid(shifted, base, {0}), ResidualEntanglementError);
    EXPECT_THROW(collapse_to_grid(uniform(base, {5}), base, {0}), ResidualEntanglementError);
    const GridState g = collapse_to_grid(uniform(base, {0}), base, {0});
    EXPECT_NEAR(g.norm(), 1.0, 1e-15);
}

TEST(SparseState, ValidateRejectsDuplicates) {
    const DomainLabel base = DomainLabel::base({0.0});
    SparseTripartiteState dup(kShape, {Term{base, {0}, 1, Complex(0.5)}, Term{base, {0}, 1, Complex(0.5)}});
    EXPECT_THROW(dup.validate(), InvalidArgument);
    EXPECT_NO_THROW(uniform(base, {0}).validate());
}

// Every operator preserves the norm, and the non-transform operators permute
// the amplitude multiset.
TEST(SparseState, OperatorsPreserveNormAndAmplitudes) {
    std::mt19937_64 rng(61);
    const GridShape shape{3, 2};
    const AlgorithmParams params{3, 1e-3, 7.0, 0.05};
    Eigen::MatrixXd h(2, 2);
    h << 1.0, 0.2, 0.2, 0.5;
    const FunctionModel f = make_quadratic({0.3, -0.1}, h, 0.0, {{0.0, 0.0}, {1.0, 1.0}});
    const FixedPointFormat format = plan_format(params.nu, 2.0);
    const std::vector<Complex> amps = testing::random_state(shape.size(), rng);
    std::vector<Term> terms;
    const DomainLabel base = DomainLabel::base({0.1, -0.2});
    for (std::uint64_t g = 0; g < shape.size(); ++g) terms.push_back(Term{base, {0}, g, amps[g]});
    SparseTripartiteState s(shape, terms);
    OracleCounter counter;
    const auto sorted_mags = [](const SparseTripartiteState &st) {
        std::vector<double> v;
        for (const Term &t : st.terms()) v.push_back(std::abs(t.amplitude));
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto sorted_amps = [](const SparseTripartiteState &st) {
        std::vector<std::pair<double, double>> v;
        for (const Term &t : st.terms()) v.emplace_back(t.amplitude.real(), t.amplitude.imag());
        std::sort(v.begin(), v.end());
        return v;
    };
    const SparseTripartiteState a = apply_u_plus(s);
    EXPECT_EQ(sorted_amps(a), sorted_amps(s));
    const SparseTripartiteState b = apply_u_f(a, f, format, params, counter);
    EXPECT_EQ(sorted_amps(b), sorted_amps(a));
    EXPECT_NO_THROW(b.validate());
    for (PhaseVariant v : {PhaseVariant::kDirect, PhaseVariant::kPerBit}) {
        const SparseTripartiteState c = apply_phase_rotation(b, params.lambda, format, v);
        const std::vector<double> after = sorted_mags(c), before = sorted_mags(b);
        ASSERT_EQ(after.size(), before.size());
        for (std::size_t i = 0; i < after.size(); ++i) EXPECT_NEAR(after[i], before[i], 1e-15);
        EXPECT_NEAR(c.norm(), 1.0, 1e-12);
    }
    const SparseTripartiteState q = apply_qft(s, QftDirection::kForward);
    EXPECT_NEAR(q.norm(), 1.0, 1e-12);
    EXPECT_THROW(apply_qft(s, QftDirection::kForward, 5), GuardError);
}

TEST(PhaseVariant, Names) {
    EXPECT_EQ(phase_variant_from_string("per-bit"), PhaseVariant::kPerBit);
    EXPECT_EQ(to_string(PhaseVariant::kDirect), "direct");
    EXPECT_THROW(phase_variant_from_string("other"), InvalidArgument);
}

}  // namespace
}  // namespace qgrad
