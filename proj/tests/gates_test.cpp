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

#include "qgrad/gates.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qgrad/errors.hpp"
#include "test_oracles.hpp"

namespace qgrad {
namespace {

using testing::naive_grid_dft;
using testing::random_state;
using testing::turns;

TEST(QftCircuit, GateCounts) {
    for (unsigned n = 1; n <= 10; ++n) {
        const GateList c = qft_gate_circuit(n);
        EXPECT_EQ(c.width, n);
        EXPECT_EQ(c.count_hadamards(), n);
        EXPECT_EQ(c.count_controlled_phases(), n * (n - 1) / 2);
        EXPECT_EQ(c.count_swaps(), n / 2);
    }
}

TEST(QftCircuit, BasisColumnsMatchDirectSummation) {
    for (unsigned n = 1; n <= 6; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        for (auto [dir, sign] : {std::pair{QftDirection::kForward, 1.0}, std::pair{QftDirection::kInverse, -1.0}}) {
            const GateList c = qft_gate_circuit(n, dir);
            for (std::uint64_t x = 0; x < size; ++x) {
                std::vector<Complex> e(size, 0.0);
                e[x] = 1.0;
                const std::vector<Complex> expected = naive_grid_dft(e, n, 1, sign);
                apply_gates(e, c);
                EXPECT_LT(max_abs_diff(e, expected), 1e-12) << "n=" << n << " x=" << x;
            }
        }
    }
}

TEST(QftCircuit, RandomStatesAgreeWithDenseTransform) {
    std::mt19937_64 rng(53);
    const GridShape shape{4, 1};
    const GateList c = qft_gate_circuit(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Complex> s = random_state(shape.size(), rng);
        std::vector<Complex> dense = s;
        qft_inplace(dense, shape, QftDirection::kForward);
        apply_gates(s, c);
        EXPECT_LT(max_abs_diff(s, dense), 1e-12);
    }
}

TEST(QftCircuit, WidthGuard) {
    EXPECT_THROW(qft_gate_circuit(0), GuardError);
    EXPECT_THROW(qft_gate_circuit(kMaxGateQubits + 1), GuardError);
}

// Per-bit rotations reproduce exp(2 pi i lambda value) up to the word-independent factor exp(2 pi i lambda a0).
TEST(PhaseRotation, PerBitMatchesDirectUpToGlobalPhase) {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> lam(0.1, 200.0);
    for (int trial = 0; trial < 20; ++trial) {
        const FixedPointFormat f = plan_format(1e-3 * (1 + trial), 1.0 + trial);
        const double lambda = lam(rng);
        const GateList c = phase_rotation_circuit(f, lambda);
        EXPECT_EQ(c.gates.size(), f.bits);
        const Complex global = turns(lambda * f.offset);
        std::uniform_int_distribution<std::uint64_t> word(0, f.max_word());
        for (int i = 0; i < 200; ++i) {
            const RangeWord w{word(rng)};
            const Complex direct = turns(lambda * decode(f, w));
            EXPECT_LT(std::abs(direct - global * diagonal_phase(c, w.value)), 1e-9);
        }
    }
}

}  // namespace
}  // namespace qgrad
