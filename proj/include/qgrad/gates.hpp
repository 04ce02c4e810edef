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
 * Gate-level circuits on a small register. Qubit k is bit k of the basis
 * index, so basis state |x> has x = sum_k x_k 2^k.
 */

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "qgrad/fixed_point.hpp"
#include "qgrad/grid_state.hpp"

namespace qgrad {

struct Hadamard {
    unsigned target;
};

/// diag(1, 1, 1, e^{i angle}) on (control, target).
struct ControlledPhase {
    unsigned control;
    unsigned target;
    double angle;
};

struct Swap {
    unsigned a;
    unsigned b;
};

/// diag(1, e^{i angle}) on one qubit.
struct PhaseOnBit {
    unsigned target;
    double angle;
};

using Gate = std::variant<Hadamard, ControlledPhase, Swap, PhaseOnBit>;

struct GateList {
    unsigned width = 0;
    std::vector<Gate> gates;

    std::size_t count_hadamards() const;
    std::size_t count_controlled_phases() const;
    std::size_t count_swaps() const;
};

/// Largest register the gate simulator will materialise.
inline constexpr unsigned kMaxGateQubits = 12;

/// Textbook QFT on n qubits: n Hadamards, n(n-1)/2 controlled phases and
/// floor(n/2) swaps so the circuit matrix equals the dense transform.
GateList qft_gate_circuit(unsigned n, QftDirection direction = QftDirection::kForward);

/// One PhaseOnBit(k, 2 pi lambda a1 2^k) per bit of the range register.
/// Realises e^{2 pi i lambda c_r(r)} up to the global phase e^{2 pi i lambda a0}.
GateList phase_rotation_circuit(const FixedPointFormat &format, double lambda);

/// Applies the gates in order to a dense register of 2^width amplitudes.
void apply_gates(std::span<Complex> state, const GateList &circuit);

/// Phase picked up by basis state |word> under a circuit of diagonal gates.
/// Throws InvalidArgument if the circuit contains a non-diagonal gate.
Complex diagonal_phase(const GateList &circuit, std::uint64_t word);

/// exp(2 pi i lambda (a0 + a1 w)), the direct range-register rotation,
/// evaluated in extended precision.
Complex range_word_phase(const FixedPointFormat &format, double lambda, RangeWord word);

}  // namespace qgrad
