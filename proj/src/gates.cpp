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

#include <cmath>
#include <numbers>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "state-engine";

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_qubit(unsigned q, unsigned width) {
    if (q >= width) {
        throw InvalidArgument(kModule, "qubit " + std::to_string(q) + " outside register of width " +
                                           std::to_string(width));
    }
}

template <class Pred>
std::size_t count_if_gate(const std::vector<Gate> &gates, Pred pred) {
    std::size_t c = 0;
    for (const Gate &g : gates) c += pred(g) ? 1 : 0;
    return c;
}

}  // namespace

std::size_t GateList::count_hadamards() const {
    return count_if_gate(gates, [](const Gate &g) { return std::holds_alternative<Hadamard>(g); });
}

std::size_t GateList::count_controlled_phases() const {
    return count_if_gate(gates, [](const Gate &g) { return std::holds_alternative<ControlledPhase>(g); });
}

std::size_t GateList::count_swaps() const {
    return count_if_gate(gates, [](const Gate &g) { return std::holds_alternative<Swap>(g); });
}

GateList qft_gate_circuit(unsigned n, QftDirection direction) {
    if (n < 1 || n > kMaxGateQubits) {
        throw GuardError(kModule, "gate-level QFT supports 1 <= n <= " + std::to_string(kMaxGateQubits));
    }
    const double sign = direction == QftDirection::kForward ? 1.0 : -1.0;
    GateList circuit{n, {}};
    // Most significant qubit first; each lower qubit c contributes the phase
    // 2 pi / 2^(target - c + 1) to the target.
    for (unsigned t = n; t-- > 0;) {
        circuit.gates.emplace_back(Hadamard{t});
        for (unsigned c = t; c-- > 0;) {
            const double angle = sign * 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(t - c + 1));
            circuit.gates.emplace_back(ControlledPhase{c, t, angle});
        }
    }
    for (unsigned q = 0; q < n / 2; ++q) circuit.gates.emplace_back(Swap{q, n - 1 - q});
    return circuit;
}

GateList phase_rotation_circuit(const FixedPointFormat &format, double lambda) {
    format.validate();
    GateList circuit{format.bits, {}};
    for (unsigned k = 0; k < format.bits; ++k) {
        // Extended precision keeps the fractional part exact to double
        // resolution even when lambda a1 2^k spans thousands of turns.
        const long double turns =
            static_cast<long double>(lambda) * format.step * std::ldexp(1.0L, static_cast<int>(k));
        const double frac = static_cast<double>(turns - std::floor(turns));
        circuit.gates.emplace_back(PhaseOnBit{k, 2.0 * std::numbers::pi * frac});
    }
    return circuit;
}

void apply_gates(std::span<Complex> state, const GateList &circuit) {
    if (circuit.width > kMaxGateQubits || state.size() != (std::size_t{1} << circuit.width)) {
        throw InvalidArgument(kModule, "state size does not match a register of width " +
                                           std::to_string(circuit.width));
    }
    const std::size_t dim = state.size();
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (const Gate &gate : circuit.gates) {
        std::visit(
            Overloaded{
                [&](const Hadamard &g) {
                    check_qubit(g.target, circuit.width);
                    const std::size_t bit = std::size_t{1} << g.target;
                    for (std::size_t i = 0; i < dim; ++i) {
                        if (i & bit) continue;
                        const Complex a = state[i];
                        const Complex b = state[i | bit];
                        state[i] = (a + b) * inv_sqrt2;
                        state[i | bit] = (a - b) * inv_sqrt2;
                    }
                },
                [&](const ControlledPhase &g) {
                    check_qubit(g.control, circuit.width);
                    check_qubit(g.target, circuit.width);
                    const std::size_t both = (std::size_t{1} << g.control) | (std::size_t{1} << g.target);
                    const Complex phase = std::polar(1.0, g.angle);
                    for (std::size_t i = 0; i < dim; ++i) {
                        if ((i & both) == both) state[i] *= phase;
                    }
                },
                [&](const Swap &g) {
                    check_qubit(g.a, circuit.width);
                    check_qubit(g.b, circuit.width);
                    const std::size_t ba = std::size_t{1} << g.a;
                    const std::size_t bb = std::size_t{1} << g.b;
                    for (std::size_t i = 0; i < dim; ++i) {
                        if ((i & ba) && !(i & bb)) std::swap(state[i], state[(i & ~ba) | bb]);
                    }
                },
                [&](const PhaseOnBit &g) {
                    check_qubit(g.target, circuit.width);
                    const std::size_t bit = std::size_t{1} << g.target;
                    const Complex phase = std::polar(1.0, g.angle);
                    for (std::size_t i = 0; i < dim; ++i) {
                        if (i & bit) state[i] *= phase;
                    }
                },
            },
            gate);
    }
}

Complex range_word_phase(const FixedPointFormat &format, double lambda, RangeWord word) {
    const long double turns =
        static_cast<long double>(lambda) * (format.offset + static_cast<long double>(format.step) * word.value);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(turns - std::floor(turns)));
}

Complex diagonal_phase(const GateList &circuit, std::uint64_t word) {
    Complex phase = 1.0;
    for (const Gate &gate : circuit.gates) {
        if (const auto *g = std::get_if<PhaseOnBit>(&gate)) {
            if ((word >> g->target) & 1) phase *= std::polar(1.0, g->angle);
        } else if (const auto *g = std::get_if<ControlledPhase>(&gate)) {
            if (((word >> g->control) & 1) && ((word >> g->target) & 1)) phase *= std::polar(1.0, g->angle);
        } else {
            throw InvalidArgument(kModule, "diagonal_phase needs a circuit of diagonal gates");
        }
    }
    return phase;
}

}  // namespace qgrad
