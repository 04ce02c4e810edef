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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "qgrad/errors.hpp"
#include "qgrad/gates.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "state-engine";

struct BlockKey {
    DomainLabel label;
    RangeWord range;

    friend bool operator<(const BlockKey &a, const BlockKey &b) {
        if (a.label < b.label) return true;
        if (b.label < a.label) return false;
        return a.range < b.range;
    }
};


}  // namespace

std::string_view to_string(PhaseVariant variant) {
    return variant == PhaseVariant::kPerBit ? "per-bit" : "direct";
}

PhaseVariant phase_variant_from_string(std::string_view text) {
    if (text == "direct") return PhaseVariant::kDirect;
    if (text == "per-bit" || text == "perbit") return PhaseVariant::kPerBit;
    throw InvalidArgument(kModule, "unknown phase variant '" + std::string(text) + "'");
}

SparseTripartiteState::SparseTripartiteState(GridShape shape, std::vector<Term> terms)
    : shape_(shape), terms_(std::move(terms)) {}

SparseTripartiteState SparseTripartiteState::basis(const GridShape &shape, DomainLabel label,
                                                   RangeWord word, std::uint64_t grid) {
    shape.check(62);
    if (grid >= shape.size()) throw InvalidArgument(kModule, "grid index out of range");
    return SparseTripartiteState(shape, {Term{std::move(label), word, grid, Complex(1.0)}});
}

double SparseTripartiteState::norm() const {
    double s = 0.0;
    for (const Term &t : terms_) s += std::norm(t.amplitude);
    return std::sqrt(s);
}

void SparseTripartiteState::validate() const {
    std::vector<std::tuple<BlockKey, std::uint64_t>> keys;
    keys.reserve(terms_.size());
    for (const Term &t : terms_) {
        if (t.grid >= shape_.size()) throw InvalidArgument(kModule, "term grid index out of range");
        keys.emplace_back(BlockKey{t.label, t.range}, t.grid);
    }
    const auto less = [](const auto &a, const auto &b) {
        if (std::get<0>(a) < std::get<0>(b)) return true;
        if (std::get<0>(b) < std::get<0>(a)) return false;
        return std::get<1>(a) < std::get<1>(b);
    };
    std::sort(keys.begin(), keys.end(), less);
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (!less(keys[i - 1], keys[i])) throw InvalidArgument(kModule, "duplicate basis triple in sparse state");
    }
}

SparseTripartiteState apply_qft(const SparseTripartiteState &s, QftDirection direction,
                                unsigned max_bits) {
    const GridShape &shape = s.shape();
    shape.check(max_bits);
    std::map<BlockKey, std::vector<Complex>> blocks;
    for (const Term &t : s.terms()) {
        auto [it, inserted] = blocks.try_emplace(BlockKey{t.label, t.range});
        if (inserted) it->second.assign(shape.size(), Complex(0.0));
        it->second[t.grid] += t.amplitude;
    }
    std::vector<Term> out;
    out.reserve(blocks.size() * shape.size());
    for (auto &[key, amps] : blocks) {
        qft_inplace(amps, shape, direction);
        for (std::uint64_t g = 0; g < amps.size(); ++g) {
            if (amps[g] != Complex(0.0)) out.push_back(Term{key.label, key.range, g, amps[g]});
        }
    }
    return SparseTripartiteState(shape, std::move(out));
}

SparseTripartiteState apply_u_plus(const SparseTripartiteState &s) {
    std::vector<Term> out = s.terms();
    for (Term &t : out) t.label = shift_label(t.label, t.grid, s.shape());
    return SparseTripartiteState(s.shape(), std::move(out));
}

SparseTripartiteState apply_u_plus_inverse(const SparseTripartiteState &s) {
    std::vector<Term> out = s.terms();
    for (Term &t : out) t.label = unshift_label(t.label, t.grid, s.shape());
    return SparseTripartiteState(s.shape(), std::move(out));
}

SparseTripartiteState apply_u_f(const SparseTripartiteState &s, const FunctionModel &model,
                                const FixedPointFormat &format, const AlgorithmParams &params,
                                OracleCounter &counter) {
    std::vector<Term> out = s.terms();
    for (Term &t : out) {
        t.range = range_add(format, t.range, oracle_value(model, format, params, s.shape(), t.label));
    }
    ++counter.calls;
    return SparseTripartiteState(s.shape(), std::move(out));
}

SparseTripartiteState apply_u_f_inverse(const SparseTripartiteState &s, const FunctionModel &model,
                                        const FixedPointFormat &format, const AlgorithmParams &params,
                                        OracleCounter &counter) {
    std::vector<Term> out = s.terms();
    for (Term &t : out) {
        t.range = range_sub(format, t.range, oracle_value(model, format, params, s.shape(), t.label));
    }
    ++counter.calls;
    return SparseTripartiteState(s.shape(), std::move(out));
}

SparseTripartiteState apply_phase_rotation(const SparseTripartiteState &s, double lambda,
                                           const FixedPointFormat &format, PhaseVariant variant) {
    std::vector<Term> out = s.terms();
    if (variant == PhaseVariant::kDirect) {
        for (Term &t : out) t.amplitude *= range_word_phase(format, lambda, t.range);
    } else {
        const GateList circuit = phase_rotation_circuit(format, lambda);
        for (Term &t : out) t.amplitude *= diagonal_phase(circuit, t.range.value);
    }
    return SparseTripartiteState(s.shape(), std::move(out));
}

GridState collapse_to_grid(const SparseTripartiteState &s, const DomainLabel &expected_label,
                           RangeWord expected_word, unsigned max_bits) {
    GridState grid = GridState::zeros(s.shape(), max_bits);
    for (const Term &t : s.terms()) {
        if (!(t.label == expected_label) || t.range != expected_word) {
            std::ostringstream os;
            os << "term at grid index " << t.grid << " has "
               << (t.label.is_base() ? std::string("BASE") : "SHIFTED(" + std::to_string(*t.label.shift()) + ")")
               << " label and range word " << t.range.value << " with amplitude magnitude "
               << std::abs(t.amplitude)
               << "; domain/range registers were not returned to their initial state";
            throw ResidualEntanglementError(kModule, os.str());
        }
        grid.amplitudes[t.grid] += t.amplitude;
    }
    return grid;
}

}  // namespace qgrad
