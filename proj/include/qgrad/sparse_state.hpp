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
 * Exact simulation of the domain (x) range (x) grid system as a list of
 * basis terms. Every operator is a value-to-value map; none mutates its
 * input.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "qgrad/fixed_point.hpp"
#include "qgrad/function_model.hpp"
#include "qgrad/grid_state.hpp"
#include "qgrad/oracle.hpp"
#include "qgrad/params.hpp"

namespace qgrad {

struct Term {
    DomainLabel label;
    RangeWord range;
    std::uint64_t grid = 0;
    Complex amplitude;
};

enum class PhaseVariant { kDirect, kPerBit };

std::string_view to_string(PhaseVariant variant);
PhaseVariant phase_variant_from_string(std::string_view text);

/// Counts oracle invocations. One operator application is one call, however
/// many basis terms it acts on.
struct OracleCounter {
    std::uint64_t calls = 0;
};

class SparseTripartiteState {
   public:
    SparseTripartiteState(GridShape shape, std::vector<Term> terms);

    /// |label> (x) |word> (x) |grid>.
    static SparseTripartiteState basis(const GridShape &shape, DomainLabel label, RangeWord word,
                                       std::uint64_t grid);

    const GridShape &shape() const { return shape_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    double norm() const;

    /// Throws InvalidArgument on duplicate basis triples or grid indices out of range.
    void validate() const;

   private:
    GridShape shape_;
    std::vector<Term> terms_;
};

/// U_QFT on the grid register, acting independently on each (label, range)
/// block. Output terms are ordered by block, then grid index.
SparseTripartiteState apply_qft(const SparseTripartiteState &s, QftDirection direction,
                                unsigned max_bits = kDefaultMaxGridBits);

/// U_+ : label -> c_p(label, g).
SparseTripartiteState apply_u_plus(const SparseTripartiteState &s);
/// U_+^{-1} : label -> c_p^{-1}(label, g).
SparseTripartiteState apply_u_plus_inverse(const SparseTripartiteState &s);

/// U_f : r -> r + c_f(label). Increments `counter` by one.
SparseTripartiteState apply_u_f(const SparseTripartiteState &s, const FunctionModel &model,
                                const FixedPointFormat &format, const AlgorithmParams &params,
                                OracleCounter &counter);
/// U_f^{-1} : r -> r - c_f(label). Increments `counter` by one.
SparseTripartiteState apply_u_f_inverse(const SparseTripartiteState &s, const FunctionModel &model,
                                        const FixedPointFormat &format, const AlgorithmParams &params,
                                        OracleCounter &counter);

/// U_R. kDirect multiplies by e^{2 pi i lambda c_r(r)}; kPerBit applies the
/// per-bit phase gates, which drop the global factor e^{2 pi i lambda a0}.
SparseTripartiteState apply_phase_rotation(const SparseTripartiteState &s, double lambda,
                                           const FixedPointFormat &format, PhaseVariant variant);

/// Checks that every term has the expected label and range word and returns
/// the grid amplitudes. Throws ResidualEntanglementError otherwise.
GridState collapse_to_grid(const SparseTripartiteState &s, const DomainLabel &expected_label,
                           RangeWord expected_word, unsigned max_bits = kDefaultMaxGridBits);

}  // namespace qgrad
