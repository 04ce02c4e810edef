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
 * Fixed-point range register: N-bit words w decoding to a0 + a1 * w, with
 * a group operation (modular addition or xor) so that function evaluation
 * into the register is reversible.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

namespace qgrad {

enum class GroupMode { kModularAdd, kXor };

std::string_view to_string(GroupMode mode);
GroupMode group_mode_from_string(std::string_view text);

/// Basis element of the range register. Only the low `bits` of `value` are
/// meaningful for a given format.
struct RangeWord {
    std::uint64_t value = 0;

    friend auto operator<=>(const RangeWord &, const RangeWord &) = default;
};

/// Largest supported register width. Keeps 2^N exactly representable in a
/// double and leaves headroom in uint64 arithmetic.
inline constexpr unsigned kMaxRangeBits = 62;

struct FixedPointFormat {
    unsigned bits = 1;
    double offset = 0.0;  // a0
    double step = 1.0;    // a1
    GroupMode group_mode = GroupMode::kModularAdd;

    std::uint64_t mask() const { return (std::uint64_t{1} << bits) - 1; }
    std::uint64_t max_word() const { return mask(); }

    /// Largest representable value a0 + a1 (2^N - 1).
    double max_value() const;

    /// Validates N, a1 > 0 and finiteness; throws InvalidArgument / GuardError.
    void validate() const;
};

/// Chooses the register for precision `nu` covering [-range_bound, range_bound]:
/// a1 = nu, N the smallest width with a1 (2^N - 1) >= 2 range_bound, and
/// a0 = -a1 2^(N-1).
FixedPointFormat plan_format(double nu, double range_bound,
                             GroupMode mode = GroupMode::kModularAdd);

/// c_r: a0 + a1 * w.
double decode(const FixedPointFormat &format, RangeWord word);

/// Nearest representable word, ties to the even integer. Values within half
/// a step outside [a0, max_value()] round onto the end words; anything
/// further out raises RangeOverflowError.
RangeWord quantize(const FixedPointFormat &format, double value);

RangeWord range_add(const FixedPointFormat &format, RangeWord lhs, RangeWord rhs);
RangeWord range_sub(const FixedPointFormat &format, RangeWord lhs, RangeWord rhs);

}  // namespace qgrad
