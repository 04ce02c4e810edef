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

#include "qgrad/fixed_point.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "oracle-model";

void check_word(const FixedPointFormat &format, RangeWord word) {
    if (word.value > format.mask()) {
        std::ostringstream os;
        os << "range word " << word.value << " does not fit in " << format.bits << " bits";
        throw InvalidArgument(kModule, os.str());
    }
}

// Round half to even without depending on the floating-point environment.
double round_half_even(double t) {
    const double lower = std::floor(t);
    const double frac = t - lower;
    if (frac < 0.5) return lower;
    if (frac > 0.5) return lower + 1.0;
    return std::fmod(lower, 2.0) == 0.0 ? lower : lower + 1.0;
}

}  // namespace

std::string_view to_string(GroupMode mode) {
    return mode == GroupMode::kXor ? "xor" : "modular";
}

GroupMode group_mode_from_string(std::string_view text) {
    if (text == "modular" || text == "modular-add") return GroupMode::kModularAdd;
    if (text == "xor") return GroupMode::kXor;
    throw InvalidArgument(kModule, "unknown group mode '" + std::string(text) + "'");
}

double FixedPointFormat::max_value() const {
    return offset + step * static_cast<double>(max_word());
}

void FixedPointFormat::validate() const {
    if (bits == 0) throw InvalidArgument(kModule, "range register needs at least one bit");
    if (bits > kMaxRangeBits) {
        throw GuardError(kModule, "range register width " + std::to_string(bits) +
                                      " exceeds " + std::to_string(kMaxRangeBits) + " bits");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidArgument(kModule, "fixed-point step a1 must be finite and positive");
    }
    if (!std::isfinite(offset)) throw InvalidArgument(kModule, "fixed-point offset a0 must be finite");
}

FixedPointFormat plan_format(double nu, double range_bound, GroupMode mode) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw InvalidArgument(kModule, "precision nu must be finite and positive");
    }
    if (!(range_bound > 0.0) || !std::isfinite(range_bound)) {
        throw InvalidArgument(kModule, "range bound must be finite and positive");
    }
    FixedPointFormat format;
    format.step = nu;
    format.group_mode = mode;
    const double span = 2.0 * range_bound;
    unsigned bits = 1;
    while (nu * (std::ldexp(1.0, static_cast<int>(bits)) - 1.0) < span) {
        if (++bits > kMaxRangeBits) {
            std::ostringstream os;
            os << "covering |f| <= " << range_bound << " at precision " << nu << " needs more than "
               << kMaxRangeBits << " bits";
            throw GuardError(kModule, os.str());
        }
    }
    format.bits = bits;
    format.offset = -nu * std::ldexp(1.0, static_cast<int>(bits) - 1);
    return format;
}

double decode(const FixedPointFormat &format, RangeWord word) {
    check_word(format, word);
    return format.offset + format.step * static_cast<double>(word.value);
}

RangeWord quantize(const FixedPointFormat &format, double value) {
    if (!std::isfinite(value)) throw RangeOverflowError(kModule, "cannot quantize a non-finite value");
    // Split the offset division out so that a0 = -a1 2^(N-1) contributes an
    // exact integer and ties are detected exactly.
    const double t = value / format.step - format.offset / format.step;
    const double k = round_half_even(t);
    if (k < 0.0 || k > static_cast<double>(format.max_word())) {
        std::ostringstream os;
        os.precision(17);
        os << "value " << value << " outside register range [" << format.offset << ", "
           << format.max_value() << "]; the range bound used for planning was too small";
        throw RangeOverflowError(kModule, os.str());
    }
    return RangeWord{static_cast<std::uint64_t>(k)};
}

RangeWord range_add(const FixedPointFormat &format, RangeWord lhs, RangeWord rhs) {
    check_word(format, lhs);
    check_word(format, rhs);
    if (format.group_mode == GroupMode::kXor) return RangeWord{lhs.value ^ rhs.value};
    return RangeWord{(lhs.value + rhs.value) & format.mask()};
}

RangeWord range_sub(const FixedPointFormat &format, RangeWord lhs, RangeWord rhs) {
    check_word(format, lhs);
    check_word(format, rhs);
    if (format.group_mode == GroupMode::kXor) return RangeWord{lhs.value ^ rhs.value};
    return RangeWord{(lhs.value - rhs.value) & format.mask()};
}

}  // namespace qgrad
