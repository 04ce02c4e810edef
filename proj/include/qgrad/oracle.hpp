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
 * Domain register and function oracle.
 *
 * The domain basis is {BASE} u {SHIFTED(g)} over a fixed base point x. The
 * shift map c_p(., g) swaps BASE and SHIFTED(g) and fixes every other label,
 * so it is an involution for each g and c_p(c_d(x), g) represents exactly
 * x + mu (g - g0).
 */

#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "qgrad/fixed_point.hpp"
#include "qgrad/function_model.hpp"
#include "qgrad/params.hpp"

namespace qgrad {

class DomainLabel {
   public:
    /// c_d(x).
    static DomainLabel base(Point x);

    const Point &base_point() const { return *base_; }
    bool is_base() const { return !shift_.has_value(); }
    /// Flat grid index of a SHIFTED label.
    const std::optional<std::uint64_t> &shift() const { return shift_; }

    DomainLabel shifted(std::uint64_t flat) const { return DomainLabel(base_, flat); }
    DomainLabel unshifted() const { return DomainLabel(base_, std::nullopt); }

    /// x for BASE, x + mu (g - g0) for SHIFTED(g).
    Point represented_point(const AlgorithmParams &params, const GridShape &shape) const;

    friend bool operator==(const DomainLabel &a, const DomainLabel &b);
    /// Strict weak order by base point, then BASE before SHIFTED, then index.
    friend bool operator<(const DomainLabel &a, const DomainLabel &b);

   private:
    DomainLabel(std::shared_ptr<const Point> base, std::optional<std::uint64_t> shift)
        : base_(std::move(base)), shift_(shift) {}

    std::shared_ptr<const Point> base_;
    std::optional<std::uint64_t> shift_;
};

/// x + mu (g - g0) with g0 = 2^(n-1) - 1/2 on every axis.
Point grid_point(std::span<const double> x, const GridIndex &g, const AlgorithmParams &params);

/// c_p(d, g); `flat` must be a valid index of `shape`.
DomainLabel shift_label(const DomainLabel &d, std::uint64_t flat, const GridShape &shape);
/// c_p^{-1}(d, g). Equal to shift_label because the swap is an involution.
DomainLabel unshift_label(const DomainLabel &d, std::uint64_t flat, const GridShape &shape);

/// c_f(d) = quantize(f(pi(d))). Throws DomainError / RangeOverflowError.
RangeWord oracle_value(const FunctionModel &model, const FixedPointFormat &format,
                       const AlgorithmParams &params, const GridShape &shape, const DomainLabel &d);

/// Upper bound on |f| over x and every grid point, used to size the range
/// register. Classical bookkeeping, not an oracle call.
double grid_range_bound(const FunctionModel &model, std::span<const double> x,
                        const AlgorithmParams &params, const GridShape &shape);

}  // namespace qgrad
