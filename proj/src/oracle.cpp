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

#include "qgrad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

DomainLabel DomainLabel::base(Point x) {
    if (x.empty()) throw InvalidArgument("oracle-model", "base point must have dimension >= 1");
    return DomainLabel(std::make_shared<const Point>(std::move(x)), std::nullopt);
}

Point DomainLabel::represented_point(const AlgorithmParams &params, const GridShape &shape) const {
    if (!shift_) return *base_;
    return grid_point(*base_, shape.decode(*shift_), params);
}

bool operator==(const DomainLabel &a, const DomainLabel &b) {
    return a.shift_ == b.shift_ && (a.base_ == b.base_ || *a.base_ == *b.base_);
}

bool operator<(const DomainLabel &a, const DomainLabel &b) {
    if (a.base_ != b.base_ && *a.base_ != *b.base_) return *a.base_ < *b.base_;
    return a.shift_ < b.shift_;
}

Point grid_point(std::span<const double> x, const GridIndex &g, const AlgorithmParams &params) {
    if (g.size() != x.size()) {
        throw InvalidArgument("oracle-model", "grid index and base point dimensions differ");
    }
    const double g0 = params.grid_center();
    Point out(x.begin(), x.end());
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] += params.mu * (static_cast<double>(g[m]) - g0);
    }
    return out;
}

DomainLabel shift_label(const DomainLabel &d, std::uint64_t flat, const GridShape &shape) {
    if (flat >= shape.size()) {
        throw InvalidArgument("oracle-model", "grid index " + std::to_string(flat) + " out of range");
    }
    if (d.base_point().size() != shape.p) {
        throw InvalidArgument("oracle-model", "label dimension does not match the grid");
    }
    if (d.is_base()) return d.shifted(flat);
    if (*d.shift() == flat) return d.unshifted();
    return d;
}

DomainLabel unshift_label(const DomainLabel &d, std::uint64_t flat, const GridShape &shape) {
    return shift_label(d, flat, shape);
}

RangeWord oracle_value(const FunctionModel &model, const FixedPointFormat &format,
                       const AlgorithmParams &params, const GridShape &shape, const DomainLabel &d) {
    const Point point = d.represented_point(params, shape);
    return quantize(format, model.evaluate(point));
}

double grid_range_bound(const FunctionModel &model, std::span<const double> x,
                        const AlgorithmParams &params, const GridShape &shape) {
    double bound = std::abs(model.evaluate(x));
    for (std::uint64_t flat = 0; flat < shape.size(); ++flat) {
        bound = std::max(bound, std::abs(model.evaluate(grid_point(x, shape.decode(flat), params))));
    }
    return bound;
}

}  // namespace qgrad
