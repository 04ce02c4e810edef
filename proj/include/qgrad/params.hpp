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

#pragma once

#include <cstdint>
#include <vector>

namespace qgrad {

/// Per-axis grid coordinates (g_1, ..., g_p), each in [0, 2^n).
using GridIndex = std::vector<std::uint32_t>;

/// Default ceiling on p * n for anything that materialises 2^(pn) amplitudes.
inline constexpr unsigned kDefaultMaxGridBits = 26;

/// Shape of the grid register {0, ..., 2^n - 1}^p. Flat indices are row-major:
/// g_1 is the most significant digit, g_p the least.
struct GridShape {
    unsigned n = 1;
    unsigned p = 1;

    std::uint64_t axis_size() const { return std::uint64_t{1} << n; }
    std::uint64_t size() const { return std::uint64_t{1} << (n * p); }
    unsigned total_bits() const { return n * p; }

    std::uint64_t encode(const GridIndex &g) const;
    GridIndex decode(std::uint64_t flat) const;
    std::uint32_t component(std::uint64_t flat, unsigned axis) const;

    /// Throws GuardError if p * n exceeds `max_bits`, InvalidArgument on n or p = 0.
    void check(unsigned max_bits = kDefaultMaxGridBits) const;

    friend bool operator==(const GridShape &, const GridShape &) = default;
};

/// Parameters (n, nu, lambda, mu) of the estimator.
struct AlgorithmParams {
    unsigned n = 1;
    double nu = 1.0;
    double lambda = 1.0;
    double mu = 1.0;

    /// Throws InvalidArgument unless n >= 1 and nu, lambda, mu are finite and positive.
    void validate() const;

    /// Grid centre coordinate 2^(n-1) - 1/2 (the same on every axis).
    double grid_center() const;

    /// 2^n lambda mu, the reciprocal of the gradient resolution.
    double frequency_scale() const;
};

}  // namespace qgrad
