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
 * Dense amplitudes of the grid register and the p-dimensional quantum
 * Fourier transform
 *
 *   |g> -> 2^(-pn/2) sum_h exp(+2 pi i h.g / 2^n) |h>,
 *
 * applied as an independent radix-2 transform along each axis.
 */

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qgrad/params.hpp"

namespace qgrad {

using Complex = std::complex<double>;

enum class QftDirection { kForward, kInverse };

struct GridState {
    GridShape shape;
    std::vector<Complex> amplitudes;

    /// All-zero amplitudes; throws GuardError past `max_bits`.
    static GridState zeros(const GridShape &shape, unsigned max_bits = kDefaultMaxGridBits);
    /// Basis vector e_flat.
    static GridState basis(const GridShape &shape, std::uint64_t flat,
                           unsigned max_bits = kDefaultMaxGridBits);

    double norm() const;
    double probability(std::uint64_t flat) const { return std::norm(amplitudes[flat]); }
};

/// In-place transform along one axis of a row-major grid buffer.
void qft_axis_inplace(std::span<Complex> amplitudes, const GridShape &shape, unsigned axis,
                      QftDirection direction);

/// In-place transform along every axis (the p-th tensor power).
void qft_inplace(std::span<Complex> amplitudes, const GridShape &shape, QftDirection direction);

GridState qft_grid(const GridState &state, QftDirection direction);

/// <a|b>.
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
double l2_norm(std::span<const Complex> a);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

/// max_k |e^{i theta} a_k - b_k| with theta the phase of <a|b>, i.e. the
/// distance after removing the best global phase.
double max_abs_diff_up_to_phase(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qgrad
