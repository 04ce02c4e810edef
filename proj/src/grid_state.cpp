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

#include "qgrad/grid_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qgrad/errors.hpp"

namespace qgrad {
namespace {

std::uint64_t reverse_bits(std::uint64_t v, unsigned width) {
    std::uint64_t r = 0;
    for (unsigned b = 0; b < width; ++b) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}

// Iterative Cooley-Tukey over one contiguous line of length 2^n. Twiddles
// are evaluated directly from the angle rather than by recurrence.
void fft_line(std::vector<Complex> &line, unsigned n, const std::vector<Complex> &twiddle) {
    const std::uint64_t size = line.size();
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t j = reverse_bits(i, n);
        if (j > i) std::swap(line[i], line[j]);
    }
    for (std::uint64_t half = 1; half < size; half <<= 1) {
        const std::uint64_t stride = size / (2 * half);
        for (std::uint64_t start = 0; start < size; start += 2 * half) {
            for (std::uint64_t k = 0; k < half; ++k) {
                const Complex t = twiddle[k * stride] * line[start + k + half];
                const Complex u = line[start + k];
                line[start + k] = u + t;
                line[start + k + half] = u - t;
            }
        }
    }
}

}  // namespace

GridState GridState::zeros(const GridShape &shape, unsigned max_bits) {
    shape.check(max_bits);
    return GridState{shape, std::vector<Complex>(shape.size())};
}

GridState GridState::basis(const GridShape &shape, std::uint64_t flat, unsigned max_bits) {
    GridState s = zeros(shape, max_bits);
    if (flat >= shape.size()) throw InvalidArgument("state-engine", "basis index out of range");
    s.amplitudes[flat] = 1.0;
    return s;
}

double GridState::norm() const { return l2_norm(amplitudes); }

void qft_axis_inplace(std::span<Complex> amplitudes, const GridShape &shape, unsigned axis,
                      QftDirection direction) {
    if (axis >= shape.p) throw InvalidArgument("state-engine", "QFT axis out of range");
    if (amplitudes.size() != shape.size()) {
        throw InvalidArgument("state-engine", "amplitude buffer does not match grid shape");
    }
    const std::uint64_t len = shape.axis_size();
    const double sign = direction == QftDirection::kForward ? 1.0 : -1.0;
    std::vector<Complex> twiddle(len / 2 == 0 ? 1 : len / 2);
    for (std::uint64_t k = 0; k < twiddle.size(); ++k) {
        twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                         static_cast<double>(len));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(len));

    const std::uint64_t inner = std::uint64_t{1} << (shape.n * (shape.p - 1 - axis));
    const std::uint64_t outer = shape.size() / (inner * len);
    std::vector<Complex> line(len);
    for (std::uint64_t o = 0; o < outer; ++o) {
        for (std::uint64_t i = 0; i < inner; ++i) {
            const std::uint64_t base = o * len * inner + i;
            for (std::uint64_t k = 0; k < len; ++k) line[k] = amplitudes[base + k * inner];
            fft_line(line, shape.n, twiddle);
            for (std::uint64_t k = 0; k < len; ++k) amplitudes[base + k * inner] = line[k] * scale;
        }
    }
}

void qft_inplace(std::span<Complex> amplitudes, const GridShape &shape, QftDirection direction) {
    for (unsigned axis = 0; axis < shape.p; ++axis) qft_axis_inplace(amplitudes, shape, axis, direction);
}

GridState qft_grid(const GridState &state, QftDirection direction) {
    GridState out = state;
    qft_inplace(out.amplitudes, out.shape, direction);
    return out;
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw InvalidArgument("state-engine", "inner product size mismatch");
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

double l2_norm(std::span<const Complex> a) {
    double s = 0.0;
    for (const Complex &z : a) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw InvalidArgument("state-engine", "comparison size mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

double max_abs_diff_up_to_phase(std::span<const Complex> a, std::span<const Complex> b) {
    const Complex overlap = inner_product(a, b);
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(phase * a[k] - b[k]));
    return worst;
}

}  // namespace qgrad
