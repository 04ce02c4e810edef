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

#include "qgrad/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "qgrad/errors.hpp"

namespace qgrad {

std::uint64_t GridShape::encode(const GridIndex &g) const {
    if (g.size() != p) {
        throw InvalidArgument("state-engine", "grid index has " + std::to_string(g.size()) +
                                                  " components, expected " + std::to_string(p));
    }
    std::uint64_t flat = 0;
    for (std::uint32_t gm : g) {
        if (gm >= axis_size()) {
            throw InvalidArgument("state-engine", "grid coordinate " + std::to_string(gm) +
                                                      " out of range for n = " + std::to_string(n));
        }
        flat = (flat << n) | gm;
    }
    return flat;
}

GridIndex GridShape::decode(std::uint64_t flat) const {
    if (flat >= size()) {
        throw InvalidArgument("state-engine", "flat grid index " + std::to_string(flat) + " out of range");
    }
    GridIndex g(p);
    for (unsigned m = p; m-- > 0;) {
        g[m] = static_cast<std::uint32_t>(flat & (axis_size() - 1));
        flat >>= n;
    }
    return g;
}

std::uint32_t GridShape::component(std::uint64_t flat, unsigned axis) const {
    return static_cast<std::uint32_t>((flat >> (n * (p - 1 - axis))) & (axis_size() - 1));
}

void GridShape::check(unsigned max_bits) const {
    if (n == 0 || p == 0) throw InvalidArgument("state-engine", "grid needs n >= 1 and p >= 1");
    if (n * p > max_bits || n * p > 62) {
        std::ostringstream os;
        os << "grid register of p*n = " << p * n << " qubits exceeds the limit of " << max_bits
           << " (raise --max-grid-bits or loosen delta/epsilon)";
        throw GuardError("state-engine", os.str());
    }
}

void AlgorithmParams::validate() const {
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (n < 1) throw InvalidArgument("gradient-algorithm", "n must be at least 1");
    if (n > 31) throw GuardError("gradient-algorithm", "n must be at most 31");
    if (!positive(nu)) throw InvalidArgument("gradient-algorithm", "nu must be finite and positive");
    if (!positive(lambda)) throw InvalidArgument("gradient-algorithm", "lambda must be finite and positive");
    if (!positive(mu)) throw InvalidArgument("gradient-algorithm", "mu must be finite and positive");
}

double AlgorithmParams::grid_center() const { return std::ldexp(1.0, static_cast<int>(n) - 1) - 0.5; }

double AlgorithmParams::frequency_scale() const {
    return std::ldexp(1.0, static_cast<int>(n)) * lambda * mu;
}

}  // namespace qgrad
