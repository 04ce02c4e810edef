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

#include "qgrad/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qgrad/errors.hpp"
#include "qgrad/oracle.hpp"

namespace qgrad {
namespace {

constexpr const char *kModule = "gradient-algorithm";

GridShape shape_for(const FunctionModel &model, std::span<const double> x, const AlgorithmParams &params) {
    if (x.size() != model.dimension()) {
        throw InvalidArgument(kModule, "point has dimension " + std::to_string(x.size()) +
                                           ", function has " + std::to_string(model.dimension()));
    }
    return GridShape{params.n, static_cast<unsigned>(x.size())};
}

// Sampling-box margin: x +- 2^(n-1) mu on every axis must stay in D.
void check_margin(const FunctionModel &model, std::span<const double> x, const AlgorithmParams &params) {
    const double reach = std::ldexp(params.mu, static_cast<int>(params.n) - 1);
    const DomainBox &box = model.domain();
    for (std::size_t m = 0; m < x.size(); ++m) {
        if (std::abs(x[m] - box.center[m]) + reach > box.half_width[m]) {
            throw DomainError(kModule, "sampling grid of half-width 2^(n-1) mu = " + std::to_string(reach) +
                                           " around x leaves the domain on axis " + std::to_string(m));
        }
    }
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_double(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FixedPointFormat plan_pipeline_format(const FunctionModel &model, std::span<const double> x,
                                      const AlgorithmParams &params, GroupMode mode) {
    params.validate();
    const GridShape shape = shape_for(model, x, params);
    const double bound = grid_range_bound(model, x, params, shape);
    return plan_format(params.nu, std::max(bound, params.nu), mode);
}

PipelineResult run_pipeline(const FunctionModel &model, std::span<const double> x,
                            const AlgorithmParams &params, const PipelineOptions &options) {
    params.validate();
    const GridShape shape = shape_for(model, x, params);
    shape.check(options.max_grid_bits);
    check_margin(model, x, params);

    FixedPointFormat format = options.format ? *options.format
                                             : plan_pipeline_format(model, x, params, options.group_mode);
    format.validate();

    const DomainLabel start = DomainLabel::base(Point(x.begin(), x.end()));
    const RangeWord identity{0};
    OracleCounter counter;
    std::size_t peak = 1;
    auto track = [&peak](SparseTripartiteState s) {
        peak = std::max(peak, s.size());
        return s;
    };

    SparseTripartiteState s = SparseTripartiteState::basis(shape, start, identity, 0);
    s = track(apply_qft(s, QftDirection::kForward, options.max_grid_bits));
    s = track(apply_u_plus(s));
    s = track(apply_u_f(s, model, format, params, counter));
    s = track(apply_phase_rotation(s, params.lambda, format, options.phase_variant));
    s = track(apply_u_f_inverse(s, model, format, params, counter));
    s = track(apply_u_plus_inverse(s));
    // The second transform uses the same positive-exponent kernel as the first.
    s = track(apply_qft(s, QftDirection::kForward, options.max_grid_bits));

    PipelineResult result{collapse_to_grid(s, start, identity, options.max_grid_bits), counter.calls, format,
                          peak};
    return result;
}

double decode_gradient_component(std::uint32_t g, const AlgorithmParams &params) {
    const std::uint64_t size = std::uint64_t{1} << params.n;
    if (g >= size) throw InvalidArgument(kModule, "grid coordinate " + std::to_string(g) + " out of range");
    const double scale = params.frequency_scale();
    if (g < size / 2) return -static_cast<double>(g) / scale;
    return static_cast<double>(size - g) / scale;
}

Point decode_gradient(const GridIndex &g, const AlgorithmParams &params) {
    Point out(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) out[m] = decode_gradient_component(g[m], params);
    return out;
}

std::vector<GradientEstimate> outcome_distribution(const GridState &chi, const AlgorithmParams &params,
                                                   double floor) {
    std::vector<GradientEstimate> out;
    for (std::uint64_t flat = 0; flat < chi.amplitudes.size(); ++flat) {
        const double prob = chi.probability(flat);
        if (prob < floor || prob == 0.0) continue;
        GridIndex g = chi.shape.decode(flat);
        Point grad = decode_gradient(g, params);
        out.push_back(GradientEstimate{flat, std::move(g), std::move(grad), prob});
    }
    return out;
}

std::vector<GradientEstimate> sample_measurements(const GridState &chi, std::uint64_t shots,
                                                  std::uint64_t seed, const AlgorithmParams &params) {
    if (shots < 1) throw InvalidArgument(kModule, "shots must be at least 1");
    std::vector<double> cdf(chi.amplitudes.size());
    double total = 0.0;
    for (std::uint64_t flat = 0; flat < cdf.size(); ++flat) {
        total += chi.probability(flat);
        cdf[flat] = total;
    }
    if (std::abs(total - 1.0) > 1e-8) {
        throw InvalidArgument(kModule, "cannot sample an unnormalized state (total probability " +
                                           std::to_string(total) + ")");
    }
    std::mt19937_64 rng(seed);
    std::vector<GradientEstimate> out;
    out.reserve(shots);
    for (std::uint64_t i = 0; i < shots; ++i) {
        const double u = unit_double(rng) * total;
        // First index with cdf > u; it always carries non-zero probability.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), total);
        const auto flat = static_cast<std::uint64_t>(it - cdf.begin());
        GridIndex g = chi.shape.decode(flat);
        Point grad = decode_gradient(g, params);
        out.push_back(GradientEstimate{flat, std::move(g), std::move(grad), chi.probability(flat)});
    }
    return out;
}

}  // namespace qgrad
