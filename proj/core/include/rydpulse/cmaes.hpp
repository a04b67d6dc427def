// Copyright 2026 The rydpulse Authors
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

#ifndef RYDPULSE_CMAES_HPP
#define RYDPULSE_CMAES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rydpulse/nsga3.hpp" // Bounds

namespace rydpulse {

// Scalar batch objective; eval_key feeds deterministic noise seeding. Keys
// at or above kReevaluationKeyBase are incumbent re-evaluations.
using BatchScalarObjective = std::function<std::vector<double>(
    const std::vector<std::vector<double>>&, std::uint64_t eval_key)>;

inline constexpr std::uint64_t kReevaluationKeyBase = 1ULL << 40;

struct CmaesConfig {
    std::size_t population_size = 100; // lambda
    std::size_t generations = 300;
    std::vector<double> initial_mean;  // empty = bound-box midpoints
    double initial_step_factor = 0.3;  // sigma0 = factor * mean bound range
    // Re-evaluate the incumbent every this many generations; its estimate is
    // pooled across re-evaluations to fight noise-induced optimism.
    std::size_t reevaluate_every = 10;
};

struct CmaesGenerationStats {
    std::uint64_t generation = 0;
    double best = 0.0;      // best estimate in this generation
    double median = 0.0;    // median estimate in this generation
    double best_ever = 0.0; // running minimum of the incumbent estimate
    double step_size = 0.0;
};

struct CmaesState {
    std::uint64_t next_generation = 0;
    std::vector<double> mean;
    double sigma = 0.0;
    std::vector<double> covariance; // row-major n x n
    std::vector<double> path_sigma;
    std::vector<double> path_c;
    std::vector<double> best_genome;
    double best_estimate = 0.0;
    double best_reported = 0.0; // monotone non-increasing
    std::size_t best_eval_count = 0;
    std::vector<CmaesGenerationStats> history;
};

struct CmaesResult {
    std::vector<double> best_genome;
    double best_objective = 0.0;
    std::vector<CmaesGenerationStats> history;
};

using CmaesCallback = std::function<void(const CmaesState&)>;

// Standard (mu/mu_w, lambda) CMA-ES with rank-one and rank-mu covariance
// updates and cumulative step-size adaptation. Out-of-bounds coordinates are
// resampled up to 10 times, then clipped, so the objective only ever sees
// in-bounds genomes. Degenerate covariances are repaired by flooring
// eigenvalues at 1e-14 of the largest. Sampling randomness is keyed by
// (seed, generation, candidate), making resumed runs bit-identical.
CmaesResult run_cmaes(const CmaesConfig& config, const Bounds& bounds,
                      const BatchScalarObjective& objective,
                      std::uint64_t seed,
                      const CmaesCallback& callback = nullptr,
                      std::optional<CmaesState> start = std::nullopt);

} // namespace rydpulse

#endif
