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

#ifndef RYDPULSE_EVALUATOR_HPP
#define RYDPULSE_EVALUATOR_HPP

#include <cstdint>
#include <vector>

#include "rydpulse/dynamics.hpp"
#include "rydpulse/noise.hpp"

namespace rydpulse {

struct EvaluationBudget {
    std::size_t trajectory_count = 200;
    std::size_t substeps = 8;
    std::uint64_t master_seed = 1;
    std::uint64_t generation = 0;
    // When set, every candidate in a generation sees the same noise
    // realizations (common random numbers); default follows fresh noise per
    // candidate.
    bool common_random_numbers = false;
    std::size_t threads = 1; // 0 = hardware concurrency
};

struct ObjectiveEstimate {
    double infidelity_mean = 0.0;
    double infidelity_stderr = 0.0;
    double rydberg_time_mean = 0.0;
    double rydberg_time_stderr = 0.0;
    bool valid = true;
};

// Monte Carlo estimate of (F, G) for one candidate. Trajectory i of candidate
// j in generation g draws its noise from the stream keyed by
// (master_seed, g, j, i), so the result is independent of threading and
// batch composition. A non-finite schedule yields valid = false instead of
// throwing.
ObjectiveEstimate estimate_objectives(const PulseSchedule& schedule,
                                      const SpectralNoiseModel& model,
                                      const DynamicsSettings& settings,
                                      const EvaluationBudget& budget,
                                      std::size_t candidate_index);

// Element i equals estimate_objectives(population[i], ..., i) exactly, for
// any worker-thread count.
std::vector<ObjectiveEstimate> batch_evaluate(
    const std::vector<PulseSchedule>& population,
    const SpectralNoiseModel& model, const DynamicsSettings& settings,
    const EvaluationBudget& budget);

} // namespace rydpulse

#endif
