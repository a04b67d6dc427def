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

#ifndef RYDPULSE_NSGA3_HPP
#define RYDPULSE_NSGA3_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rydpulse/pareto.hpp"
#include "rydpulse/rng.hpp"

namespace rydpulse {

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dimension() const { return lower.size(); }
    double clip(double x, std::size_t i) const {
        if (x < lower[i]) return lower[i];
        if (x > upper[i]) return upper[i];
        return x;
    }
};

struct Individual {
    std::vector<double> genome;
    ObjectiveVector objectives;
    ObjectiveVector stderrs;
    std::size_t rank = 0;
    std::size_t ref_index = 0;
    double ref_distance = 0.0;
    std::uint64_t generation_found = 0;
};

struct Evaluation {
    ObjectiveVector objectives;
    ObjectiveVector stderrs;
};

// Evaluates a batch of genomes; the key feeds deterministic noise seeding.
using BatchObjective = std::function<std::vector<Evaluation>(
    const std::vector<std::vector<double>>&, std::uint64_t eval_key)>;

struct Nsga3Config {
    std::size_t objective_count = 2;  // M
    std::size_t divisions = 99;       // P, Das-Dennis divisions per axis
    std::size_t population_size = 100;
    std::size_t generations = 200;
    double crossover_prob = 1.0;
    double crossover_eta = 30.0;
    double mutation_prob = 1.0 / 51.0;
    double mutation_eta = 20.0;
    // Accepted for forward compatibility; the fixed-reference algorithm is
    // the one implemented and this flag must stay false.
    bool adaptive_references = false;
};

// Uniform simplex lattice: all points with coordinates in {0, 1/P, ..., 1}
// summing to 1. Count is C(M+P-1, P); throws on overflow.
std::vector<ObjectiveVector> das_dennis_points(std::size_t objective_count,
                                               std::size_t divisions);

struct Association {
    std::vector<std::size_t> ref_index;
    std::vector<double> distance;
};

// Translates by the ideal point, scales by the intercepts of the
// extreme-point hyperplane (falling back to per-objective maxima when the
// hyperplane is degenerate), then assigns each point the reference direction
// of minimal perpendicular distance (ties to the lowest reference index).
Association normalize_and_associate(const std::vector<ObjectiveVector>& objectives,
                                    const std::vector<ObjectiveVector>& refs);

// NSGA-III niche-preservation selection of `slots` members from the last
// front. niche_count[r] counts already-selected members associated to ref r.
std::vector<std::size_t> niching_select(const std::vector<std::size_t>& last_front,
                                        const Association& assoc,
                                        std::vector<std::size_t> niche_count,
                                        std::size_t ref_count,
                                        std::size_t slots, RngStream& rng);

// Simulated binary crossover, bounded variables, children clipped.
std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& parent1, const std::vector<double>& parent2,
    const Bounds& bounds, double crossover_prob, double eta, RngStream& rng);

// Bounded polynomial mutation, each gene independently with probability
// mutation_prob.
std::vector<double> polynomial_mutation(const std::vector<double>& genome,
                                        const Bounds& bounds,
                                        double mutation_prob, double eta,
                                        RngStream& rng);

struct Nsga3State {
    std::uint64_t next_generation = 0; // 0 means not yet initialized
    std::vector<Individual> population;
    std::vector<Individual> archive; // all-time non-dominated set
};

// Called after each completed generation with the current state and the
// individuals evaluated in that generation.
using Nsga3Callback =
    std::function<void(const Nsga3State&, const std::vector<Individual>&)>;

struct Nsga3Result {
    std::vector<Individual> population;
    std::vector<Individual> archive;
};

// Generation 0 creates and evaluates a random initial population; each later
// generation applies tournament mating, SBX, polynomial mutation, batch
// evaluation and reference-point environmental selection. All randomness is
// keyed by (seed, generation, index), so a run resumed from `start` is
// bit-identical to an uninterrupted one.
Nsga3Result run_nsga3(const Nsga3Config& config, const Bounds& bounds,
                      const BatchObjective& objective, std::uint64_t seed,
                      const Nsga3Callback& callback = nullptr,
                      std::optional<Nsga3State> start = std::nullopt);

// Keeps only mutually non-dominated entries (first occurrence wins on equal
// objectives).
std::vector<Individual> pareto_filter(std::vector<Individual> entries);

} // namespace rydpulse

#endif
