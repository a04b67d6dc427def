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

#ifndef RYDPULSE_CONFIG_HPP
#define RYDPULSE_CONFIG_HPP

#include <cstdint>
#include <string>

#include "rydpulse/dynamics.hpp"

namespace rydpulse {

enum class Algorithm { Nsga3, Cmaes, EvaluateOnly };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

// Complete experiment description, loadable from an INI-style text file with
// one section per module. Unknown keys and malformed values are rejected
// with a diagnostic naming the offending key.
struct RunConfig {
    // [run]
    Algorithm algorithm = Algorithm::Nsga3;
    std::string output_dir = "out";
    std::uint64_t master_seed = 1;
    std::size_t threads = 0; // 0 = available parallelism
    std::size_t checkpoint_every = 10;

    // [pulse]
    std::size_t slice_count = 50;
    double pulse_area = kTwoPi; // |Omega| / f_max
    double duration = 1.0;      // fixed T for cmaes / evaluate-only

    // [noise]
    double noise_level = 0.10;
    std::size_t harmonic_count = 25;
    double max_frequency = 100.0;

    // [evaluation]
    std::size_t trajectory_count = 200;
    std::size_t substeps = 8;
    bool common_random_numbers = false;

    // [bounds]
    double phase_min = 0.0;
    double phase_max = kTwoPi;
    double duration_min = 1.0;
    double duration_max = 5.0;

    // [nsga3]
    std::size_t nsga3_population = 100;
    std::size_t nsga3_generations = 200;
    std::size_t nsga3_divisions = 99;
    double crossover_prob = 1.0;
    double crossover_eta = 30.0;
    double mutation_prob = 1.0 / 51.0;
    double mutation_eta = 20.0;

    // [cmaes]
    std::size_t cmaes_population = 100;
    std::size_t cmaes_generations = 300;
    double cmaes_initial_step_factor = 0.3;
    std::size_t cmaes_reevaluate_every = 10;
    bool cmaes_optimize_duration = false;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);
    std::string to_ini() const;

    void validate() const; // throws std::runtime_error naming the bad key

    SpectralNoiseModel noise_model() const {
        return SpectralNoiseModel(noise_level, harmonic_count, max_frequency);
    }
    DynamicsSettings dynamics_settings() const {
        return DynamicsSettings{pulse_area, substeps};
    }
    std::size_t resolved_threads() const;
};

} // namespace rydpulse

#endif
