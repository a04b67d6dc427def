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

#include "rydpulse/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rydpulse/csv.hpp"

namespace rydpulse {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Nsga3: return "nsga3";
        case Algorithm::Cmaes: return "cmaes";
        case Algorithm::EvaluateOnly: return "evaluate-only";
    }
    return "nsga3";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "nsga3") return Algorithm::Nsga3;
    if (name == "cmaes") return Algorithm::Cmaes;
    if (name == "evaluate-only") return Algorithm::EvaluateOnly;
    throw std::runtime_error("config key run.algorithm: unknown value '" +
                             name + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Parser {
    RunConfig config;

    void apply(const std::string& key, const std::string& value) {
        if (key == "run.algorithm") {
            config.algorithm = algorithm_from_string(value);
        } else if (key == "run.output_dir") {
            config.output_dir = value;
        } else if (key == "run.master_seed") {
            config.master_seed = parse_u64(key, value);
        } else if (key == "run.threads") {
            config.threads = parse_u64(key, value);
        } else if (key == "run.checkpoint_every") {
            config.checkpoint_every = parse_u64(key, value);
        } else if (key == "pulse.slice_count") {
            config.slice_count = parse_u64(key, value);
        } else if (key == "pulse.pulse_area") {
            config.pulse_area = parse_double(key, value);
        } else if (key == "pulse.duration") {
            config.duration = parse_double(key, value);
        } else if (key == "noise.level") {
            config.noise_level = parse_double(key, value);
        } else if (key == "noise.harmonic_count") {
            config.harmonic_count = parse_u64(key, value);
        } else if (key == "noise.max_frequency") {
            config.max_frequency = parse_double(key, value);
        } else if (key == "evaluation.trajectory_count") {
            config.trajectory_count = parse_u64(key, value);
        } else if (key == "evaluation.substeps") {
            config.substeps = parse_u64(key, value);
        } else if (key == "evaluation.common_random_numbers") {
            config.common_random_numbers = parse_bool(key, value);
        } else if (key == "bounds.phase_min") {
            config.phase_min = parse_double(key, value);
        } else if (key == "bounds.phase_max") {
            config.phase_max = parse_double(key, value);
        } else if (key == "bounds.duration_min") {
            config.duration_min = parse_double(key, value);
        } else if (key == "bounds.duration_max") {
            config.duration_max = parse_double(key, value);
        } else if (key == "nsga3.population") {
            config.nsga3_population = parse_u64(key, value);
        } else if (key == "nsga3.generations") {
            config.nsga3_generations = parse_u64(key, value);
        } else if (key == "nsga3.divisions") {
            config.nsga3_divisions = parse_u64(key, value);
        } else if (key == "nsga3.crossover_prob") {
            config.crossover_prob = parse_double(key, value);
        } else if (key == "nsga3.crossover_eta") {
            config.crossover_eta = parse_double(key, value);
        } else if (key == "nsga3.mutation_prob") {
            config.mutation_prob = parse_double(key, value);
        } else if (key == "nsga3.mutation_eta") {
            config.mutation_eta = parse_double(key, value);
        } else if (key == "cmaes.population") {
            config.cmaes_population = parse_u64(key, value);
        } else if (key == "cmaes.generations") {
            config.cmaes_generations = parse_u64(key, value);
        } else if (key == "cmaes.initial_step_factor") {
            config.cmaes_initial_step_factor = parse_double(key, value);
        } else if (key == "cmaes.reevaluate_every") {
            config.cmaes_reevaluate_every = parse_u64(key, value);
        } else if (key == "cmaes.optimize_duration") {
            config.cmaes_optimize_duration = parse_bool(key, value);
        } else {
            throw std::runtime_error("config key " + key + ": unknown key");
        }
    }

    static std::uint64_t parse_u64(const std::string& key,
                                   const std::string& value) {
        std::uint64_t out = 0;
        const auto res =
            std::from_chars(value.data(), value.data() + value.size(), out);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
            throw std::runtime_error("config key " + key +
                                     ": expected a non-negative integer, got '" +
                                     value + "'");
        }
        return out;
    }

    static double parse_double(const std::string& key,
                               const std::string& value) {
        try {
            std::size_t pos = 0;
            const double out = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
            return out;
        } catch (const std::exception&) {
            throw std::runtime_error("config key " + key +
                                     ": expected a number, got '" + value + "'");
        }
    }

    static bool parse_bool(const std::string& key, const std::string& value) {
        if (value == "true" || value == "1") return true;
        if (value == "false" || value == "0") return false;
        throw std::runtime_error("config key " + key +
                                 ": expected true/false, got '" + value + "'");
    }
};

} // namespace

RunConfig RunConfig::from_string(const std::string& text) {
    Parser parser;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw std::runtime_error("config line " +
                                         std::to_string(line_no) +
                                         ": malformed section header");
            }
            section = t.substr(1, t.size() - 2);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = section + "." + trim(t.substr(0, eq));
        parser.apply(key, trim(t.substr(eq + 1)));
    }
    parser.config.validate();
    return parser.config;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

void RunConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& why) {
        throw std::runtime_error("config key " + key + ": " + why);
    };
    if (slice_count < 1) fail("pulse.slice_count", "must be >= 1");
    if (!(pulse_area > 0.0)) fail("pulse.pulse_area", "must be > 0");
    if (!(duration > 0.0)) fail("pulse.duration", "must be > 0");
    if (noise_level < 0.0) fail("noise.level", "must be >= 0");
    if (harmonic_count < 1) fail("noise.harmonic_count", "must be >= 1");
    if (max_frequency < 1.0) fail("noise.max_frequency", "must be >= 1");
    if (trajectory_count < 1) fail("evaluation.trajectory_count", "must be >= 1");
    if (substeps < 1) fail("evaluation.substeps", "must be >= 1");
    if (!(phase_max > phase_min)) fail("bounds.phase_max", "must exceed phase_min");
    if (!(duration_max >= duration_min)) {
        fail("bounds.duration_max", "must be >= duration_min");
    }
    if (nsga3_population < 4) fail("nsga3.population", "must be >= 4");
    if (nsga3_divisions < 1) fail("nsga3.divisions", "must be >= 1");
    if (cmaes_population < 2) fail("cmaes.population", "must be >= 2");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
        fail("nsga3.crossover_prob", "must be in [0, 1]");
    }
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        fail("nsga3.mutation_prob", "must be in [0, 1]");
    }
    if (!(cmaes_initial_step_factor > 0.0)) {
        fail("cmaes.initial_step_factor", "must be > 0");
    }
}

std::string RunConfig::to_ini() const {
    std::ostringstream out;
    out << "[run]\n";
    out << "algorithm = " << to_string(algorithm) << "\n";
    out << "output_dir = " << output_dir << "\n";
    out << "master_seed = " << master_seed << "\n";
    out << "threads = " << threads << "\n";
    out << "checkpoint_every = " << checkpoint_every << "\n";
    out << "\n[pulse]\n";
    out << "slice_count = " << slice_count << "\n";
    out << "pulse_area = " << format_double(pulse_area) << "\n";
    out << "duration = " << format_double(duration) << "\n";
    out << "\n[noise]\n";
    out << "level = " << format_double(noise_level) << "\n";
    out << "harmonic_count = " << harmonic_count << "\n";
    out << "max_frequency = " << format_double(max_frequency) << "\n";
    out << "\n[evaluation]\n";
    out << "trajectory_count = " << trajectory_count << "\n";
    out << "substeps = " << substeps << "\n";
    out << "common_random_numbers = "
        << (common_random_numbers ? "true" : "false") << "\n";
    out << "\n[bounds]\n";
    out << "phase_min = " << format_double(phase_min) << "\n";
    out << "phase_max = " << format_double(phase_max) << "\n";
    out << "duration_min = " << format_double(duration_min) << "\n";
    out << "duration_max = " << format_double(duration_max) << "\n";
    out << "\n[nsga3]\n";
    out << "population = " << nsga3_population << "\n";
    out << "generations = " << nsga3_generations << "\n";
    out << "divisions = " << nsga3_divisions << "\n";
    out << "crossover_prob = " << format_double(crossover_prob) << "\n";
    out << "crossover_eta = " << format_double(crossover_eta) << "\n";
    out << "mutation_prob = " << format_double(mutation_prob) << "\n";
    out << "mutation_eta = " << format_double(mutation_eta) << "\n";
    out << "\n[cmaes]\n";
    out << "population = " << cmaes_population << "\n";
    out << "generations = " << cmaes_generations << "\n";
    out << "initial_step_factor = " << format_double(cmaes_initial_step_factor)
        << "\n";
    out << "reevaluate_every = " << cmaes_reevaluate_every << "\n";
    out << "optimize_duration = "
        << (cmaes_optimize_duration ? "true" : "false") << "\n";
    return out.str();
}

std::size_t RunConfig::resolved_threads() const {
    // RYDPULSE_THREADS overrides the config key; 0 means available
    // parallelism either way.
    std::size_t value = threads;
    if (const char* env = std::getenv("RYDPULSE_THREADS")) {
        value = Parser::parse_u64("env.RYDPULSE_THREADS", env);
    }
    if (value != 0) return value;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace rydpulse
