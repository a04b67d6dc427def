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

#ifndef RYDPULSE_RUNNER_HPP
#define RYDPULSE_RUNNER_HPP

#include <string>
#include <vector>

#include "rydpulse/cmaes.hpp"
#include "rydpulse/config.hpp"
#include "rydpulse/evaluator.hpp"
#include "rydpulse/nsga3.hpp"

namespace rydpulse {

inline constexpr const char* kVersion = "0.1.0";

// Genome layouts: NSGA-III uses slice_count phases plus the duration as the
// last gene; CMA-ES uses phases only unless cmaes_optimize_duration is set.
PulseSchedule schedule_from_genome(const std::vector<double>& genome,
                                   const RunConfig& config);

Bounds genome_bounds(const RunConfig& config, bool include_duration);

// Runs the configured experiment, writing into config.output_dir:
//   manifest.json    resolved config echo + code version
//   generations.csv  one row per evaluated individual
//   front.csv/.svg   final non-dominated set (nsga3)
//   best.csv, history.csv  (cmaes)
//   result.csv       (evaluate-only)
//   checkpoint.json  every checkpoint_every generations
void run_experiment(const RunConfig& config);
void run_experiment_file(const std::string& config_path);

// Continues an interrupted run from its checkpoint; the finished artifacts
// are byte-identical to an uninterrupted run. Refuses a checkpoint that does
// not match the run directory's manifest.
void resume_experiment(const std::string& checkpoint_path);

// Evaluates one genome under the config's noise model and budget.
ObjectiveEstimate evaluate_genome(const RunConfig& config,
                                  const std::vector<double>& genome);

// Genome file: one value per line (phases, optionally duration last).
std::vector<double> read_genome_file(const std::string& path);

void write_result_csv(const RunConfig& config, const std::vector<double>& genome,
                      const ObjectiveEstimate& estimate,
                      const std::string& path);

// Overlays one or more front CSVs into a single SVG; legend labels are the
// file basenames.
void plot_front_files(const std::vector<std::string>& csv_paths,
                      const std::string& out_svg);

// CSV of (t, eps_a, eps_d) samples of one noise realization.
void dump_noise_csv(const RunConfig& config, double t_max,
                    std::size_t sample_count, const std::string& out_path);

} // namespace rydpulse

#endif
