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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rydpulse/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Noise-resilient pi-pulse design: simulation and "
                 "evolutionary optimization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string checkpoint_path;
    std::string genome_path;
    std::string output_path;
    std::vector<std::string> front_paths;
    double t_max = 1.0;
    std::size_t samples = 1024;

    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("config", config_path, "INI config file")->required();

    auto* resume = app.add_subcommand("resume", "Continue an interrupted run from its checkpoint");
    resume->add_option("checkpoint", checkpoint_path, "checkpoint.json written by a previous run")
        ->required();

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one pulse under the config's noise model");
    evaluate->add_option("config", config_path, "INI config file")->required();
    evaluate->add_option("--genome", genome_path,
                         "genome file: one value per line (phases, optional duration last); "
                         "default is all-zero phases at the configured duration");
    evaluate->add_option("-o,--output", output_path, "result CSV path (default: stdout)");

    auto* plot = app.add_subcommand("plot", "Overlay Pareto front CSVs into an SVG scatter plot");
    plot->add_option("fronts", front_paths, "front CSV files")->required()->expected(-1);
    plot->add_option("-o,--output", output_path, "output SVG path")->required();

    auto* noise_dump = app.add_subcommand("noise-dump", "Sample one noise realization to CSV");
    noise_dump->add_option("config", config_path, "INI config file")->required();
    noise_dump->add_option("-o,--output", output_path, "output CSV path")->required();
    noise_dump->add_option("--t-max", t_max, "sampling window length (1/f_max)");
    noise_dump->add_option("--samples", samples, "number of samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            rydpulse::run_experiment_file(config_path);
        } else if (resume->parsed()) {
            rydpulse::resume_experiment(checkpoint_path);
        } else if (evaluate->parsed()) {
            const auto config = rydpulse::RunConfig::from_file(config_path);
            std::vector<double> genome;
            if (genome_path.empty()) {
                genome.assign(config.slice_count, 0.0);
                genome.push_back(config.duration);
            } else {
                genome = rydpulse::read_genome_file(genome_path);
            }
            const auto estimate = rydpulse::evaluate_genome(config, genome);
            if (output_path.empty()) {
                std::cout << "F=" << estimate.infidelity_mean
                          << " F_stderr=" << estimate.infidelity_stderr
                          << " G=" << estimate.rydberg_time_mean
                          << " G_stderr=" << estimate.rydberg_time_stderr
                          << "\n";
            } else {
                rydpulse::write_result_csv(config, genome, estimate,
                                           output_path);
            }
        } else if (plot->parsed()) {
            rydpulse::plot_front_files(front_paths, output_path);
        } else if (noise_dump->parsed()) {
            const auto config = rydpulse::RunConfig::from_file(config_path);
            rydpulse::dump_noise_csv(config, t_max, samples, output_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
