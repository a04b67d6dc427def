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

#include "rydpulse/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "rydpulse/csv.hpp"
#include "rydpulse/plot.hpp"

namespace rydpulse {

namespace fs = std::filesystem;
using nlohmann::json;

PulseSchedule schedule_from_genome(const std::vector<double>& genome,
                                   const RunConfig& config) {
    const std::size_t n = config.slice_count;
    if (genome.size() == n) {
        return PulseSchedule{genome, config.duration};
    }
    if (genome.size() == n + 1) {
        return PulseSchedule{{genome.begin(), genome.begin() + n},
                             genome.back()};
    }
    throw std::invalid_argument(
        "genome length must be slice_count or slice_count + 1");
}

Bounds genome_bounds(const RunConfig& config, bool include_duration) {
    Bounds bounds;
    const std::size_t n = config.slice_count;
    bounds.lower.assign(n, config.phase_min);
    bounds.upper.assign(n, config.phase_max);
    if (include_duration) {
        bounds.lower.push_back(config.duration_min);
        bounds.upper.push_back(config.duration_max);
    }
    return bounds;
}

ObjectiveEstimate evaluate_genome(const RunConfig& config,
                                  const std::vector<double>& genome) {
    const SpectralNoiseModel model = config.noise_model();
    EvaluationBudget budget;
    budget.trajectory_count = config.trajectory_count;
    budget.substeps = config.substeps;
    budget.master_seed = config.master_seed;
    budget.generation = 0;
    budget.common_random_numbers = config.common_random_numbers;
    return estimate_objectives(schedule_from_genome(genome, config), model,
                               config.dynamics_settings(), budget, 0);
}

std::vector<double> read_genome_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open genome file: " + path);
    }
    std::vector<double> genome;
    std::string token;
    while (in >> token) {
        if (!token.empty() && token.back() == ',') token.pop_back();
        if (token.empty()) continue;
        genome.push_back(std::stod(token));
    }
    if (genome.empty()) {
        throw std::runtime_error("genome file is empty: " + path);
    }
    return genome;
}

namespace {

std::string genome_header(std::size_t slice_count) {
    std::ostringstream out;
    for (std::size_t i = 0; i < slice_count; ++i) out << ",phi_" << i;
    out << ",duration";
    return out.str();
}

std::string genome_cells(const std::vector<double>& genome, double duration) {
    std::ostringstream out;
    for (double g : genome) out << "," << format_double(g);
    out << "," << format_double(duration);
    return out.str();
}

json individual_to_json(const Individual& ind) {
    return json{{"genome", ind.genome},
                {"objectives", ind.objectives},
                {"stderrs", ind.stderrs},
                {"generation_found", ind.generation_found}};
}

Individual individual_from_json(const json& j) {
    Individual ind;
    ind.genome = j.at("genome").get<std::vector<double>>();
    ind.objectives = j.at("objectives").get<ObjectiveVector>();
    ind.stderrs = j.at("stderrs").get<ObjectiveVector>();
    ind.generation_found = j.at("generation_found").get<std::uint64_t>();
    return ind;
}

void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write file: " + tmp.string());
        }
        out << content;
    }
    fs::rename(tmp, path);
}

// Shared context for one optimizer run: evaluation adapter plus the
// generation log and checkpoints.
class RunContext {
public:
    RunContext(const RunConfig& config, bool genome_has_duration,
               bool fresh_start)
        : config_(config),
          model_(config.noise_model()),
          settings_(config.dynamics_settings()),
          genome_has_duration_(genome_has_duration),
          dir_(config.output_dir) {
        fs::create_directories(dir_);
        if (fresh_start) {
            write_manifest();
            std::ofstream log(log_path(), std::ios::binary | std::ios::trunc);
            log << "generation,index,F,F_stderr,G,G_stderr"
                << genome_header(config_.slice_count) << "\n";
        }
        log_.open(log_path(), std::ios::binary | std::ios::app);
        if (!log_) {
            throw std::runtime_error("cannot open log file: " +
                                     log_path().string());
        }
    }

    fs::path dir() const { return dir_; }
    fs::path log_path() const { return dir_ / "generations.csv"; }
    fs::path checkpoint_path() const { return dir_ / "checkpoint.json"; }

    std::vector<Evaluation> evaluate_batch(
        const std::vector<std::vector<double>>& genomes,
        std::uint64_t eval_key) {
        std::vector<PulseSchedule> schedules;
        schedules.reserve(genomes.size());
        for (const auto& g : genomes) {
            schedules.push_back(schedule_from_genome(g, config_));
        }
        EvaluationBudget budget;
        budget.trajectory_count = config_.trajectory_count;
        budget.substeps = config_.substeps;
        budget.master_seed = config_.master_seed;
        budget.generation = eval_key;
        budget.common_random_numbers = config_.common_random_numbers;
        budget.threads = config_.resolved_threads();
        const auto estimates =
            batch_evaluate(schedules, model_, settings_, budget);

        std::vector<Evaluation> evals(estimates.size());
        const bool log_rows = eval_key < kReevaluationKeyBase;
        for (std::size_t i = 0; i < estimates.size(); ++i) {
            const auto& est = estimates[i];
            if (est.valid) {
                evals[i].objectives = {est.infidelity_mean,
                                       est.rydberg_time_mean};
                evals[i].stderrs = {est.infidelity_stderr,
                                    est.rydberg_time_stderr};
            } else {
                // failed evaluation: pinned worst case
                evals[i].objectives = {1.0, config_.duration_max};
                evals[i].stderrs = {0.0, 0.0};
            }
            if (log_rows) {
                log_ << eval_key << "," << i << ","
                     << format_double(evals[i].objectives[0]) << ","
                     << format_double(evals[i].stderrs[0]) << ","
                     << format_double(evals[i].objectives[1]) << ","
                     << format_double(evals[i].stderrs[1])
                     << genome_cells(
                            {genomes[i].begin(),
                             genomes[i].begin() +
                                 static_cast<std::ptrdiff_t>(
                                     config_.slice_count)},
                            genome_duration(genomes[i]))
                     << "\n";
            }
        }
        if (log_rows) log_.flush();
        return evals;
    }

    double genome_duration(const std::vector<double>& genome) const {
        return genome_has_duration_ ? genome.back() : config_.duration;
    }

    std::uint64_t log_offset() {
        log_.flush();
        return static_cast<std::uint64_t>(fs::file_size(log_path()));
    }

    void write_checkpoint(json state) {
        state["format"] = 1;
        state["version"] = kVersion;
        state["algorithm"] = to_string(config_.algorithm);
        state["master_seed"] = config_.master_seed;
        state["config_ini"] = config_.to_ini();
        state["log_bytes"] = log_offset();
        atomic_write(checkpoint_path(), state.dump(2) + "\n");
    }

    const RunConfig& config() const { return config_; }
    const SpectralNoiseModel& model() const { return model_; }

private:
    void write_manifest() {
        json manifest{{"version", kVersion},
                      {"algorithm", to_string(config_.algorithm)},
                      {"master_seed", config_.master_seed},
                      {"config_ini", config_.to_ini()}};
        atomic_write(dir_ / "manifest.json", manifest.dump(2) + "\n");
    }

    RunConfig config_;
    SpectralNoiseModel model_;
    DynamicsSettings settings_;
    bool genome_has_duration_;
    fs::path dir_;
    std::ofstream log_;
};

void write_front_files(RunContext& ctx, const std::vector<Individual>& archive) {
    // validated postcondition: rows must be mutually non-dominated
    for (std::size_t i = 0; i < archive.size(); ++i) {
        for (std::size_t j = 0; j < archive.size(); ++j) {
            if (i != j &&
                dominates(archive[i].objectives, archive[j].objectives)) {
                throw std::logic_error("front file would contain a dominated row");
            }
        }
    }
    std::vector<Individual> sorted = archive;
    std::sort(sorted.begin(), sorted.end(),
              [](const Individual& a, const Individual& b) {
                  return a.objectives < b.objectives;
              });

    std::ostringstream csv;
    csv << "generation_found,F,F_stderr,G,G_stderr"
        << genome_header(ctx.config().slice_count) << "\n";
    std::vector<std::pair<double, double>> points;
    for (const auto& ind : sorted) {
        const double duration = ctx.genome_duration(ind.genome);
        csv << ind.generation_found << "," << format_double(ind.objectives[0])
            << "," << format_double(ind.stderrs[0]) << ","
            << format_double(ind.objectives[1]) << ","
            << format_double(ind.stderrs[1])
            << genome_cells({ind.genome.begin(),
                             ind.genome.begin() + static_cast<std::ptrdiff_t>(
                                                      ctx.config().slice_count)},
                            duration)
            << "\n";
        points.emplace_back(ind.objectives[1], ind.objectives[0]);
    }
    atomic_write(ctx.dir() / "front.csv", csv.str());

    std::ostringstream label;
    label << "noise " << ctx.config().noise_level * 100.0 << "%";
    write_front_svg({FrontSeries{label.str(), points}},
                    (ctx.dir() / "front.svg").string());
}

void run_nsga3_experiment(RunContext& ctx,
                          std::optional<Nsga3State> start = std::nullopt) {
    const RunConfig& config = ctx.config();
    Nsga3Config alg;
    alg.objective_count = 2;
    alg.divisions = config.nsga3_divisions;
    alg.population_size = config.nsga3_population;
    alg.generations = config.nsga3_generations;
    alg.crossover_prob = config.crossover_prob;
    alg.crossover_eta = config.crossover_eta;
    alg.mutation_prob = config.mutation_prob;
    alg.mutation_eta = config.mutation_eta;

    const Bounds bounds = genome_bounds(config, true);
    auto objective = [&ctx](const std::vector<std::vector<double>>& genomes,
                            std::uint64_t eval_key) {
        return ctx.evaluate_batch(genomes, eval_key);
    };
    auto callback = [&ctx, &config](const Nsga3State& state,
                                    const std::vector<Individual>&) {
        const std::uint64_t done = state.next_generation - 1;
        if (config.checkpoint_every != 0 &&
            (done % config.checkpoint_every == 0 ||
             done == config.nsga3_generations)) {
            json j;
            j["nsga3"]["next_generation"] = state.next_generation;
            auto& pop = j["nsga3"]["population"] = json::array();
            for (const auto& ind : state.population) {
                pop.push_back(individual_to_json(ind));
            }
            auto& arch = j["nsga3"]["archive"] = json::array();
            for (const auto& ind : state.archive) {
                arch.push_back(individual_to_json(ind));
            }
            ctx.write_checkpoint(std::move(j));
        }
    };
    const Nsga3Result result = run_nsga3(alg, bounds, objective,
                                         config.master_seed, callback,
                                         std::move(start));
    write_front_files(ctx, result.archive);
}

json cmaes_state_to_json(const CmaesState& state) {
    json h = json::array();
    for (const auto& s : state.history) {
        h.push_back(json{{"generation", s.generation},
                         {"best", s.best},
                         {"median", s.median},
                         {"best_ever", s.best_ever},
                         {"step_size", s.step_size}});
    }
    return json{{"next_generation", state.next_generation},
                {"mean", state.mean},
                {"sigma", state.sigma},
                {"covariance", state.covariance},
                {"path_sigma", state.path_sigma},
                {"path_c", state.path_c},
                {"best_genome", state.best_genome},
                {"best_estimate", state.best_estimate},
                {"best_reported", state.best_reported},
                {"best_eval_count", state.best_eval_count},
                {"history", h}};
}

CmaesState cmaes_state_from_json(const json& j) {
    CmaesState state;
    state.next_generation = j.at("next_generation").get<std::uint64_t>();
    state.mean = j.at("mean").get<std::vector<double>>();
    state.sigma = j.at("sigma").get<double>();
    state.covariance = j.at("covariance").get<std::vector<double>>();
    state.path_sigma = j.at("path_sigma").get<std::vector<double>>();
    state.path_c = j.at("path_c").get<std::vector<double>>();
    state.best_genome = j.at("best_genome").get<std::vector<double>>();
    state.best_estimate = j.at("best_estimate").get<double>();
    state.best_reported = j.at("best_reported").get<double>();
    state.best_eval_count = j.at("best_eval_count").get<std::size_t>();
    for (const auto& s : j.at("history")) {
        CmaesGenerationStats stats;
        stats.generation = s.at("generation").get<std::uint64_t>();
        stats.best = s.at("best").get<double>();
        stats.median = s.at("median").get<double>();
        stats.best_ever = s.at("best_ever").get<double>();
        stats.step_size = s.at("step_size").get<double>();
        state.history.push_back(stats);
    }
    return state;
}

void run_cmaes_experiment(RunContext& ctx,
                          std::optional<CmaesState> start = std::nullopt) {
    const RunConfig& config = ctx.config();
    CmaesConfig alg;
    alg.population_size = config.cmaes_population;
    alg.generations = config.cmaes_generations;
    alg.initial_step_factor = config.cmaes_initial_step_factor;
    alg.reevaluate_every = config.cmaes_reevaluate_every;

    const Bounds bounds = genome_bounds(config, config.cmaes_optimize_duration);
    // All phases start at pi (a constant-phase pulse).
    alg.initial_mean.assign(config.slice_count, M_PI);
    if (config.cmaes_optimize_duration) {
        alg.initial_mean.push_back(config.duration);
    }

    auto objective = [&ctx](const std::vector<std::vector<double>>& genomes,
                            std::uint64_t eval_key) {
        const auto evals = ctx.evaluate_batch(genomes, eval_key);
        std::vector<double> out(evals.size());
        for (std::size_t i = 0; i < evals.size(); ++i) {
            out[i] = evals[i].objectives[0];
        }
        return out;
    };
    auto callback = [&ctx, &config](const CmaesState& state) {
        const std::uint64_t done = state.next_generation - 1;
        if (config.checkpoint_every != 0 &&
            (done % config.checkpoint_every == 0 ||
             done == config.cmaes_generations)) {
            json j;
            j["cmaes"] = cmaes_state_to_json(state);
            ctx.write_checkpoint(std::move(j));
        }
    };
    const CmaesResult result = run_cmaes(alg, bounds, objective,
                                         config.master_seed, callback,
                                         std::move(start));

    // best.csv: the incumbent with a fresh full evaluation
    const ObjectiveEstimate best =
        evaluate_genome(config, result.best_genome);
    std::ostringstream best_csv;
    best_csv << "F,F_stderr,G,G_stderr"
             << genome_header(config.slice_count) << "\n";
    best_csv << format_double(best.infidelity_mean) << ","
             << format_double(best.infidelity_stderr) << ","
             << format_double(best.rydberg_time_mean) << ","
             << format_double(best.rydberg_time_stderr)
             << genome_cells(
                    {result.best_genome.begin(),
                     result.best_genome.begin() +
                         static_cast<std::ptrdiff_t>(config.slice_count)},
                    ctx.genome_duration(result.best_genome))
             << "\n";
    atomic_write(ctx.dir() / "best.csv", best_csv.str());

    std::ostringstream history;
    history << "generation,best,median,best_ever,step_size\n";
    for (const auto& s : result.history) {
        history << s.generation << "," << format_double(s.best) << ","
                << format_double(s.median) << "," << format_double(s.best_ever)
                << "," << format_double(s.step_size) << "\n";
    }
    atomic_write(ctx.dir() / "history.csv", history.str());
}

void run_evaluate_only(RunContext& ctx) {
    const RunConfig& config = ctx.config();
    std::vector<double> genome(config.slice_count, 0.0);
    genome.push_back(config.duration);
    const ObjectiveEstimate est = evaluate_genome(config, genome);
    write_result_csv(config, genome, est,
                     (ctx.dir() / "result.csv").string());
}

} // namespace

void write_result_csv(const RunConfig& config,
                      const std::vector<double>& genome,
                      const ObjectiveEstimate& estimate,
                      const std::string& path) {
    const PulseSchedule schedule = schedule_from_genome(genome, config);
    std::ostringstream csv;
    csv << "F,F_stderr,G,G_stderr" << genome_header(config.slice_count)
        << "\n";
    csv << format_double(estimate.infidelity_mean) << ","
        << format_double(estimate.infidelity_stderr) << ","
        << format_double(estimate.rydberg_time_mean) << ","
        << format_double(estimate.rydberg_time_stderr)
        << genome_cells(schedule.phases, schedule.duration) << "\n";
    atomic_write(path, csv.str());
}

void run_experiment(const RunConfig& config) {
    config.validate();
    const bool genome_has_duration =
        config.algorithm != Algorithm::Cmaes || config.cmaes_optimize_duration;
    RunContext ctx(config, genome_has_duration, /*fresh_start=*/true);
    switch (config.algorithm) {
        case Algorithm::Nsga3: run_nsga3_experiment(ctx); break;
        case Algorithm::Cmaes: run_cmaes_experiment(ctx); break;
        case Algorithm::EvaluateOnly: run_evaluate_only(ctx); break;
    }
}

void run_experiment_file(const std::string& config_path) {
    run_experiment(RunConfig::from_file(config_path));
}

void resume_experiment(const std::string& checkpoint_path) {
    std::ifstream in(checkpoint_path);
    if (!in) {
        throw std::runtime_error("cannot open checkpoint: " + checkpoint_path);
    }
    json j = json::parse(in);
    const RunConfig config =
        RunConfig::from_string(j.at("config_ini").get<std::string>());

    // Guard: the checkpoint must match the manifest of the run directory.
    const fs::path manifest_path = fs::path(config.output_dir) / "manifest.json";
    std::ifstream manifest_in(manifest_path);
    if (!manifest_in) {
        throw std::runtime_error("resume: missing manifest " +
                                 manifest_path.string());
    }
    json manifest = json::parse(manifest_in);
    if (manifest.at("config_ini").get<std::string>() !=
            j.at("config_ini").get<std::string>() ||
        manifest.at("master_seed").get<std::uint64_t>() !=
            j.at("master_seed").get<std::uint64_t>()) {
        throw std::runtime_error(
            "resume: checkpoint does not match the run directory's config/seed");
    }

    // Drop log rows written after the checkpoint.
    const std::uint64_t log_bytes = j.at("log_bytes").get<std::uint64_t>();
    const fs::path log_path = fs::path(config.output_dir) / "generations.csv";
    if (fs::exists(log_path) && fs::file_size(log_path) > log_bytes) {
        fs::resize_file(log_path, log_bytes);
    }

    const bool genome_has_duration =
        config.algorithm != Algorithm::Cmaes || config.cmaes_optimize_duration;
    RunContext ctx(config, genome_has_duration, /*fresh_start=*/false);
    if (config.algorithm == Algorithm::Nsga3) {
        Nsga3State state;
        const json& n = j.at("nsga3");
        state.next_generation = n.at("next_generation").get<std::uint64_t>();
        for (const auto& ind : n.at("population")) {
            state.population.push_back(individual_from_json(ind));
        }
        for (const auto& ind : n.at("archive")) {
            state.archive.push_back(individual_from_json(ind));
        }
        run_nsga3_experiment(ctx, std::move(state));
    } else if (config.algorithm == Algorithm::Cmaes) {
        run_cmaes_experiment(ctx, cmaes_state_from_json(j.at("cmaes")));
    } else {
        throw std::runtime_error("resume: nothing to resume for evaluate-only");
    }
}

void plot_front_files(const std::vector<std::string>& csv_paths,
                      const std::string& out_svg) {
    std::vector<FrontSeries> series;
    for (const auto& path : csv_paths) {
        const CsvTable table = read_csv(path);
        if (table.rows.empty()) {
            throw std::runtime_error("front csv has no rows: " + path);
        }
        const std::size_t f_col = table.column("F");
        const std::size_t g_col = table.column("G");
        FrontSeries s;
        s.label = fs::path(path).stem().string();
        for (const auto& row : table.rows) {
            s.points.emplace_back(row[g_col], row[f_col]);
        }
        series.push_back(std::move(s));
    }
    write_front_svg(series, out_svg);
}

void dump_noise_csv(const RunConfig& config, double t_max,
                    std::size_t sample_count, const std::string& out_path) {
    if (sample_count < 2 || !(t_max > 0.0)) {
        throw std::invalid_argument("dump_noise_csv: need t_max > 0, samples >= 2");
    }
    const SpectralNoiseModel model = config.noise_model();
    RngStream stream(config.master_seed, StreamPurpose::Trajectory, 0, 0, 0);
    const NoiseRealization noise = NoiseRealization::sample(model, stream);
    std::ostringstream csv;
    csv << "t,eps_a,eps_d\n";
    const double dt = t_max / static_cast<double>(sample_count - 1);
    for (std::size_t i = 0; i < sample_count; ++i) {
        const double t = dt * static_cast<double>(i);
        const NoiseSample s = noise.evaluate(t);
        csv << format_double(t) << "," << format_double(s.amplitude) << ","
            << format_double(s.dephasing) << "\n";
    }
    atomic_write(out_path, csv.str());
}

} // namespace rydpulse
