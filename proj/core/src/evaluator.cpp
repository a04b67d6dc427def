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

#include "rydpulse/evaluator.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace rydpulse {

namespace {

// Sample mean and standard error accumulated in fixed trajectory order with
// compensated summation, so the reduction is independent of threading.
struct Accumulator {
    double sum = 0.0, comp = 0.0;
    double sum_sq = 0.0, comp_sq = 0.0;
    std::size_t n = 0;

    void add(double x) {
        add_to(sum, comp, x);
        add_to(sum_sq, comp_sq, x * x);
        ++n;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double stderr_of_mean() const {
        if (n < 2) return 0.0;
        const double nn = static_cast<double>(n);
        const double var = (sum_sq - sum * sum / nn) / (nn - 1.0);
        return var > 0.0 ? std::sqrt(var / nn) : 0.0;
    }

private:
    static void add_to(double& s, double& c, double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

} // namespace

ObjectiveEstimate estimate_objectives(const PulseSchedule& schedule,
                                      const SpectralNoiseModel& model,
                                      const DynamicsSettings& settings,
                                      const EvaluationBudget& budget,
                                      std::size_t candidate_index) {
    if (!schedule.valid()) {
        return ObjectiveEstimate{1.0, 0.0, schedule.duration, 0.0, false};
    }
    DynamicsSettings local = settings;
    local.substeps = budget.substeps;

    Accumulator f_acc;
    Accumulator g_acc;
    const std::uint64_t candidate_key =
        budget.common_random_numbers ? 0 : candidate_index;
    for (std::size_t i = 0; i < budget.trajectory_count; ++i) {
        RngStream stream(budget.master_seed, StreamPurpose::Trajectory,
                         budget.generation, candidate_key, i);
        const NoiseRealization noise =
            model.noise_level() > 0.0 ? NoiseRealization::sample(model, stream)
                                      : NoiseRealization::zero(model);
        const TrajectoryResult traj = propagate(schedule, noise, local);
        f_acc.add(traj.infidelity);
        g_acc.add(traj.rydberg_time);
    }
    return ObjectiveEstimate{f_acc.mean(), f_acc.stderr_of_mean(), g_acc.mean(),
                             g_acc.stderr_of_mean(), true};
}

std::vector<ObjectiveEstimate> batch_evaluate(
    const std::vector<PulseSchedule>& population,
    const SpectralNoiseModel& model, const DynamicsSettings& settings,
    const EvaluationBudget& budget) {
    std::vector<ObjectiveEstimate> results(population.size());
    std::size_t workers = budget.threads;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, population.size());

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= population.size()) break;
            results[i] =
                estimate_objectives(population[i], model, settings, budget, i);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

} // namespace rydpulse
