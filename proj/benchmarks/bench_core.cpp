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

#include <benchmark/benchmark.h>

#include "rydpulse/dynamics.hpp"
#include "rydpulse/evaluator.hpp"
#include "rydpulse/noise.hpp"

using namespace rydpulse;

namespace {

PulseSchedule bench_schedule() {
    RngStream rng(1, StreamPurpose::Generic);
    PulseSchedule s;
    s.phases.resize(50);
    for (auto& p : s.phases) p = rng.uniform(0.0, kTwoPi);
    s.duration = 1.0;
    return s;
}

void BM_NoiseSample(benchmark::State& state) {
    const SpectralNoiseModel model(0.10);
    std::uint64_t i = 0;
    for (auto _ : state) {
        RngStream stream(1, StreamPurpose::Trajectory, 0, i++);
        benchmark::DoNotOptimize(NoiseRealization::sample(model, stream));
    }
}
BENCHMARK(BM_NoiseSample);

void BM_NoiseGridSampler(benchmark::State& state) {
    const SpectralNoiseModel model(0.10);
    RngStream stream(1, StreamPurpose::Trajectory);
    const auto noise = NoiseRealization::sample(model, stream);
    for (auto _ : state) {
        NoiseGridSampler grid(noise, 0.0, 1.0 / 400.0);
        double acc = 0.0;
        for (int i = 0; i < 400; ++i) {
            acc += grid.value().dephasing;
            grid.advance();
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_NoiseGridSampler);

void BM_Propagate(benchmark::State& state) {
    const SpectralNoiseModel model(0.10);
    RngStream stream(1, StreamPurpose::Trajectory);
    const auto noise = NoiseRealization::sample(model, stream);
    const auto schedule = bench_schedule();
    const DynamicsSettings settings{kTwoPi / 4.0,
                                    static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(schedule, noise, settings));
    }
}
BENCHMARK(BM_Propagate)->Arg(4)->Arg(8)->Arg(32);

void BM_BatchEvaluate(benchmark::State& state) {
    const SpectralNoiseModel model(0.10);
    const DynamicsSettings settings{kTwoPi / 4.0, 8};
    const std::vector<PulseSchedule> population(8, bench_schedule());
    EvaluationBudget budget;
    budget.trajectory_count = static_cast<std::size_t>(state.range(0));
    budget.substeps = 8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            batch_evaluate(population, model, settings, budget));
    }
}
BENCHMARK(BM_BatchEvaluate)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
