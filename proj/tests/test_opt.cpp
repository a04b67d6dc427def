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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rydpulse/cmaes.hpp"
#include "rydpulse/nsga3.hpp"
#include "rydpulse/pareto.hpp"

using namespace rydpulse;

namespace {

// Peeling-based reference sort: O(n^2 * fronts), independent of the
// production implementation.
std::vector<std::size_t> brute_force_ranks(
    const std::vector<ObjectiveVector>& objs) {
    const std::size_t n = objs.size();
    std::vector<std::size_t> rank(n, 0);
    std::vector<bool> assigned(n, false);
    std::size_t level = 0;
    std::size_t remaining = n;
    while (remaining > 0) {
        std::vector<std::size_t> current;
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && !assigned[j] && dominates(objs[j], objs[i])) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) current.push_back(i);
        }
        for (std::size_t i : current) {
            rank[i] = level;
            assigned[i] = true;
        }
        remaining -= current.size();
        ++level;
    }
    return rank;
}

// Schaffer-style convex bi-objective problem: f1 = x^2, f2 = (x - 2)^2.
std::vector<Evaluation> schaffer(const std::vector<std::vector<double>>& genomes,
                                 std::uint64_t) {
    std::vector<Evaluation> out(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) {
        const double x = genomes[i][0];
        out[i].objectives = {x * x, (x - 2.0) * (x - 2.0)};
        out[i].stderrs = {0.0, 0.0};
    }
    return out;
}

} // namespace

TEST_SUITE("pareto") {

TEST_CASE("dominance relation") {
    CHECK(dominates({1.0, 2.0}, {2.0, 3.0}));
    CHECK(dominates({1.0, 2.0}, {1.0, 3.0}));
    CHECK_FALSE(dominates({1.0, 2.0}, {1.0, 2.0}));
    CHECK_FALSE(dominates({1.0, 3.0}, {2.0, 2.0}));
    CHECK_FALSE(dominates({2.0, 3.0}, {1.0, 2.0}));
}

TEST_CASE("fast sort matches brute force on random populations") {
    RngStream rng(404, StreamPurpose::Generic);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<ObjectiveVector> objs(40, ObjectiveVector(2));
        for (auto& o : objs) {
            // coarse integer grid so equal values and ties occur
            o[0] = static_cast<double>(rng.next_below(10));
            o[1] = static_cast<double>(rng.next_below(10));
        }
        const auto fronts = fast_nondominated_sort(objs);
        const auto expected = brute_force_ranks(objs);
        std::size_t covered = 0;
        for (std::size_t f = 0; f < fronts.size(); ++f) {
            for (std::size_t i : fronts[f]) {
                CHECK(expected[i] == f);
                ++covered;
            }
        }
        CHECK(covered == objs.size());
    }
}

TEST_CASE("hypervolume oracle values") {
    CHECK(hypervolume_2d({{1.0, 1.0}}, 2.0, 2.0) == doctest::Approx(1.0));
    CHECK(hypervolume_2d({{0.0, 1.0}, {1.0, 0.0}}, 2.0, 2.0) ==
          doctest::Approx(3.0));
    // dominated point adds nothing
    CHECK(hypervolume_2d({{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}, 2.0, 2.0) ==
          doctest::Approx(3.0));
    // point outside the reference box contributes nothing
    CHECK(hypervolume_2d({{3.0, 3.0}}, 2.0, 2.0) == doctest::Approx(0.0));
    CHECK(hypervolume_2d({}, 2.0, 2.0) == doctest::Approx(0.0));
}

} // TEST_SUITE pareto

TEST_SUITE("nsga3") {

TEST_CASE("das-dennis lattice for two objectives") {
    const auto p4 = das_dennis_points(2, 4);
    REQUIRE(p4.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(p4[i][0] == doctest::Approx(0.25 * i));
        CHECK(p4[i][1] == doctest::Approx(1.0 - 0.25 * i));
    }
    CHECK(das_dennis_points(2, 99).size() == 100);
    CHECK(das_dennis_points(3, 2).size() == 6);
    // every point sums to one
    for (const auto& p : das_dennis_points(3, 5)) {
        CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0));
    }
}

TEST_CASE("das-dennis input guards") {
    CHECK_THROWS_AS(das_dennis_points(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(das_dennis_points(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(das_dennis_points(10, 50), std::overflow_error);
}

TEST_CASE("association assigns axis points to axis directions") {
    const std::vector<ObjectiveVector> objs{{0.0, 1.0}, {1.0, 0.0}, {0.5, 0.5}};
    const auto refs = das_dennis_points(2, 2); // (0,1), (.5,.5), (1,0)
    const auto assoc = normalize_and_associate(objs, refs);
    CHECK(assoc.ref_index[0] == 0);
    CHECK(assoc.ref_index[1] == 2);
    CHECK(assoc.ref_index[2] == 1);
    for (double d : assoc.distance) CHECK(d < 1e-9);
}

TEST_CASE("association ties break to the lowest reference index") {
    // a point on the bisector is equidistant from both axis directions
    const std::vector<ObjectiveVector> objs{{0.0, 2.0}, {2.0, 0.0}, {1.0, 1.0}};
    const std::vector<ObjectiveVector> refs{{1.0, 0.0}, {0.0, 1.0}};
    const auto assoc = normalize_and_associate(objs, refs);
    CHECK(assoc.ref_index[2] == 0);
}

TEST_CASE("niching fills the empty niche with the closest member") {
    // members 0, 1 belong to reference 0, member 2 to reference 1
    Association assoc;
    assoc.ref_index = {0, 0, 1};
    assoc.distance = {0.5, 0.2, 0.9};
    RngStream rng(1, StreamPurpose::Niching);
    const auto chosen =
        niching_select({0, 1, 2}, assoc, {0, 1}, 2, 1, rng);
    REQUIRE(chosen.size() == 1);
    CHECK(chosen[0] == 1); // reference 0 has the lower count; 1 is closest
}

TEST_CASE("niching skips exhausted references") {
    Association assoc;
    assoc.ref_index = {1};
    assoc.distance = {0.3};
    RngStream rng(2, StreamPurpose::Niching);
    // reference 0 has the minimal count but no members
    const auto chosen = niching_select({0}, assoc, {0, 5}, 2, 1, rng);
    REQUIRE(chosen.size() == 1);
    CHECK(chosen[0] == 0);
}

TEST_CASE("niching never selects a member twice") {
    Association assoc;
    assoc.ref_index = {0, 0, 0, 0};
    assoc.distance = {0.4, 0.1, 0.3, 0.2};
    RngStream rng(3, StreamPurpose::Niching);
    auto chosen = niching_select({0, 1, 2, 3}, assoc, {0}, 1, 4, rng);
    std::sort(chosen.begin(), chosen.end());
    CHECK(chosen == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("niching rejects more slots than members") {
    Association assoc;
    assoc.ref_index = {0};
    assoc.distance = {0.0};
    RngStream rng(4, StreamPurpose::Niching);
    CHECK_THROWS_AS(niching_select({0}, assoc, {0}, 1, 2, rng),
                    std::invalid_argument);
}

TEST_CASE("sbx preserves the parent sum when clipping is inactive") {
    Bounds b;
    b.lower.assign(5, -100.0);
    b.upper.assign(5, 100.0);
    const std::vector<double> p1{1.0, 2.0, -3.0, 0.5, 4.0};
    const std::vector<double> p2{0.0, -1.0, 2.0, 1.5, 3.0};
    RngStream rng(6, StreamPurpose::Crossover);
    for (int rep = 0; rep < 500; ++rep) {
        const auto [c1, c2] = sbx_crossover(p1, p2, b, 1.0, 30.0, rng);
        for (std::size_t i = 0; i < p1.size(); ++i) {
            CHECK(c1[i] + c2[i] == doctest::Approx(p1[i] + p2[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("sbx children stay within bounds; contraction and expansion are "
          "equally likely") {
    Bounds b;
    b.lower.assign(1, 0.0);
    b.upper.assign(1, 1.0);
    const std::vector<double> p1{0.3};
    const std::vector<double> p2{0.7};
    const double parent_spread = std::abs(p1[0] - p2[0]);
    RngStream rng(7, StreamPurpose::Crossover);
    const int n = 20000;
    int crossed = 0, contracted = 0;
    for (int rep = 0; rep < n; ++rep) {
        const auto [c1, c2] = sbx_crossover(p1, p2, b, 1.0, 30.0, rng);
        REQUIRE(c1[0] >= 0.0);
        REQUIRE(c1[0] <= 1.0);
        REQUIRE(c2[0] >= 0.0);
        REQUIRE(c2[0] <= 1.0);
        const double spread = std::abs(c1[0] - c2[0]);
        if (spread != parent_spread) {
            ++crossed;
            if (spread < parent_spread) ++contracted;
        }
    }
    REQUIRE(crossed > 0);
    const double fraction = static_cast<double>(contracted) / crossed;
    CHECK(std::abs(fraction - 0.5) <
          3.0 * std::sqrt(0.25 / static_cast<double>(crossed)));
}

TEST_CASE("sbx with zero probability copies the parents") {
    Bounds b;
    b.lower.assign(2, 0.0);
    b.upper.assign(2, 1.0);
    RngStream rng(8, StreamPurpose::Crossover);
    const auto [c1, c2] =
        sbx_crossover({0.1, 0.9}, {0.4, 0.2}, b, 0.0, 30.0, rng);
    CHECK(c1 == std::vector<double>{0.1, 0.9});
    CHECK(c2 == std::vector<double>{0.4, 0.2});
}

TEST_CASE("polynomial mutation hits the configured rate") {
    Bounds b;
    b.lower.assign(10, 0.0);
    b.upper.assign(10, 1.0);
    const std::vector<double> genome(10, 0.5);
    const double p = 0.1;
    RngStream rng(9, StreamPurpose::Mutation);
    const int trials = 20000;
    int mutated = 0;
    for (int rep = 0; rep < trials; ++rep) {
        const auto out = polynomial_mutation(genome, b, p, 20.0, rng);
        for (std::size_t i = 0; i < out.size(); ++i) {
            REQUIRE(out[i] >= 0.0);
            REQUIRE(out[i] <= 1.0);
            if (out[i] != genome[i]) ++mutated;
        }
    }
    const double total = 10.0 * trials;
    const double rate = mutated / total;
    const double se = std::sqrt(p * (1.0 - p) / total);
    CHECK(std::abs(rate - p) < 3.0 * se);
}

TEST_CASE("polynomial mutation with zero probability is the identity") {
    Bounds b;
    b.lower.assign(3, 0.0);
    b.upper.assign(3, 1.0);
    RngStream rng(10, StreamPurpose::Mutation);
    const std::vector<double> genome{0.2, 0.5, 0.8};
    CHECK(polynomial_mutation(genome, b, 0.0, 20.0, rng) == genome);
}

TEST_CASE("pareto filter keeps the non-dominated set, first wins ties") {
    auto make = [](double f, double g, std::uint64_t gen) {
        Individual ind;
        ind.objectives = {f, g};
        ind.generation_found = gen;
        return ind;
    };
    const auto kept = pareto_filter({make(1.0, 2.0, 0), make(2.0, 1.0, 1),
                                     make(1.0, 2.0, 2), make(3.0, 3.0, 3),
                                     make(0.5, 3.0, 4)});
    REQUIRE(kept.size() == 3);
    // the duplicate (1,2) from generation 2 and the dominated (3,3) are gone
    for (const auto& ind : kept) CHECK(ind.generation_found != 2);
    for (const auto& ind : kept) CHECK(ind.generation_found != 3);
}

TEST_CASE("run on the Schaffer problem covers the true front") {
    Bounds b;
    b.lower = {-2.0};
    b.upper = {4.0};
    Nsga3Config cfg;
    cfg.population_size = 40;
    cfg.generations = 40;
    cfg.divisions = 39;
    cfg.mutation_prob = 0.5;
    const auto result = run_nsga3(cfg, b, schaffer, 2024);

    REQUIRE(!result.archive.empty());
    // archive is mutually non-dominated
    for (const auto& a : result.archive) {
        for (const auto& c : result.archive) {
            if (&a == &c) continue;
            CHECK_FALSE(dominates(a.objectives, c.objectives));
        }
    }
    std::vector<ObjectiveVector> attained;
    for (const auto& ind : result.archive) attained.push_back(ind.objectives);
    const double hv = hypervolume_2d(attained, 5.0, 5.0);

    std::vector<ObjectiveVector> truth;
    for (int i = 0; i <= 20000; ++i) {
        const double x = 2.0 * i / 20000.0;
        truth.push_back({x * x, (x - 2.0) * (x - 2.0)});
    }
    const double hv_true = hypervolume_2d(truth, 5.0, 5.0);
    CHECK(hv >= 0.95 * hv_true);
}

TEST_CASE("identical seeds give identical runs; resumed runs match") {
    Bounds b;
    b.lower = {-2.0};
    b.upper = {4.0};
    Nsga3Config cfg;
    cfg.population_size = 20;
    cfg.generations = 20;
    cfg.divisions = 19;
    cfg.mutation_prob = 0.5;

    Nsga3State snapshot;
    auto capture = [&snapshot](const Nsga3State& state,
                               const std::vector<Individual>&) {
        if (state.next_generation == 11) snapshot = state;
    };
    const auto full = run_nsga3(cfg, b, schaffer, 77, capture);
    const auto again = run_nsga3(cfg, b, schaffer, 77);
    const auto resumed = run_nsga3(cfg, b, schaffer, 77, nullptr, snapshot);

    REQUIRE(full.population.size() == again.population.size());
    REQUIRE(full.population.size() == resumed.population.size());
    for (std::size_t i = 0; i < full.population.size(); ++i) {
        CHECK(full.population[i].genome == again.population[i].genome);
        CHECK(full.population[i].genome == resumed.population[i].genome);
        CHECK(full.population[i].objectives == resumed.population[i].objectives);
    }
    REQUIRE(full.archive.size() == resumed.archive.size());
    for (std::size_t i = 0; i < full.archive.size(); ++i) {
        CHECK(full.archive[i].objectives == resumed.archive[i].objectives);
    }
}

} // TEST_SUITE nsga3

TEST_SUITE("cmaes") {

TEST_CASE("solves the 20-d sphere far below 1e-8") {
    const std::size_t d = 20;
    Bounds b;
    b.lower.assign(d, 0.0);
    b.upper.assign(d, 1.0);
    CmaesConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 300;
    auto sphere = [](const std::vector<std::vector<double>>& xs, std::uint64_t) {
        std::vector<double> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double s = 0.0;
            for (double x : xs[i]) s += (x - 0.5) * (x - 0.5);
            out[i] = s;
        }
        return out;
    };
    const auto result = run_cmaes(cfg, b, sphere, 7);
    CHECK(result.best_objective <= 1e-8);
    // recorded best is non-increasing
    for (std::size_t i = 1; i < result.history.size(); ++i) {
        CHECK(result.history[i].best_ever <= result.history[i - 1].best_ever);
    }
}

TEST_CASE("flat objective stays in bounds without progress or crash") {
    Bounds b;
    b.lower.assign(5, -1.0);
    b.upper.assign(5, 1.0);
    CmaesConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 30;
    auto flat = [](const std::vector<std::vector<double>>& xs, std::uint64_t) {
        return std::vector<double>(xs.size(), 1.0);
    };
    const auto result = run_cmaes(cfg, b, flat, 3);
    CHECK(result.best_objective == 1.0);
    for (double x : result.best_genome) {
        CHECK(x >= -1.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("every delivered candidate lies within bounds") {
    Bounds b;
    b.lower.assign(4, 0.45);
    b.upper.assign(4, 0.55);
    CmaesConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 40;
    cfg.initial_step_factor = 3.0; // force frequent out-of-bounds samples
    bool all_in = true;
    auto objective = [&](const std::vector<std::vector<double>>& xs,
                         std::uint64_t) {
        std::vector<double> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < xs[i].size(); ++j) {
                if (xs[i][j] < 0.45 || xs[i][j] > 0.55) all_in = false;
                s += (xs[i][j] - 0.5) * (xs[i][j] - 0.5);
            }
            out[i] = s;
        }
        return out;
    };
    run_cmaes(cfg, b, objective, 5);
    CHECK(all_in);
}

TEST_CASE("identical seeds give identical runs; resumed runs match") {
    Bounds b;
    b.lower.assign(6, -2.0);
    b.upper.assign(6, 2.0);
    CmaesConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 60;
    auto rosen = [](const std::vector<std::vector<double>>& xs, std::uint64_t) {
        std::vector<double> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j + 1 < xs[i].size(); ++j) {
                const double a = xs[i][j + 1] - xs[i][j] * xs[i][j];
                const double c = 1.0 - xs[i][j];
                s += 100.0 * a * a + c * c;
            }
            out[i] = s;
        }
        return out;
    };
    CmaesState snapshot;
    auto capture = [&snapshot](const CmaesState& state) {
        if (state.next_generation == 31) snapshot = state;
    };
    const auto full = run_cmaes(cfg, b, rosen, 99, capture);
    const auto again = run_cmaes(cfg, b, rosen, 99);
    const auto resumed = run_cmaes(cfg, b, rosen, 99, nullptr, snapshot);
    CHECK(full.best_objective == again.best_objective);
    CHECK(full.best_objective == resumed.best_objective);
    CHECK(full.best_genome == resumed.best_genome);
    REQUIRE(full.history.size() == resumed.history.size());
    CHECK(full.history.back().step_size == resumed.history.back().step_size);
}

TEST_CASE("re-evaluation keys are distinguishable from generation keys") {
    Bounds b;
    b.lower.assign(3, 0.0);
    b.upper.assign(3, 1.0);
    CmaesConfig cfg;
    cfg.population_size = 8;
    cfg.generations = 25;
    cfg.reevaluate_every = 10;
    bool saw_reevaluation = false;
    auto objective = [&](const std::vector<std::vector<double>>& xs,
                         std::uint64_t key) {
        if (key >= kReevaluationKeyBase) saw_reevaluation = true;
        std::vector<double> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double s = 0.0;
            for (double x : xs[i]) s += x * x;
            out[i] = s;
        }
        return out;
    };
    run_cmaes(cfg, b, objective, 4);
    CHECK(saw_reevaluation);
}

} // TEST_SUITE cmaes
