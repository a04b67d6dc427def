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

#include "rydpulse/nsga3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rydpulse {

namespace {

void das_dennis_recurse(std::size_t objective_count, std::size_t divisions,
                        std::size_t axis, std::size_t remaining,
                        std::vector<double>& scratch,
                        std::vector<ObjectiveVector>& out) {
    if (axis == objective_count - 1) {
        scratch[axis] = static_cast<double>(remaining) /
                        static_cast<double>(divisions);
        out.push_back(scratch);
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        scratch[axis] =
            static_cast<double>(k) / static_cast<double>(divisions);
        das_dennis_recurse(objective_count, divisions, axis + 1, remaining - k,
                           scratch, out);
    }
}

} // namespace

std::vector<ObjectiveVector> das_dennis_points(std::size_t objective_count,
                                               std::size_t divisions) {
    if (objective_count < 2 || divisions < 1) {
        throw std::invalid_argument("das_dennis_points: need M >= 2, P >= 1");
    }
    // count = C(M + P - 1, P); refuse anything that would not fit in memory.
    double count = 1.0;
    for (std::size_t i = 1; i <= divisions; ++i) {
        count *= static_cast<double>(objective_count - 1 + i) /
                 static_cast<double>(i);
        if (count > 1e8) {
            throw std::overflow_error("das_dennis_points: too many points");
        }
    }
    std::vector<ObjectiveVector> out;
    out.reserve(static_cast<std::size_t>(count + 0.5));
    std::vector<double> scratch(objective_count, 0.0);
    das_dennis_recurse(objective_count, divisions, 0, divisions, scratch, out);
    return out;
}

Association normalize_and_associate(
    const std::vector<ObjectiveVector>& objectives,
    const std::vector<ObjectiveVector>& refs) {
    const std::size_t n = objectives.size();
    const std::size_t m = objectives.empty() ? 0 : objectives.front().size();
    Association assoc;
    assoc.ref_index.assign(n, 0);
    assoc.distance.assign(n, 0.0);
    if (n == 0) return assoc;

    std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
    for (const auto& f : objectives) {
        for (std::size_t j = 0; j < m; ++j) ideal[j] = std::min(ideal[j], f[j]);
    }
    std::vector<ObjectiveVector> shifted(n, ObjectiveVector(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            shifted[i][j] = objectives[i][j] - ideal[j];
        }
    }

    // Extreme point per axis via the achievement scalarizing function.
    std::vector<std::size_t> extreme(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double asf = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double w = (k == j) ? 1.0 : 1e-6;
                asf = std::max(asf, shifted[i][k] / w);
            }
            if (asf < best) {
                best = asf;
                extreme[j] = i;
            }
        }
    }

    // Intercepts from the hyperplane through the extreme points (2-D case is
    // a plain 2x2 solve; general m uses Gaussian elimination). Fall back to
    // per-objective maxima when degenerate.
    std::vector<double> intercept(m, 0.0);
    bool hyperplane_ok = true;
    {
        std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) a[r][c] = shifted[extreme[r]][c];
            a[r][m] = 1.0;
        }
        for (std::size_t col = 0; col < m && hyperplane_ok; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < m; ++r) {
                if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
            }
            if (std::abs(a[pivot][col]) < 1e-12) {
                hyperplane_ok = false;
                break;
            }
            std::swap(a[col], a[pivot]);
            for (std::size_t r = 0; r < m; ++r) {
                if (r == col) continue;
                const double factor = a[r][col] / a[col][col];
                for (std::size_t c = col; c <= m; ++c) {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
        if (hyperplane_ok) {
            for (std::size_t r = 0; r < m; ++r) {
                const double beta = a[r][m] / a[r][r]; // hyperplane coefficient
                if (!(beta > 1e-12)) {
                    hyperplane_ok = false;
                    break;
                }
                intercept[r] = 1.0 / beta;
            }
        }
    }
    if (!hyperplane_ok) {
        for (std::size_t j = 0; j < m; ++j) {
            double mx = 0.0;
            for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, shifted[i][j]);
            intercept[j] = mx;
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (!(intercept[j] > 1e-12)) intercept[j] = 1.0;
    }

    // Perpendicular distance to each reference line through the origin.
    std::vector<ObjectiveVector> dirs(refs.size(), ObjectiveVector(m));
    for (std::size_t r = 0; r < refs.size(); ++r) {
        double norm = 0.0;
        for (std::size_t j = 0; j < m; ++j) norm += refs[r][j] * refs[r][j];
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < m; ++j) dirs[r][j] = refs[r][j] / norm;
    }
    for (std::size_t i = 0; i < n; ++i) {
        ObjectiveVector f(m);
        for (std::size_t j = 0; j < m; ++j) f[j] = shifted[i][j] / intercept[j];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_ref = 0;
        for (std::size_t r = 0; r < dirs.size(); ++r) {
            double proj = 0.0;
            for (std::size_t j = 0; j < m; ++j) proj += f[j] * dirs[r][j];
            double d2 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double perp = f[j] - proj * dirs[r][j];
                d2 += perp * perp;
            }
            if (d2 < best) {
                best = d2;
                best_ref = r;
            }
        }
        assoc.ref_index[i] = best_ref;
        assoc.distance[i] = std::sqrt(best);
    }
    return assoc;
}

std::vector<std::size_t> niching_select(const std::vector<std::size_t>& last_front,
                                        const Association& assoc,
                                        std::vector<std::size_t> niche_count,
                                        std::size_t ref_count,
                                        std::size_t slots, RngStream& rng) {
    if (slots > last_front.size()) {
        throw std::invalid_argument("niching_select: slots exceed front size");
    }
    std::vector<std::size_t> chosen;
    chosen.reserve(slots);
    std::vector<bool> taken(last_front.size(), false);
    std::vector<bool> ref_exhausted(ref_count, false);

    while (chosen.size() < slots) {
        // Reference direction with minimal niche count among non-exhausted
        // ones; random tie-break.
        std::size_t min_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < ref_count; ++r) {
            if (!ref_exhausted[r]) min_count = std::min(min_count, niche_count[r]);
        }
        std::vector<std::size_t> candidates;
        for (std::size_t r = 0; r < ref_count; ++r) {
            if (!ref_exhausted[r] && niche_count[r] == min_count) {
                candidates.push_back(r);
            }
        }
        const std::size_t ref =
            candidates[rng.next_below(candidates.size())];

        // Front members associated to this direction.
        std::vector<std::size_t> members; // positions within last_front
        for (std::size_t p = 0; p < last_front.size(); ++p) {
            if (!taken[p] && assoc.ref_index[last_front[p]] == ref) {
                members.push_back(p);
            }
        }
        if (members.empty()) {
            ref_exhausted[ref] = true;
            continue;
        }
        std::size_t pick;
        if (niche_count[ref] == 0) {
            pick = members.front();
            for (std::size_t p : members) {
                if (assoc.distance[last_front[p]] <
                    assoc.distance[last_front[pick]]) {
                    pick = p;
                }
            }
        } else {
            pick = members[rng.next_below(members.size())];
        }
        taken[pick] = true;
        chosen.push_back(last_front[pick]);
        ++niche_count[ref];
    }
    return chosen;
}

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& parent1, const std::vector<double>& parent2,
    const Bounds& bounds, double crossover_prob, double eta, RngStream& rng) {
    std::vector<double> c1 = parent1;
    std::vector<double> c2 = parent2;
    if (rng.next_double() >= crossover_prob) {
        return {c1, c2};
    }
    for (std::size_t i = 0; i < c1.size(); ++i) {
        if (rng.next_double() >= 0.5) continue; // per-variable gate
        const double u = rng.next_double();
        double beta;
        if (u <= 0.5) {
            beta = std::pow(2.0 * u, 1.0 / (eta + 1.0));
        } else {
            beta = std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        }
        const double x1 = parent1[i];
        const double x2 = parent2[i];
        c1[i] = bounds.clip(0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2), i);
        c2[i] = bounds.clip(0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2), i);
    }
    return {c1, c2};
}

std::vector<double> polynomial_mutation(const std::vector<double>& genome,
                                        const Bounds& bounds,
                                        double mutation_prob, double eta,
                                        RngStream& rng) {
    std::vector<double> out = genome;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (rng.next_double() >= mutation_prob) continue;
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        const double range = hi - lo;
        if (range <= 0.0) continue;
        const double y = out[i];
        const double u = rng.next_double();
        double deltaq;
        if (u < 0.5) {
            const double xy = 1.0 - (y - lo) / range;
            const double val =
                2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, 1.0 / (eta + 1.0)) - 1.0;
        } else {
            const double xy = 1.0 - (hi - y) / range;
            const double val =
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, 1.0 / (eta + 1.0));
        }
        out[i] = bounds.clip(y + deltaq * range, i);
    }
    return out;
}

std::vector<Individual> pareto_filter(std::vector<Individual> entries) {
    std::vector<Individual> kept;
    for (auto& e : entries) {
        bool dominated = false;
        for (const auto& k : kept) {
            if (dominates(k.objectives, e.objectives) ||
                k.objectives == e.objectives) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        kept.erase(std::remove_if(kept.begin(), kept.end(),
                                  [&](const Individual& k) {
                                      return dominates(e.objectives,
                                                       k.objectives);
                                  }),
                   kept.end());
        kept.push_back(std::move(e));
    }
    return kept;
}

namespace {

// Rank + association annotations used by tournament selection.
void annotate(std::vector<Individual>& population,
              const std::vector<ObjectiveVector>& refs) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(population.size());
    for (const auto& ind : population) objs.push_back(ind.objectives);
    const auto fronts = fast_nondominated_sort(objs);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (std::size_t i : fronts[f]) population[i].rank = f;
    }
    const Association assoc = normalize_and_associate(objs, refs);
    for (std::size_t i = 0; i < population.size(); ++i) {
        population[i].ref_index = assoc.ref_index[i];
        population[i].ref_distance = assoc.distance[i];
    }
}

const Individual& tournament(const std::vector<Individual>& population,
                             RngStream& rng) {
    const std::size_t a = rng.next_below(population.size());
    const std::size_t b = rng.next_below(population.size());
    const Individual& ia = population[a];
    const Individual& ib = population[b];
    if (ia.rank != ib.rank) return ia.rank < ib.rank ? ia : ib;
    return ia.ref_distance <= ib.ref_distance ? ia : ib;
}

std::vector<Individual> evaluate_genomes(
    std::vector<std::vector<double>> genomes, const BatchObjective& objective,
    std::uint64_t generation) {
    const auto evals = objective(genomes, generation);
    std::vector<Individual> out(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) {
        out[i].genome = std::move(genomes[i]);
        out[i].objectives = evals[i].objectives;
        out[i].stderrs = evals[i].stderrs;
        out[i].generation_found = generation;
    }
    return out;
}

void merge_archive(std::vector<Individual>& archive,
                   const std::vector<Individual>& evaluated) {
    for (const auto& ind : evaluated) archive.push_back(ind);
    archive = pareto_filter(std::move(archive));
}

// Environmental selection of the next parent population from parents +
// offspring.
std::vector<Individual> select_next(std::vector<Individual> combined,
                                    const std::vector<ObjectiveVector>& refs,
                                    std::size_t target, std::uint64_t seed,
                                    std::uint64_t generation) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(combined.size());
    for (const auto& ind : combined) objs.push_back(ind.objectives);
    const auto fronts = fast_nondominated_sort(objs);

    std::vector<std::size_t> selected;
    std::size_t front_i = 0;
    while (front_i < fronts.size() &&
           selected.size() + fronts[front_i].size() <= target) {
        selected.insert(selected.end(), fronts[front_i].begin(),
                        fronts[front_i].end());
        ++front_i;
    }
    if (selected.size() < target) {
        const auto& last_front = fronts[front_i];
        std::vector<std::size_t> pool = selected;
        pool.insert(pool.end(), last_front.begin(), last_front.end());
        std::vector<ObjectiveVector> pool_objs;
        pool_objs.reserve(pool.size());
        for (std::size_t i : pool) pool_objs.push_back(objs[i]);
        const Association assoc = normalize_and_associate(pool_objs, refs);

        // niche counts from the already-selected members
        std::vector<std::size_t> niche_count(refs.size(), 0);
        for (std::size_t p = 0; p < selected.size(); ++p) {
            ++niche_count[assoc.ref_index[p]];
        }
        // last-front members are the tail of the pool
        std::vector<std::size_t> tail(last_front.size());
        for (std::size_t p = 0; p < last_front.size(); ++p) {
            tail[p] = selected.size() + p;
        }
        RngStream rng(seed, StreamPurpose::Niching, generation);
        const auto chosen_pool = niching_select(
            tail, assoc, std::move(niche_count), refs.size(),
            target - selected.size(), rng);
        for (std::size_t p : chosen_pool) {
            selected.push_back(pool[p]);
        }
    }
    std::vector<Individual> next;
    next.reserve(target);
    for (std::size_t i : selected) next.push_back(std::move(combined[i]));
    return next;
}

} // namespace

Nsga3Result run_nsga3(const Nsga3Config& config, const Bounds& bounds,
                      const BatchObjective& objective, std::uint64_t seed,
                      const Nsga3Callback& callback,
                      std::optional<Nsga3State> start) {
    if (config.population_size < 2) {
        throw std::invalid_argument("run_nsga3: population too small");
    }
    const auto refs =
        das_dennis_points(config.objective_count, config.divisions);

    Nsga3State state;
    if (start.has_value()) {
        state = std::move(*start);
    }
    if (state.next_generation == 0) {
        std::vector<std::vector<double>> genomes(config.population_size);
        for (std::size_t i = 0; i < genomes.size(); ++i) {
            RngStream rng(seed, StreamPurpose::PopulationInit, 0, i);
            genomes[i].resize(bounds.dimension());
            for (std::size_t d = 0; d < bounds.dimension(); ++d) {
                genomes[i][d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
            }
        }
        state.population = evaluate_genomes(std::move(genomes), objective, 0);
        merge_archive(state.archive, state.population);
        state.next_generation = 1;
        if (callback) callback(state, state.population);
    }

    for (std::uint64_t gen = state.next_generation; gen <= config.generations;
         ++gen) {
        annotate(state.population, refs);

        // Variation: tournament mating, SBX, polynomial mutation. Each pair
        // and child has its own stream so results do not depend on ordering.
        std::vector<std::vector<double>> children;
        children.reserve(config.population_size);
        const std::size_t pairs = (config.population_size + 1) / 2;
        for (std::size_t p = 0; p < pairs; ++p) {
            RngStream mate_rng(seed, StreamPurpose::Mating, gen, p);
            const Individual& p1 = tournament(state.population, mate_rng);
            const Individual& p2 = tournament(state.population, mate_rng);
            RngStream cross_rng(seed, StreamPurpose::Crossover, gen, p);
            auto [c1, c2] =
                sbx_crossover(p1.genome, p2.genome, bounds,
                              config.crossover_prob, config.crossover_eta,
                              cross_rng);
            children.push_back(std::move(c1));
            if (children.size() < config.population_size) {
                children.push_back(std::move(c2));
            }
        }
        for (std::size_t i = 0; i < children.size(); ++i) {
            RngStream mut_rng(seed, StreamPurpose::Mutation, gen, i);
            children[i] =
                polynomial_mutation(children[i], bounds, config.mutation_prob,
                                    config.mutation_eta, mut_rng);
        }

        auto offspring = evaluate_genomes(std::move(children), objective, gen);
        merge_archive(state.archive, offspring);

        std::vector<Individual> combined = state.population;
        combined.insert(combined.end(), offspring.begin(), offspring.end());
        state.population = select_next(std::move(combined), refs,
                                       config.population_size, seed, gen);
        state.next_generation = gen + 1;
        if (callback) callback(state, offspring);
    }
    return Nsga3Result{state.population, state.archive};
}

} // namespace rydpulse
