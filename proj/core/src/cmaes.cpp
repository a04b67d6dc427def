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

#include "rydpulse/cmaes.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rydpulse {

namespace {

struct Weights {
    std::vector<double> w;
    double mu_eff = 0.0;
};

Weights recombination_weights(std::size_t lambda) {
    const std::size_t mu = lambda / 2;
    Weights out;
    out.w.resize(mu);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu; ++i) {
        out.w[i] = std::log(static_cast<double>(mu) + 0.5) -
                   std::log(static_cast<double>(i + 1));
        sum += out.w[i];
    }
    double sum_sq = 0.0;
    for (auto& wi : out.w) {
        wi /= sum;
        sum_sq += wi * wi;
    }
    out.mu_eff = 1.0 / sum_sq;
    return out;
}

} // namespace

CmaesResult run_cmaes(const CmaesConfig& config, const Bounds& bounds,
                      const BatchScalarObjective& objective,
                      std::uint64_t seed, const CmaesCallback& callback,
                      std::optional<CmaesState> start) {
    const std::size_t n = bounds.dimension();
    const std::size_t lambda = config.population_size;
    if (lambda < 2 || n == 0) {
        throw std::invalid_argument("run_cmaes: invalid configuration");
    }
    const double nd = static_cast<double>(n);
    const Weights weights = recombination_weights(lambda);
    const std::size_t mu = weights.w.size();
    const double mu_eff = weights.mu_eff;

    const double c_sigma = (mu_eff + 2.0) / (nd + mu_eff + 5.0);
    const double d_sigma =
        1.0 +
        2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (nd + 1.0)) - 1.0) +
        c_sigma;
    const double c_c = (4.0 + mu_eff / nd) / (nd + 4.0 + 2.0 * mu_eff / nd);
    const double c_1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + mu_eff);
    const double c_mu =
        std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) /
                                ((nd + 2.0) * (nd + 2.0) + mu_eff));
    const double chi_n =
        std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

    CmaesState state;
    if (start.has_value()) {
        state = std::move(*start);
    } else {
        state.mean.resize(n);
        double mean_range = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            state.mean[i] = config.initial_mean.empty()
                                ? 0.5 * (bounds.lower[i] + bounds.upper[i])
                                : config.initial_mean[i];
            mean_range += bounds.upper[i] - bounds.lower[i];
        }
        state.sigma = config.initial_step_factor * mean_range / nd;
        state.covariance.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) state.covariance[i * n + i] = 1.0;
        state.path_sigma.assign(n, 0.0);
        state.path_c.assign(n, 0.0);
        state.next_generation = 1;
    }

    using Matrix = Eigen::MatrixXd;
    using Vector = Eigen::VectorXd;

    for (std::uint64_t gen = state.next_generation; gen <= config.generations;
         ++gen) {
        Matrix c_mat(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                c_mat(i, j) = state.covariance[i * n + j];
            }
        }
        // enforce symmetry before decomposition
        c_mat = 0.5 * (c_mat + c_mat.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> eig(c_mat);
        Vector evals = eig.eigenvalues();
        const Matrix& basis = eig.eigenvectors();
        const double max_eval = std::max(evals.maxCoeff(), 1e-300);
        for (Eigen::Index i = 0; i < evals.size(); ++i) {
            evals(i) = std::max(evals(i), 1e-14 * max_eval);
        }
        const Vector d_scale = evals.cwiseSqrt();
        Matrix c_inv_sqrt = basis *
                            d_scale.cwiseInverse().asDiagonal() *
                            basis.transpose();

        // Sample lambda candidates; coordinate-wise resampling keeps them in
        // bounds without distorting the distribution more than necessary.
        std::vector<std::vector<double>> genomes(lambda);
        std::vector<Vector> steps(lambda); // y_k = (x_k - m) / sigma
        for (std::size_t k = 0; k < lambda; ++k) {
            RngStream rng(seed, StreamPurpose::CmaSample, gen, k);
            Vector z(n);
            for (std::size_t i = 0; i < n; ++i) z(i) = rng.next_gaussian();
            Vector y = basis * d_scale.asDiagonal() * z;
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = state.mean[i] + state.sigma * y(i);
                const double coord_std =
                    state.sigma * std::sqrt(std::max(c_mat(i, i), 0.0));
                for (int attempt = 0;
                     (x[i] < bounds.lower[i] || x[i] > bounds.upper[i]) &&
                     attempt < 10;
                     ++attempt) {
                    x[i] = state.mean[i] + coord_std * rng.next_gaussian();
                }
                x[i] = bounds.clip(x[i], i);
                y(i) = (x[i] - state.mean[i]) / state.sigma;
            }
            genomes[k] = std::move(x);
            steps[k] = std::move(y);
        }

        const std::vector<double> values = objective(genomes, gen);
        std::vector<std::size_t> order(lambda);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                         std::size_t b) {
            return values[a] < values[b];
        });

        // Mean update.
        Vector y_w = Vector::Zero(n);
        for (std::size_t i = 0; i < mu; ++i) {
            y_w += weights.w[i] * steps[order[i]];
        }
        for (std::size_t i = 0; i < n; ++i) {
            state.mean[i] += state.sigma * y_w(i);
        }

        // Step-size path and adaptation.
        Vector p_sigma(n), p_c(n);
        for (std::size_t i = 0; i < n; ++i) {
            p_sigma(i) = state.path_sigma[i];
            p_c(i) = state.path_c[i];
        }
        p_sigma = (1.0 - c_sigma) * p_sigma +
                  std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) *
                      (c_inv_sqrt * y_w);
        const double p_sigma_norm = p_sigma.norm();
        const double h_sigma_test =
            p_sigma_norm /
            std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * static_cast<double>(gen)));
        const double h_sigma =
            h_sigma_test < (1.4 + 2.0 / (nd + 1.0)) * chi_n ? 1.0 : 0.0;
        p_c = (1.0 - c_c) * p_c +
              h_sigma * std::sqrt(c_c * (2.0 - c_c) * mu_eff) * y_w;

        // Covariance update: rank-one plus rank-mu.
        Matrix c_new = (1.0 - c_1 - c_mu) * c_mat;
        c_new += c_1 * (p_c * p_c.transpose() +
                        (1.0 - h_sigma) * c_c * (2.0 - c_c) * c_mat);
        for (std::size_t i = 0; i < mu; ++i) {
            c_new += c_mu * weights.w[i] * steps[order[i]] *
                     steps[order[i]].transpose();
        }
        state.sigma *= std::exp((c_sigma / d_sigma) *
                                (p_sigma_norm / chi_n - 1.0));

        for (std::size_t i = 0; i < n; ++i) {
            state.path_sigma[i] = p_sigma(i);
            state.path_c[i] = p_c(i);
            for (std::size_t j = 0; j < n; ++j) {
                state.covariance[i * n + j] = c_new(i, j);
            }
        }

        // Incumbent tracking with periodic re-evaluation.
        const std::size_t best_k = order.front();
        if (state.best_genome.empty() ||
            values[best_k] < state.best_estimate) {
            state.best_genome = genomes[best_k];
            state.best_estimate = values[best_k];
            state.best_eval_count = 1;
        }
        if (config.reevaluate_every > 0 &&
            gen % config.reevaluate_every == 0) {
            const std::vector<double> fresh =
                objective({state.best_genome}, kReevaluationKeyBase + gen);
            const double k = static_cast<double>(state.best_eval_count);
            state.best_estimate =
                (state.best_estimate * k + fresh.front()) / (k + 1.0);
            ++state.best_eval_count;
        }
        if (gen == 1 || state.best_estimate < state.best_reported) {
            state.best_reported = state.best_estimate;
        }

        std::vector<double> sorted_values = values;
        std::sort(sorted_values.begin(), sorted_values.end());
        CmaesGenerationStats stats;
        stats.generation = gen;
        stats.best = sorted_values.front();
        stats.median = sorted_values[lambda / 2];
        stats.best_ever = state.best_reported;
        stats.step_size = state.sigma;
        state.history.push_back(stats);

        state.next_generation = gen + 1;
        if (callback) callback(state);
    }

    return CmaesResult{state.best_genome, state.best_reported, state.history};
}

} // namespace rydpulse
