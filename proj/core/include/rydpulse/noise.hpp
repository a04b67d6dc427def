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

#ifndef RYDPULSE_NOISE_HPP
#define RYDPULSE_NOISE_HPP

#include <cstddef>
#include <vector>

#include "rydpulse/rng.hpp"

namespace rydpulse {

// Band-limited pink (1/f) noise synthesized as a trigonometric series with
// equal-variance harmonics on a log-spaced frequency grid. Equal weight per
// log-spaced harmonic is what produces the 1/f power spectrum.
//
// The unit-variance process is
//   X(t) = (1/sqrt(M)) sum_n [ a_n cos(2 pi nu_n t) + b_n sin(2 pi nu_n t) ]
// with nu_n = nu_max^(n/M), n = 0..M-1, and (a_n, b_n) i.i.d. standard
// normal. Var(X(t)) = 1 for every t and E[X(t+h)X(t)] = C_M(h) below.
class SpectralNoiseModel {
public:
    // noise_level is a fraction of the maximal pulse intensity: the dephasing
    // channel gets sigma_d = noise_level * 2 pi f_max (an additive detuning),
    // the amplitude channel sigma_a = noise_level (relative, dimensionless).
    SpectralNoiseModel(double noise_level, std::size_t harmonic_count = 25,
                       double max_frequency = 100.0);

    double noise_level() const { return noise_level_; }
    double sigma_amplitude() const { return sigma_amplitude_; }
    double sigma_dephasing() const { return sigma_dephasing_; }
    std::size_t harmonic_count() const { return frequencies_.size(); }
    double max_frequency() const { return max_frequency_; }
    const std::vector<double>& frequencies() const { return frequencies_; }

    // C_M(h) = (1/M) sum_n cos(2 pi nu_n h); C_M(0) = 1.
    double covariance_theoretical(double lag) const;

private:
    double noise_level_;
    double sigma_amplitude_;
    double sigma_dephasing_;
    double max_frequency_;
    std::vector<double> frequencies_;
};

struct NoiseSample {
    double amplitude = 0.0; // epsilon_a, dimensionless
    double dephasing = 0.0; // epsilon_d, rad * f_max
};

// One random draw of the harmonic coefficients for both channels.
// Evaluation at any t is deterministic given the coefficients.
class NoiseRealization {
public:
    NoiseRealization() = default;

    // Draws 4M standard normals from the given stream: (a_n, b_n) for the
    // amplitude channel first, then for the dephasing channel.
    static NoiseRealization sample(const SpectralNoiseModel& model,
                                   RngStream& stream);

    // Zero-coefficient realization (noise level 0 shortcut).
    static NoiseRealization zero(const SpectralNoiseModel& model);

    NoiseSample evaluate(double t) const;

    // Unit-variance amplitude-channel process, before scaling; test hook.
    double unit_process_amplitude(double t) const;

    const std::vector<double>& frequencies() const { return frequencies_; }
    std::vector<double>& coeff_cos_amplitude() { return ca_; }
    std::vector<double>& coeff_sin_amplitude() { return sa_; }
    std::vector<double>& coeff_cos_dephasing() { return cd_; }
    std::vector<double>& coeff_sin_dephasing() { return sd_; }
    double sigma_amplitude() const { return sigma_amplitude_; }
    double sigma_dephasing() const { return sigma_dephasing_; }

private:
    friend class NoiseGridSampler;

    std::vector<double> frequencies_;
    std::vector<double> ca_, sa_; // amplitude-channel cos/sin coefficients
    std::vector<double> cd_, sd_; // dephasing-channel cos/sin coefficients
    double sigma_amplitude_ = 0.0;
    double sigma_dephasing_ = 0.0;
};

// Streams noise values on an evenly spaced grid using per-harmonic rotation
// recurrences instead of one sin/cos pair per sample. The anchor point is
// evaluated with exact trigonometry; drift over the grids used here (a few
// hundred steps) stays at the 1e-13 level.
class NoiseGridSampler {
public:
    NoiseGridSampler(const NoiseRealization& realization, double t0, double dt);

    // Value at the current grid point.
    NoiseSample value() const;

    // Move to the next grid point.
    void advance();

private:
    const NoiseRealization& r_;
    std::vector<double> cos_, sin_;   // cos/sin(2 pi nu_n t) at current t
    std::vector<double> rotc_, rots_; // rotation by 2 pi nu_n dt
};

} // namespace rydpulse

#endif
