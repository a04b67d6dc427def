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

#include "rydpulse/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace rydpulse {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

SpectralNoiseModel::SpectralNoiseModel(double noise_level,
                                       std::size_t harmonic_count,
                                       double max_frequency)
    : noise_level_(noise_level),
      sigma_amplitude_(noise_level),
      sigma_dephasing_(noise_level * kTwoPi),
      max_frequency_(max_frequency) {
    if (noise_level < 0.0 || harmonic_count < 1 || max_frequency < 1.0) {
        throw std::invalid_argument("SpectralNoiseModel: invalid parameters");
    }
    frequencies_.reserve(harmonic_count);
    const double m = static_cast<double>(harmonic_count);
    for (std::size_t n = 0; n < harmonic_count; ++n) {
        frequencies_.push_back(std::pow(max_frequency, static_cast<double>(n) / m));
    }
}

double SpectralNoiseModel::covariance_theoretical(double lag) const {
    double sum = 0.0;
    for (double nu : frequencies_) {
        sum += std::cos(kTwoPi * nu * lag);
    }
    return sum / static_cast<double>(frequencies_.size());
}

NoiseRealization NoiseRealization::sample(const SpectralNoiseModel& model,
                                          RngStream& stream) {
    NoiseRealization r;
    r.frequencies_ = model.frequencies();
    r.sigma_amplitude_ = model.sigma_amplitude();
    r.sigma_dephasing_ = model.sigma_dephasing();
    const std::size_t m = r.frequencies_.size();
    r.ca_.resize(m);
    r.sa_.resize(m);
    r.cd_.resize(m);
    r.sd_.resize(m);
    for (std::size_t n = 0; n < m; ++n) {
        r.ca_[n] = stream.next_gaussian();
        r.sa_[n] = stream.next_gaussian();
    }
    for (std::size_t n = 0; n < m; ++n) {
        r.cd_[n] = stream.next_gaussian();
        r.sd_[n] = stream.next_gaussian();
    }
    return r;
}

NoiseRealization NoiseRealization::zero(const SpectralNoiseModel& model) {
    NoiseRealization r;
    r.frequencies_ = model.frequencies();
    r.sigma_amplitude_ = model.sigma_amplitude();
    r.sigma_dephasing_ = model.sigma_dephasing();
    const std::size_t m = r.frequencies_.size();
    r.ca_.assign(m, 0.0);
    r.sa_.assign(m, 0.0);
    r.cd_.assign(m, 0.0);
    r.sd_.assign(m, 0.0);
    return r;
}

NoiseSample NoiseRealization::evaluate(double t) const {
    const std::size_t m = frequencies_.size();
    double xa = 0.0;
    double xd = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
        const double c = std::cos(kTwoPi * frequencies_[n] * t);
        const double s = std::sin(kTwoPi * frequencies_[n] * t);
        xa += ca_[n] * c + sa_[n] * s;
        xd += cd_[n] * c + sd_[n] * s;
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    return NoiseSample{sigma_amplitude_ * norm * xa, sigma_dephasing_ * norm * xd};
}

double NoiseRealization::unit_process_amplitude(double t) const {
    const std::size_t m = frequencies_.size();
    double x = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
        x += ca_[n] * std::cos(kTwoPi * frequencies_[n] * t) +
             sa_[n] * std::sin(kTwoPi * frequencies_[n] * t);
    }
    return x / std::sqrt(static_cast<double>(m));
}

NoiseGridSampler::NoiseGridSampler(const NoiseRealization& realization,
                                   double t0, double dt)
    : r_(realization) {
    const std::size_t m = r_.frequencies_.size();
    cos_.resize(m);
    sin_.resize(m);
    rotc_.resize(m);
    rots_.resize(m);
    for (std::size_t n = 0; n < m; ++n) {
        const double w = kTwoPi * r_.frequencies_[n];
        cos_[n] = std::cos(w * t0);
        sin_[n] = std::sin(w * t0);
        rotc_[n] = std::cos(w * dt);
        rots_[n] = std::sin(w * dt);
    }
}

NoiseSample NoiseGridSampler::value() const {
    const std::size_t m = cos_.size();
    double xa = 0.0;
    double xd = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
        xa += r_.ca_[n] * cos_[n] + r_.sa_[n] * sin_[n];
        xd += r_.cd_[n] * cos_[n] + r_.sd_[n] * sin_[n];
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    return NoiseSample{r_.sigma_amplitude_ * norm * xa,
                       r_.sigma_dephasing_ * norm * xd};
}

void NoiseGridSampler::advance() {
    const std::size_t m = cos_.size();
    for (std::size_t n = 0; n < m; ++n) {
        const double c = cos_[n] * rotc_[n] - sin_[n] * rots_[n];
        const double s = sin_[n] * rotc_[n] + cos_[n] * rots_[n];
        cos_[n] = c;
        sin_[n] = s;
    }
}

} // namespace rydpulse
