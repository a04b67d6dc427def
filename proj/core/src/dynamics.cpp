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

#include "rydpulse/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace rydpulse {

bool PulseSchedule::valid() const {
    if (phases.empty() || !(duration > 0.0) || !std::isfinite(duration)) {
        return false;
    }
    for (double p : phases) {
        if (!std::isfinite(p)) return false;
    }
    return true;
}

Unitary2 slice_propagator(const HamiltonianSample& h, double dt) {
    if (!std::isfinite(h.detuning) || !std::isfinite(h.amplitude_factor) ||
        !std::isfinite(h.phase) || !std::isfinite(h.base_rabi) ||
        !std::isfinite(dt) || dt < 0.0) {
        throw std::invalid_argument("slice_propagator: non-finite input");
    }
    const double a = h.amplitude_factor * h.base_rabi;
    const double w = std::sqrt(h.detuning * h.detuning + a * a);
    if (w == 0.0) {
        return Unitary2::identity();
    }
    const double c = std::cos(w * dt);
    const double s = std::sin(w * dt) / w;
    // H entries: [[d, a e^{-i phi}], [a e^{i phi}, -d]]
    const double cp = std::cos(h.phase);
    const double sp = std::sin(h.phase);
    return Unitary2{
        Complex{c, s * h.detuning},
        Complex{s * a * sp, s * a * cp},
        Complex{-s * a * sp, s * a * cp},
        Complex{c, -s * h.detuning},
    };
}

double infidelity_of(const Unitary2& u) {
    // Tr(U U_0^dagger) = -i (u01 + u10); only the modulus matters.
    const Complex tr_like = u.m01 + u.m10;
    const double f = 1.0 - std::norm(tr_like) / 4.0;
    return std::min(1.0, std::max(0.0, f));
}

double rydberg_population(const Unitary2& u) {
    return std::norm(u.m10);
}

TrajectoryResult propagate_window(const PulseSchedule& schedule,
                                  const NoiseRealization& noise,
                                  const DynamicsSettings& settings,
                                  std::size_t slice_begin,
                                  std::size_t slice_end) {
    if (!schedule.valid()) {
        throw std::invalid_argument("propagate: invalid schedule");
    }
    if (settings.substeps < 1 || slice_end > schedule.slice_count() ||
        slice_begin > slice_end) {
        throw std::invalid_argument("propagate: invalid window or substeps");
    }
    const double dt_slice = schedule.slice_duration();
    const double dt_sub = dt_slice / static_cast<double>(settings.substeps);
    const double t0 = static_cast<double>(slice_begin) * dt_slice;

    NoiseGridSampler sampler(noise, t0, dt_sub);
    Unitary2 u = Unitary2::identity();
    double rydberg_time = 0.0;

    for (std::size_t slice = slice_begin; slice < slice_end; ++slice) {
        const double phase = schedule.phases[slice];
        for (std::size_t k = 0; k < settings.substeps; ++k) {
            const NoiseSample eps = sampler.value();
            sampler.advance();
            const HamiltonianSample h{eps.dephasing, 1.0 + eps.amplitude, phase,
                                      settings.pulse_area_constant};
            // Two half-steps of the same constant Hamiltonian give the exact
            // midpoint state for the residence-time quadrature.
            const Unitary2 half = slice_propagator(h, 0.5 * dt_sub);
            const Unitary2 mid = half * u;
            rydberg_time += rydberg_population(mid) * dt_sub;
            u = half * mid;
        }
    }
    return TrajectoryResult{u, rydberg_time, infidelity_of(u)};
}

TrajectoryResult propagate(const PulseSchedule& schedule,
                           const NoiseRealization& noise,
                           const DynamicsSettings& settings) {
    return propagate_window(schedule, noise, settings, 0,
                            schedule.slice_count());
}

} // namespace rydpulse
