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

#ifndef RYDPULSE_DYNAMICS_HPP
#define RYDPULSE_DYNAMICS_HPP

#include <cstddef>
#include <vector>

#include "rydpulse/noise.hpp"
#include "rydpulse/unitary.hpp"

namespace rydpulse {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Piecewise-constant phase program: N phases, each held over an equal slice
// of the total duration T (in units of 1/f_max).
struct PulseSchedule {
    std::vector<double> phases; // rad, each in [0, 2 pi]
    double duration = 1.0;      // 1/f_max, > 0

    std::size_t slice_count() const { return phases.size(); }
    double slice_duration() const {
        return duration / static_cast<double>(phases.size());
    }

    static PulseSchedule constant(double phase, double duration,
                                  std::size_t slices = 50) {
        return PulseSchedule{std::vector<double>(slices, phase), duration};
    }

    bool valid() const;
};

// Hamiltonian held constant over one sub-interval:
//   H = [[ eps_d, a e^{-i phi} ], [ a e^{i phi}, -eps_d ]],
// a = amplitude_factor * base_rabi, Omega = base_rabi * amplitude_factor * e^{i phi}.
struct HamiltonianSample {
    double detuning = 0.0;         // eps_d, rad * f_max
    double amplitude_factor = 1.0; // 1 + eps_a, dimensionless
    double phase = 0.0;            // phi, rad
    double base_rabi = kTwoPi;     // |Omega| at eps_a = 0, rad * f_max
};

struct TrajectoryResult {
    Unitary2 final_unitary;
    double rydberg_time = 0.0; // 1/f_max
    double infidelity = 0.0;   // in [0, 1]
};

struct DynamicsSettings {
    // |Omega| = pulse_area_constant * f_max. The default 2 pi makes the
    // noiseless pi-pulse time T = 0.25; pi/2 makes it T = 1.
    double pulse_area_constant = kTwoPi;
    std::size_t substeps = 8; // noise sub-intervals per phase slice
};

// Exact exponential exp(i H dt) of the constant Hamiltonian, via the Pauli
// decomposition H = eps_d sz + a cos(phi) sx + a sin(phi) sy:
//   exp(i H dt) = cos(w dt) I + i sin(w dt) H / w,  w = sqrt(eps_d^2 + a^2),
// and the identity when w = 0. Throws std::invalid_argument on non-finite
// input or dt < 0.
Unitary2 slice_propagator(const HamiltonianSample& h, double dt);

// Gate infidelity of a single realized unitary against the pi-pulse target:
// 1 - |Tr(U U_0^dagger)|^2 / 4, clamped to [0, 1]. Invariant under a global
// phase of u.
double infidelity_of(const Unitary2& u);

// |<r|U|1>|^2, the Rydberg-orbital population reached from |1>.
double rydberg_population(const Unitary2& u);

// Propagates the slice range [slice_begin, slice_end) starting from the
// identity. Each slice is split into settings.substeps sub-intervals; the
// noise is sampled at the sub-interval start and held constant; the Rydberg
// residence integral uses the midpoint state of each sub-interval (the
// midpoint state is exact since the sub-interval Hamiltonian is constant).
TrajectoryResult propagate_window(const PulseSchedule& schedule,
                                  const NoiseRealization& noise,
                                  const DynamicsSettings& settings,
                                  std::size_t slice_begin,
                                  std::size_t slice_end);

// Full pulse [0, T].
TrajectoryResult propagate(const PulseSchedule& schedule,
                           const NoiseRealization& noise,
                           const DynamicsSettings& settings);

} // namespace rydpulse

#endif
