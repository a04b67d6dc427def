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

#ifndef RYDPULSE_RNG_HPP
#define RYDPULSE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace rydpulse {

// Counter-based stream derivation: every consumer names its stream by a
// (seed, generation, index, subindex, purpose) tuple, so results never depend
// on thread scheduling or iteration order.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
    Trajectory = 1,
    PopulationInit = 2,
    Mating = 3,
    Crossover = 4,
    Mutation = 5,
    Niching = 6,
    CmaSample = 7,
    Generic = 8,
};

// xoshiro256** seeded from a hashed tuple.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, StreamPurpose purpose,
              std::uint64_t generation = 0, std::uint64_t index = 0,
              std::uint64_t subindex = 0) {
        std::uint64_t h = master_seed ^ 0x6a09e667f3bcc908ULL;
        splitmix64(h);
        h ^= static_cast<std::uint64_t>(purpose) * 0xff51afd7ed558ccdULL;
        splitmix64(h);
        h ^= generation * 0xc4ceb9fe1a85ec53ULL;
        splitmix64(h);
        h ^= index * 0x2545f4914f6cdd1dULL;
        splitmix64(h);
        h ^= subindex * 0x9e3779b97f4a7c15ULL;
        for (auto& si : state_) si = splitmix64(h);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection-free for our purposes; modulo bias is < 2^-40 for n < 2^24.
        return next_u64() % n;
    }

    // Standard normal via Box-Muller; draws are deterministic per stream.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rydpulse

#endif
