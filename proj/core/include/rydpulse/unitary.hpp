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

#ifndef RYDPULSE_UNITARY_HPP
#define RYDPULSE_UNITARY_HPP

#include <algorithm>
#include <complex>

namespace rydpulse {

using Complex = std::complex<double>;

// 2x2 complex matrix in the fixed basis (|1>, |r>): row/column 0 is the
// excited "1" orbital, row/column 1 the Rydberg orbital.
struct Unitary2 {
    Complex m00{1.0, 0.0};
    Complex m01{0.0, 0.0};
    Complex m10{0.0, 0.0};
    Complex m11{1.0, 0.0};

    static Unitary2 identity() { return Unitary2{}; }

    // Target pi-pulse [[0, i], [i, 0]].
    static Unitary2 pi_pulse_target() {
        return Unitary2{{0.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};
    }

    friend Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
        return Unitary2{
            a.m00 * b.m00 + a.m01 * b.m10,
            a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10,
            a.m10 * b.m01 + a.m11 * b.m11,
        };
    }

    Unitary2 dagger() const {
        return Unitary2{std::conj(m00), std::conj(m10),
                        std::conj(m01), std::conj(m11)};
    }

    Complex determinant() const { return m00 * m11 - m01 * m10; }

    // max-norm of U^dagger U - I; zero for an exact unitary.
    double unitarity_defect() const {
        const Unitary2 g = dagger() * (*this);
        double d = std::abs(g.m00 - Complex{1.0, 0.0});
        d = std::max(d, std::abs(g.m01));
        d = std::max(d, std::abs(g.m10));
        return std::max(d, std::abs(g.m11 - Complex{1.0, 0.0}));
    }

    double max_entry_distance(const Unitary2& other) const {
        double d = std::abs(m00 - other.m00);
        d = std::max(d, std::abs(m01 - other.m01));
        d = std::max(d, std::abs(m10 - other.m10));
        return std::max(d, std::abs(m11 - other.m11));
    }
};

} // namespace rydpulse

#endif
