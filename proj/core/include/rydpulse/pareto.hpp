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

#ifndef RYDPULSE_PARETO_HPP
#define RYDPULSE_PARETO_HPP

#include <cstddef>
#include <vector>

namespace rydpulse {

using ObjectiveVector = std::vector<double>;

// a dominates b: no worse in every coordinate, strictly better in one.
// Minimization throughout.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Deb's fast non-dominated sort. Returns fronts as index lists; front 0 is
// the non-dominated set, and the fronts partition the input.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<ObjectiveVector>& objectives);

// Hypervolume of a 2-D point set against a reference point (minimization);
// points outside the box contribute nothing.
double hypervolume_2d(const std::vector<ObjectiveVector>& points,
                      double ref_x, double ref_y);

} // namespace rydpulse

#endif
