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

#include "rydpulse/pareto.hpp"

#include <algorithm>

namespace rydpulse {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<ObjectiveVector>& objectives) {
    const std::size_t n = objectives.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objectives[p], objectives[q])) {
                dominated_by[p].push_back(q);
            } else if (dominates(objectives[q], objectives[p])) {
                ++domination_count[p];
            }
        }
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t p : fronts.back()) {
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

double hypervolume_2d(const std::vector<ObjectiveVector>& points,
                      double ref_x, double ref_y) {
    std::vector<std::pair<double, double>> inside;
    for (const auto& p : points) {
        if (p[0] < ref_x && p[1] < ref_y) inside.emplace_back(p[0], p[1]);
    }
    std::sort(inside.begin(), inside.end());
    double volume = 0.0;
    double best_y = ref_y;
    for (const auto& [x, y] : inside) {
        if (y < best_y) {
            volume += (ref_x - x) * (best_y - y);
            best_y = y;
        }
    }
    return volume;
}

} // namespace rydpulse
