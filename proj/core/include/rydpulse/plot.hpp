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

#ifndef RYDPULSE_PLOT_HPP
#define RYDPULSE_PLOT_HPP

#include <string>
#include <utility>
#include <vector>

namespace rydpulse {

struct FrontSeries {
    std::string label;
    // (G, F) pairs; F goes on the log-scaled axis.
    std::vector<std::pair<double, double>> points;
};

// Scatter plot of one or more Pareto fronts: G linear on x, F log-scaled on
// y, one legend entry per series. Output is deterministic for fixed input.
// Throws if every series is empty.
std::string render_front_svg(const std::vector<FrontSeries>& series);

void write_front_svg(const std::vector<FrontSeries>& series,
                     const std::string& path);

} // namespace rydpulse

#endif
