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

#ifndef RYDPULSE_CSV_HPP
#define RYDPULSE_CSV_HPP

#include <string>
#include <vector>

namespace rydpulse {

// 17 significant digits: round-trip exact for doubles.
std::string format_double(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const; // throws if missing
};

CsvTable read_csv(const std::string& path);

} // namespace rydpulse

#endif
