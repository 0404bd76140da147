// SPDX-License-Identifier: Apache-2.0
//
// riscap: capacity and outage analysis for RIS-aided downlink systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace riscap {

// Canonical cell formatting: fixed 12-significant-digit "%g". Identical
// inputs give identical bytes, which the reproducibility checks rely on.
std::string format_cell(double v);

struct SweepAxis {
    std::string name;
    std::vector<std::string> values;
};

// Long-format result table with ordered metadata, written as CSV (metadata
// as leading '# key=value' lines) or JSON. Cells are pre-formatted strings;
// the JSON writer re-emits numeric-looking cells as numbers.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_row(std::vector<std::string> row);
    void set_meta(const std::string& key, const std::string& value);

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
    void write(std::ostream& os, const std::string& format) const;  // "csv" | "json"
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    ResultTable table;
};

}  // namespace riscap
