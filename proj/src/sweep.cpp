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

#include "riscap/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace riscap {

std::string format_cell(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void ResultTable::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("ResultTable: row width does not match columns");
    }
    rows.push_back(std::move(row));
}

void ResultTable::set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : metadata) {
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    }
    metadata.emplace_back(key, value);
}

void ResultTable::write_csv(std::ostream& os) const {
    for (const auto& kv : metadata) {
        os << "# " << kv.first << "=" << kv.second << "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << (c ? "," : "") << columns[c];
    }
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << row[c];
        }
        os << "\n";
    }
}

void ResultTable::write_json(std::ostream& os) const {
    nlohmann::ordered_json j;
    for (const auto& kv : metadata) j["metadata"][kv.first] = kv.second;
    j["columns"] = columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const std::string& cell : row) {
            // Re-emit numeric cells as JSON numbers, everything else as text.
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (used == cell.size() && std::isfinite(v)) {
                    jr.push_back(v);
                    continue;
                }
            } catch (const std::exception&) {
            }
            jr.push_back(cell);
        }
        j["rows"].push_back(std::move(jr));
    }
    os << j.dump(2) << "\n";
}

void ResultTable::write(std::ostream& os, const std::string& format) const {
    if (format == "csv") {
        write_csv(os);
    } else if (format == "json") {
        write_json(os);
    } else {
        throw std::invalid_argument("ResultTable: unknown format '" + format + "'");
    }
}

}  // namespace riscap
