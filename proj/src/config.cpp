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

#include "riscap/config.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace riscap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scalar that may arrive as a plain number (linear) or {"db": x}.
double parse_scalar(const nlohmann::json& v, const std::string& key, bool amplitude) {
    if (v.is_number()) return v.get<double>();
    if (v.is_object() && v.size() == 1 && v.contains("db")) {
        const double db = v.at("db").get<double>();
        return amplitude ? db_to_amplitude(db) : db_to_power(db);
    }
    throw std::invalid_argument("config: field '" + key +
                                "' must be a number or {\"db\": x}");
}

// K factors additionally accept the string "inf".
double parse_k_factor(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kInf;
        throw std::invalid_argument("config: field '" + key +
                                    "' accepts only the string \"inf\"");
    }
    return parse_scalar(v, key, false);
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string("config: ") + name + " must be positive");
    }
}

}  // namespace

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double SystemConfig::gamma() const {
    if (gamma_override) return *gamma_override;
    return tx_power * std::pow(dist_bs_ris * dist_ris_user, -path_loss_exp) / noise_power;
}

double SystemConfig::mu() const {
    if (!direct_link) return 0.0;
    if (mu_override) return *mu_override;
    return std::pow(dist_direct / (dist_bs_ris * dist_ris_user), -0.5 * path_loss_exp);
}

void SystemConfig::validate() const {
    if (num_bs_antennas < 1) throw std::invalid_argument("config: M must be >= 1");
    if (num_ris_elements < 1) throw std::invalid_argument("config: N must be >= 1");
    require_positive(tx_power, "tx_power");
    require_positive(noise_power, "noise_power");
    require_positive(dist_direct, "dist_direct");
    require_positive(dist_bs_ris, "dist_bs_ris");
    require_positive(dist_ris_user, "dist_ris_user");
    require_positive(element_spacing, "element_spacing");
    if (!(path_loss_exp >= 0.0)) {
        throw std::invalid_argument("config: path_loss_exp must be >= 0");
    }
    for (double k : {k_direct, k_bs_ris, k_ris_user}) {
        if (!(k >= 0.0)) {  // also rejects NaN
            throw std::invalid_argument("config: K factors must be >= 0");
        }
    }
    for (double th : {aod_direct, aod_ris, aoa_ris, aod_ris_user}) {
        if (!std::isfinite(th)) {
            throw std::invalid_argument("config: angles must be finite");
        }
    }
    if (gamma_override) require_positive(*gamma_override, "gamma_override");
    if (mu_override && !(*mu_override >= 0.0)) {
        throw std::invalid_argument("config: mu_override must be >= 0");
    }
}

SystemConfig config_from_json(const nlohmann::json& j, SystemConfig base) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: top level must be a JSON object");
    }

    static const std::set<std::string> known = {
        "num_bs_antennas", "num_ris_elements", "tx_power", "noise_power",
        "path_loss_exp", "dist_direct", "dist_bs_ris", "dist_ris_user",
        "k_direct", "k_bs_ris", "k_ris_user",
        "aod_direct", "aod_ris", "aoa_ris", "aod_ris_user",
        "aod_direct_deg", "aod_ris_deg", "aoa_ris_deg", "aod_ris_user_deg",
        "element_spacing", "direct_link", "gamma", "mu", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            throw std::invalid_argument("config: unknown field '" + it.key() + "'");
        }
    }

    SystemConfig c = base;
    if (j.contains("num_bs_antennas")) c.num_bs_antennas = j.at("num_bs_antennas").get<int>();
    if (j.contains("num_ris_elements")) c.num_ris_elements = j.at("num_ris_elements").get<int>();
    if (j.contains("tx_power")) c.tx_power = parse_scalar(j.at("tx_power"), "tx_power", false);
    if (j.contains("noise_power")) {
        c.noise_power = parse_scalar(j.at("noise_power"), "noise_power", false);
    }
    if (j.contains("path_loss_exp")) c.path_loss_exp = j.at("path_loss_exp").get<double>();
    if (j.contains("dist_direct")) c.dist_direct = j.at("dist_direct").get<double>();
    if (j.contains("dist_bs_ris")) c.dist_bs_ris = j.at("dist_bs_ris").get<double>();
    if (j.contains("dist_ris_user")) c.dist_ris_user = j.at("dist_ris_user").get<double>();
    if (j.contains("k_direct")) c.k_direct = parse_k_factor(j.at("k_direct"), "k_direct");
    if (j.contains("k_bs_ris")) c.k_bs_ris = parse_k_factor(j.at("k_bs_ris"), "k_bs_ris");
    if (j.contains("k_ris_user")) c.k_ris_user = parse_k_factor(j.at("k_ris_user"), "k_ris_user");

    auto angle = [&](const char* rad_key, const char* deg_key, double cur) {
        if (j.contains(rad_key) && j.contains(deg_key)) {
            throw std::invalid_argument(std::string("config: give either '") + rad_key +
                                        "' or '" + deg_key + "', not both");
        }
        if (j.contains(rad_key)) return j.at(rad_key).get<double>();
        if (j.contains(deg_key)) return deg_to_rad(j.at(deg_key).get<double>());
        return cur;
    };
    c.aod_direct = angle("aod_direct", "aod_direct_deg", c.aod_direct);
    c.aod_ris = angle("aod_ris", "aod_ris_deg", c.aod_ris);
    c.aoa_ris = angle("aoa_ris", "aoa_ris_deg", c.aoa_ris);
    c.aod_ris_user = angle("aod_ris_user", "aod_ris_user_deg", c.aod_ris_user);

    if (j.contains("element_spacing")) c.element_spacing = j.at("element_spacing").get<double>();
    if (j.contains("direct_link")) c.direct_link = j.at("direct_link").get<bool>();
    if (j.contains("gamma")) c.gamma_override = parse_scalar(j.at("gamma"), "gamma", false);
    if (j.contains("mu")) c.mu_override = parse_scalar(j.at("mu"), "mu", true);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();

    c.validate();
    return c;
}

nlohmann::json config_to_json(const SystemConfig& cfg) {
    nlohmann::json j;
    j["num_bs_antennas"] = cfg.num_bs_antennas;
    j["num_ris_elements"] = cfg.num_ris_elements;
    j["tx_power"] = cfg.tx_power;
    j["noise_power"] = cfg.noise_power;
    j["path_loss_exp"] = cfg.path_loss_exp;
    j["dist_direct"] = cfg.dist_direct;
    j["dist_bs_ris"] = cfg.dist_bs_ris;
    j["dist_ris_user"] = cfg.dist_ris_user;
    auto k_field = [](double k) -> nlohmann::json {
        if (std::isinf(k)) return "inf";
        return k;
    };
    j["k_direct"] = k_field(cfg.k_direct);
    j["k_bs_ris"] = k_field(cfg.k_bs_ris);
    j["k_ris_user"] = k_field(cfg.k_ris_user);
    j["aod_direct"] = cfg.aod_direct;
    j["aod_ris"] = cfg.aod_ris;
    j["aoa_ris"] = cfg.aoa_ris;
    j["aod_ris_user"] = cfg.aod_ris_user;
    j["element_spacing"] = cfg.element_spacing;
    j["direct_link"] = cfg.direct_link;
    if (cfg.gamma_override) j["gamma"] = *cfg.gamma_override;
    if (cfg.mu_override) j["mu"] = *cfg.mu_override;
    j["seed"] = cfg.seed;
    return j;
}

std::uint64_t config_hash(const SystemConfig& cfg) {
    const std::string s = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string version_string() { return "riscap 0.1.0"; }

}  // namespace riscap
