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

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include <json.hpp>

namespace riscap {

double db_to_power(double db);      // 10^(db/10)
double db_to_amplitude(double db);  // 10^(db/20)
double deg_to_rad(double deg);

// Full description of one downlink scenario: a BS with M antennas serving a
// single-antenna user through an N-element reflecting surface, every link
// Rician. Angles are in radians; K factors may be +infinity for pure LoS.
struct SystemConfig {
    int num_bs_antennas = 4;   // M
    int num_ris_elements = 64; // N

    double tx_power = 1.0;        // P_s, linear
    double noise_power = 1.0;     // sigma_n^2, linear
    double path_loss_exp = 2.0;   // alpha
    double dist_direct = 1.0;     // d_0, BS-user
    double dist_bs_ris = 1.0;     // d_1
    double dist_ris_user = 1.0;   // d_2

    double k_direct = 10.0;   // K_0, BS-user link
    double k_bs_ris = 10.0;   // K_1
    double k_ris_user = 10.0; // K_2

    double aod_direct = deg_to_rad(70.0);   // BS departure angle, direct link
    double aod_ris = deg_to_rad(30.0);      // BS departure angle toward the RIS
    double aoa_ris = deg_to_rad(45.0);      // RIS arrival angle
    double aod_ris_user = deg_to_rad(60.0); // RIS departure angle toward the user

    double element_spacing = 0.5;  // d / lambda, both arrays
    bool direct_link = true;

    // When set, these replace the distance/power-derived values. The
    // reference parameterization works directly in (gamma, mu).
    std::optional<double> gamma_override;  // linear SNR scale
    std::optional<double> mu_override;     // linear amplitude ratio

    std::uint64_t seed = 1;

    // Composite-path SNR scale: P_s (d1 d2)^-alpha / sigma_n^2.
    double gamma() const;
    // Direct-path amplitude ratio (d0/(d1 d2))^(-alpha/2); 0 when the direct
    // link is disabled.
    double mu() const;

    void validate() const;  // throws std::invalid_argument
};

// Applies the fields present in `j` on top of `base`. Scalars accept either
// a plain number (linear) or a tagged object {"db": x}; K factors also
// accept the string "inf". Angles are radians, with *_deg alternates.
// Unknown keys throw std::invalid_argument.
SystemConfig config_from_json(const nlohmann::json& j, SystemConfig base = {});

// Canonical JSON image of a config (stable key order / representation).
nlohmann::json config_to_json(const SystemConfig& cfg);

// FNV-1a hash of the canonical JSON, for tagging result files.
std::uint64_t config_hash(const SystemConfig& cfg);

std::string version_string();

}  // namespace riscap
