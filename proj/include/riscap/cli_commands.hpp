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
#include <vector>

#include "riscap/beamforming.hpp"
#include "riscap/config.hpp"
#include "riscap/mgf.hpp"
#include "riscap/outage.hpp"
#include "riscap/sweep.hpp"

namespace riscap {

// Ergodic capacity over a grid of surface sizes, K factors (applied to all
// three links jointly), direct-link strengths and architectures. Every cell
// reuses the same master seed, so trial t sees the same multipath draw in
// every cell: cells differ only by the swept parameter (paired comparison).
struct CapacitySweepSpec {
    SystemConfig base;
    std::vector<int> ris_sizes;   // empty: keep base.num_ris_elements
    std::vector<double> k_factors;  // empty: keep the base K factors
    std::vector<double> mu_db;      // empty: keep the base direct link
    std::vector<Architecture> archs = {Architecture::fd};
    long trials = 1000;
    int threads = 0;
    BeamformingOptions beam{};
};
SweepResult run_capacity_sweep(const CapacitySweepSpec& spec);

// Outage probability versus threshold: analytic lower-bound curve plus
// Monte Carlo curves per architecture, for each K factor.
struct OutageCurveSpec {
    SystemConfig base;
    std::vector<double> k_factors;   // empty: keep the base K factors
    std::vector<double> thresholds;  // linear SNR, strictly ascending
    std::vector<Architecture> archs = {Architecture::fd, Architecture::fa};
    bool analytic = true;
    UbVariant variant = UbVariant::scaled_by_m;
    long trials = 10000;  // 0: analytic curve only
    int threads = 0;
    BeamformingOptions beam{};
    EulerInversionSettings inversion{};
    MgfSettings mgf{};
};
SweepResult run_outage_curve(const OutageCurveSpec& spec);

// Tabulates M(-s) of the cascade gain along a line in the complex plane,
// for validation against external tools.
struct MgfProbeSpec {
    SystemConfig base;
    std::vector<double> s_real;  // positive
    double s_imag = 0.0;
    MgfSettings mgf{};
};
SweepResult run_mgf_probe(const MgfProbeSpec& spec);

// Built-in numerical cross-checks (special functions, beamformers against
// the grid reference, transform identities, inversion self-tests, frozen
// regression values). Writes one PASS/FAIL line per check to `log`.
// Tolerances are multiplied by tol_scale; returns 0 when every check
// passes, 2 otherwise.
struct ValidateSpec {
    double tol_scale = 1.0;
    int threads = 0;
};
int run_validate(const ValidateSpec& spec, std::ostream& log);

}  // namespace riscap
