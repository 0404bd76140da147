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
#include <span>
#include <vector>

#include "riscap/beamforming.hpp"
#include "riscap/config.hpp"
#include "riscap/mgf.hpp"

namespace riscap {

// Which SNR upper bound the analytic outage lower bound is derived from.
//   scaled_by_m - (gamma / M) ||E||_1,1^2; consistent with the beamforming
//                 bound and exact in the pure-LoS limit (default).
//   as_printed  - gamma ||E||_1,1^2, the looser form some derivations quote;
//                 kept for comparison.
enum class UbVariant { scaled_by_m, as_printed };

enum class CurveKind {
    analytical_lower_bound,
    monte_carlo_fd,
    monte_carlo_fa,
    monte_carlo_mrt,
};

struct OutageCurve {
    std::vector<double> thresholds;     // beta, linear SNR
    std::vector<double> probabilities;  // P[SNR < beta] (or its lower bound)
    std::vector<double> ci_low;         // 95% Wilson interval; empty for analytic curves
    std::vector<double> ci_high;
    CurveKind kind = CurveKind::analytical_lower_bound;
    long trials = 0;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion; well-behaved at 0 and n.
WilsonInterval wilson_interval(long successes, long trials, double z = 1.959963984540054);

// Deterministic pairwise summation (order independent of threading).
double pairwise_sum(std::span<const double> values);

// Analytic outage lower bound: the SNR upper bound maps outage onto the
// CDF of the cascade gain, P_out(beta) >= F_Y(sqrt(M beta / gamma)) under
// the scaled_by_m variant (sqrt(beta / gamma) under as_printed). Values
// come from the numerical MGF inversion; a final running-maximum pass
// restores the monotonicity that inversion noise (about 1e-7) can break.
// Degenerate (pure LoS) evaluators produce an exact step curve without
// inversion. Thresholds must be positive and ascending. threads = 0 picks
// hardware concurrency.
OutageCurve outage_lower_bound(const MgfEvaluator& mgf, double gamma,
                               const std::vector<double>& thresholds,
                               UbVariant variant = UbVariant::scaled_by_m,
                               const EulerInversionSettings& inv = {}, int threads = 0);

// Per-trial simulation record shared by the Monte Carlo estimators.
struct TrialMetrics {
    double snr = 0.0;
    double snr_ub = 0.0;
    int iterations = 0;
};

// Runs `trials` independent channel draws under `cfg`, beamforming each
// with `arch`. Trial t uses RNG substream t of cfg.seed regardless of the
// thread layout, so results are bit-identical for any thread count, and
// different architectures or K factors evaluated at the same seed share
// their channel randomness (paired comparisons). threads = 0 picks
// hardware concurrency.
std::vector<TrialMetrics> run_trials(const SystemConfig& cfg, Architecture arch, long trials,
                                     int threads = 0, const BeamformingOptions& opt = {});

// Empirical outage curve with 95% Wilson intervals at each threshold.
OutageCurve monte_carlo_outage(const SystemConfig& cfg, Architecture arch,
                               const std::vector<double>& thresholds, long trials,
                               int threads = 0, const BeamformingOptions& opt = {});

struct CapacityEstimate {
    double mean = 0.0;           // ergodic capacity, bit/s/Hz
    double ci_halfwidth = 0.0;   // 1.96 * standard error
    double mean_capacity_ub = 0.0;  // same average over the per-draw bound
    long trials = 0;
};

// Ergodic capacity estimate E[log2(1 + SNR)] plus the matching average of
// the analytic per-draw upper bound.
CapacityEstimate monte_carlo_capacity(const SystemConfig& cfg, Architecture arch, long trials,
                                      int threads = 0, const BeamformingOptions& opt = {});

const char* curve_kind_name(CurveKind kind);
const char* ub_variant_name(UbVariant v);
UbVariant ub_variant_from_name(const std::string& name);

}  // namespace riscap
