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

#include "riscap/beamforming.hpp"
#include "riscap/channel.hpp"

namespace riscap {

// Analytical SNR upper bound (gamma / M) * (sum of |composite| entries)^2.
// Proven to dominate the analog architecture for every realization; the
// digital architecture can exceed it on rank-deficient instances.
double snr_upper_bound(const ChannelRealization& ch, double gamma, int num_bs_antennas);

// Shannon capacity log2(1 + snr) in bit/s/Hz. Throws on negative snr.
double capacity(double snr_value);

// snr_upper_bound minus the SNR a beamforming result achieved.
double bound_gap(const ChannelRealization& ch, double gamma, int num_bs_antennas,
                 const BeamformingResult& result);

// Structural regime of the bound for a given realization:
//   unit_rank_exact - the composite is numerically rank one; the analog
//                     architecture attains the bound exactly.
//   los_tight       - the cascade block is rank one (pure LoS) but the
//                     direct row points elsewhere; the bound is tight up to
//                     the direct-row misalignment.
//   generic         - anything else.
enum class BoundExactness { generic, los_tight, unit_rank_exact };

struct BoundReport {
    double snr_ub = 0.0;
    double capacity_ub = 0.0;
    BoundExactness exactness = BoundExactness::generic;
};

BoundReport bound_report(const ChannelRealization& ch, double gamma, int num_bs_antennas);

const char* exactness_name(BoundExactness e);

}  // namespace riscap
