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

#include "riscap/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace riscap {

namespace {

bool rank_one(const arma::cx_mat& a, double rel_tol = 1e-9) {
    const arma::vec sv = arma::svd(a);
    if (sv.n_elem < 2) return true;
    return sv(1) <= rel_tol * sv(0);
}

}  // namespace

double snr_upper_bound(const ChannelRealization& ch, double gamma, int num_bs_antennas) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("snr_upper_bound: gamma must be >= 0");
    if (static_cast<arma::uword>(num_bs_antennas) != ch.composite.n_cols) {
        throw std::invalid_argument("snr_upper_bound: antenna count mismatch");
    }
    const double entry_sum = arma::accu(arma::abs(ch.composite));
    return gamma / num_bs_antennas * entry_sum * entry_sum;
}

double capacity(double snr_value) {
    if (!(snr_value >= 0.0)) throw std::invalid_argument("capacity: snr must be >= 0");
    return std::log1p(snr_value) / std::numbers::ln2;
}

double bound_gap(const ChannelRealization& ch, double gamma, int num_bs_antennas,
                 const BeamformingResult& result) {
    return snr_upper_bound(ch, gamma, num_bs_antennas) - result.snr;
}

BoundReport bound_report(const ChannelRealization& ch, double gamma, int num_bs_antennas) {
    BoundReport rep;
    rep.snr_ub = snr_upper_bound(ch, gamma, num_bs_antennas);
    rep.capacity_ub = capacity(rep.snr_ub);
    if (rank_one(ch.composite)) {
        rep.exactness = BoundExactness::unit_rank_exact;
    } else if (rank_one(ch.cascade)) {
        rep.exactness = BoundExactness::los_tight;
    } else {
        rep.exactness = BoundExactness::generic;
    }
    return rep;
}

const char* exactness_name(BoundExactness e) {
    switch (e) {
        case BoundExactness::generic: return "generic";
        case BoundExactness::los_tight: return "los_tight";
        case BoundExactness::unit_rank_exact: return "unit_rank_exact";
    }
    return "?";
}

}  // namespace riscap
