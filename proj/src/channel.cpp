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

#include "riscap/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "riscap/rng.hpp"
#include "riscap/specfun.hpp"

namespace riscap {

namespace {

// LoS matrices shared by draw_channel and los_channel.
struct LosParts {
    arma::cx_mat bs_ris;
    arma::cx_vec ris_user;
    arma::cx_vec direct;
};

LosParts los_parts(const SystemConfig& cfg) {
    LosParts p;
    const arma::cx_vec a_ris_rx = steering_vector(cfg.num_ris_elements, cfg.aoa_ris,
                                                  cfg.element_spacing);
    const arma::cx_vec a_bs_tx = steering_vector(cfg.num_bs_antennas, cfg.aod_ris,
                                                 cfg.element_spacing);
    p.bs_ris = a_ris_rx * a_bs_tx.st();
    p.ris_user = steering_vector(cfg.num_ris_elements, cfg.aod_ris_user, cfg.element_spacing);
    p.direct = steering_vector(cfg.num_bs_antennas, cfg.aod_direct, cfg.element_spacing);
    return p;
}

void assemble_cascade(const SystemConfig& cfg, ChannelRealization& ch) {
    // Element-wise product keeps cascade(n,m) == ris_user(n) * bs_ris(n,m)
    // exactly, which downstream identity checks rely on.
    ch.cascade = ch.bs_ris.each_col() % ch.ris_user;
    ch.composite.set_size(cfg.num_ris_elements + 1, cfg.num_bs_antennas);
    ch.composite.head_rows(cfg.num_ris_elements) = ch.cascade;
    ch.composite.row(cfg.num_ris_elements) = cfg.mu() * ch.direct.st();
}

}  // namespace

arma::cx_vec steering_vector(int length, double angle, double element_spacing) {
    if (length < 1) throw std::invalid_argument("steering_vector: length must be >= 1");
    if (!(element_spacing > 0.0)) {
        throw std::invalid_argument("steering_vector: spacing must be positive");
    }
    arma::cx_vec a(static_cast<arma::uword>(length));
    const double phase_step = -std::numbers::pi * element_spacing * std::cos(angle);
    for (int l = 0; l < length; ++l) {
        a(static_cast<arma::uword>(l)) = std::polar(1.0, phase_step * l);
    }
    return a;
}

ChannelRealization draw_channel(const SystemConfig& cfg, std::mt19937_64& gen) {
    cfg.validate();
    const arma::uword n = static_cast<arma::uword>(cfg.num_ris_elements);
    const arma::uword m = static_cast<arma::uword>(cfg.num_bs_antennas);

    const LosParts los = los_parts(cfg);

    const double kl1 = kappa_los(cfg.k_bs_ris);
    const double kn1 = kappa_nlos(cfg.k_bs_ris);
    const double kl2 = kappa_los(cfg.k_ris_user);
    const double kn2 = kappa_nlos(cfg.k_ris_user);
    const double kl0 = kappa_los(cfg.k_direct);
    const double kn0 = kappa_nlos(cfg.k_direct);

    ChannelRealization ch;
    ch.bs_ris.set_size(n, m);
    for (arma::uword c = 0; c < m; ++c) {
        for (arma::uword r = 0; r < n; ++r) {
            ch.bs_ris(r, c) = kl1 * los.bs_ris(r, c) + kn1 * complex_gaussian(gen);
        }
    }
    ch.ris_user.set_size(n);
    for (arma::uword r = 0; r < n; ++r) {
        ch.ris_user(r) = kl2 * los.ris_user(r) + kn2 * complex_gaussian(gen);
    }
    ch.direct.set_size(m);
    for (arma::uword r = 0; r < m; ++r) {
        ch.direct(r) = kl0 * los.direct(r) + kn0 * complex_gaussian(gen);
    }

    assemble_cascade(cfg, ch);
    return ch;
}

ChannelRealization los_channel(const SystemConfig& cfg) {
    cfg.validate();
    const LosParts los = los_parts(cfg);
    ChannelRealization ch;
    ch.bs_ris = los.bs_ris;
    ch.ris_user = los.ris_user;
    ch.direct = los.direct;
    assemble_cascade(cfg, ch);
    return ch;
}

}  // namespace riscap
