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

#include <armadillo>
#include <random>

#include "riscap/config.hpp"

namespace riscap {

// ULA steering vector: element l carries exp(-j pi (d/lambda) l cos(angle)),
// l = 0 .. length-1. Unit modulus per element, first element 1.
arma::cx_vec steering_vector(int length, double angle, double element_spacing);

// One draw of all three links plus the derived cascade matrices.
//   bs_ris   : N x M, BS to RIS
//   ris_user : N,     RIS to user
//   direct   : M,     BS to user
//   cascade  : diag(ris_user) * bs_ris                  (N x M)
//   composite: [cascade; mu * direct^T]                 ((N+1) x M)
// The composite always carries the direct row; it is zero when the direct
// link is off (mu = 0).
struct ChannelRealization {
    arma::cx_mat bs_ris;
    arma::cx_vec ris_user;
    arma::cx_vec direct;
    arma::cx_mat cascade;
    arma::cx_mat composite;
};

// Random realization under the configured Rician K factors. Draw order is
// fixed (bs_ris column-major, then ris_user, then direct) and multipath is
// drawn even for infinite K, so a given generator state always yields the
// same realization regardless of K.
ChannelRealization draw_channel(const SystemConfig& cfg, std::mt19937_64& gen);

// The deterministic LoS-only realization (all K factors infinite).
ChannelRealization los_channel(const SystemConfig& cfg);

}  // namespace riscap
