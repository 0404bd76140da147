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
#include <vector>

#include <armadillo>

#include "riscap/channel.hpp"

namespace riscap {

enum class Architecture { fd, fa, mrt };  // fully digital / fully analog / MRT baseline

// Strategy for the fully-analog alternating updates. `composite` uses the
// exact per-block maximizers (surface phases co-phased against the full
// composite row, transmit phases against psi^T cascade + mu direct^T);
// `printed` reproduces a published variant that references per-element
// direct-channel phases instead, defined here only for square N == M.
enum class FaUpdate { composite, printed };

struct BeamformingOptions {
    double tol = 1e-9;   // relative change of the objective
    int max_iter = 1000;
    int restarts = 0;    // extra random unimodular starts beyond the warm start
    std::uint64_t restart_seed = 0x9b97f4a5;
    FaUpdate fa_update = FaUpdate::composite;
};

struct BeamformingResult {
    arma::cx_vec beamformer;       // f, M entries
    arma::cx_vec ris_phases;       // psi, N unit-modulus entries
    double snr = 0.0;
    std::vector<double> objective_trace;  // achieved SNR per iteration
    int iterations = 0;
    bool converged = false;
};

// Received SNR gamma * |psi^T E f + mu g^T f|^2 for a given configuration.
double snr(const ChannelRealization& ch, const arma::cx_vec& beamformer,
           const arma::cx_vec& ris_phases, double gamma, double mu);

// Surface configuration maximizing the SNR for a fixed beamformer: every
// cascade term is rotated onto the phase of the direct term (taken from the
// composite's last row), so all N + 1 contributions add coherently. When
// the direct term vanishes the phase reference is 0.
arma::cx_vec optimal_ris_phases(const ChannelRealization& ch, const arma::cx_vec& beamformer);

// Fully-digital design (||f||_2 = 1): fixed-point iteration on the L1-PCA
// condition f = normalize(G^H u), u = exp(j angle(G f)), warm-started from
// the MRT beamformer. The achieved objective is non-decreasing and the
// returned surface phases are the optimal ones for the final f.
BeamformingResult digital_beamformer(const ChannelRealization& ch, double gamma, double mu,
                                     const BeamformingOptions& opt = {});

// Fully-analog design (|f_m| = 1/sqrt(M)): alternation between the optimal
// surface phases and the per-antenna phase alignment of the combined row
// vector psi^T E + mu g^T.
BeamformingResult analog_beamformer(const ChannelRealization& ch, double gamma, double mu,
                                    const BeamformingOptions& opt = {});

// MRT baseline: matched filter to the coherently combined composite rows
// (one half-step of the digital iteration, no refinement).
BeamformingResult mrt_beamformer(const ChannelRealization& ch, double gamma, double mu);

// Exhaustive reference: sweeps the surface phases over a uniform grid with
// `grid_points` points per element and solves the beamformer in closed form
// at every grid point (FD: matched filter, norm; FA: phase alignment, L1
// norm). The closed-form inner step makes this an upper envelope of a joint
// grid of any resolution. Cost grows as grid_points^N; requires N <= 3, and
// M <= 3 for the FA variant.
BeamformingResult oracle_grid_search(const ChannelRealization& ch, double gamma, double mu,
                                     Architecture arch, int grid_points);

// Dispatch by architecture (mrt ignores opt).
BeamformingResult run_beamformer(Architecture arch, const ChannelRealization& ch, double gamma,
                                 double mu, const BeamformingOptions& opt = {});

const char* architecture_name(Architecture arch);
Architecture architecture_from_name(const std::string& name);

}  // namespace riscap
