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

#include <complex>
#include <functional>

#include "riscap/config.hpp"
#include "riscap/quadrature.hpp"
#include "riscap/specfun.hpp"

namespace riscap {

// Tuning knobs for the transform evaluations. Defaults are sized so the
// analytic outage curves agree with Monte Carlo estimates to well below the
// statistical error of 1e6-draw experiments.
struct MgfSettings {
    // CDF transform laplace_of_rician_cdf (adaptive Simpson).
    SimpsonOptions inner{};
    double tail_cut = 1e-14;  // truncate where |exp(-zt)| falls below this

    // Entry transform (Gauss-Legendre against the envelope pdf). The rule
    // size follows the kernel oscillation across the support; requests past
    // the cap abort with numerical_error rather than lose accuracy quietly.
    int entry_max_nodes = 16384;

    // Outer mixing integral over the second envelope (Gauss-Legendre with
    // node doubling until two consecutive orders agree).
    int outer_nodes = 200;
    int outer_max_nodes = 6400;
    double outer_rel_tol = 1e-8;
    double outer_abs_tol = 1e-10;
    double support_lo_sigmas = 12.0;  // integration window around the mode
    double support_hi_sigmas = 10.0;
};

// Laplace transform, at s with Re(s) > 0, of the CDF of scale * X where X
// is Rician(p): scale * integral_0^inf exp(-scale * s * t) F_X(t) dt. The
// integrand is truncated where the exponential falls below tail_cut and
// pre-split so each Simpson panel covers at most one half-oscillation.
std::complex<double> laplace_of_rician_cdf(std::complex<double> s, double scale,
                                           const RicianParams& p, const MgfSettings& st = {});

// Moment generating function M(-s) = E[exp(-s Y)] of the effective cascade
// gain Y = sum_n |h_n| sum_m |H_nm| with i.i.d. Rician entries: the entry
// transform E[exp(-z |H|)] is a pdf quadrature sized to the oscillation of
// its kernel, one element mixes the M-th power of it over the envelope
// density of h, and independence across elements raises the result to the
// N-th power. Infinite K factors degenerate the corresponding envelope to
// a point mass and are handled in closed form.
//
// Instances are immutable after construction and safe to share across
// threads.
class MgfEvaluator {
  public:
    MgfEvaluator(int num_bs_antennas, int num_ris_elements, double k_bs_ris, double k_ris_user,
                 MgfSettings settings = {});

    // Uses M, N, K1 (BS-RIS) and K2 (RIS-user) from the config.
    static MgfEvaluator from_config(const SystemConfig& cfg, MgfSettings settings = {});

    // M(-s). Requires Re(s) > 0 or s == 0. Throws numerical_error when the
    // outer integral fails to settle at the maximum node count.
    std::complex<double> operator()(std::complex<double> s) const;

    // True when both links are pure LoS, making Y a point mass; the mass
    // location is deterministic_value() and the MGF is exp(-s * value).
    bool deterministic() const { return bs_ris_los_ && ris_user_los_; }
    double deterministic_value() const;

    int num_bs_antennas() const { return m_; }
    int num_ris_elements() const { return n_; }

  private:
    std::complex<double> per_element_mgf(std::complex<double> s) const;
    std::complex<double> entry_mgf(std::complex<double> z) const;  // E[exp(-z |H_nm|)]

    int m_;
    int n_;
    bool bs_ris_los_;
    bool ris_user_los_;
    RicianParams bs_ris_env_{1.0, 1.0};    // valid when !bs_ris_los_
    RicianParams ris_user_env_{1.0, 1.0};  // valid when !ris_user_los_
    MgfSettings settings_;
};

struct EulerInversionSettings {
    double discretization_a = 18.4;  // bounds the discretization error near exp(-a)
    int base_terms = 21;             // first partial sum entering the average
    int euler_terms = 15;            // binomial averaging window
    double settle_tol = 1e-7;        // accept when the last increment is below this
    int max_doublings = 4;           // base_terms doublings before giving up
};

struct InversionResult {
    double value = 0.0;         // clipped to [0, 1]
    double raw = 0.0;           // unclipped inversion output
    int terms = 0;              // partial sums actually used
    double settle_delta = 0.0;  // last Euler increment (absolute)
};

// Numerical transform inversion (Fourier-series discretization with Euler
// summation) recovering the CDF F(y) from the mapping s -> M(-s) of any
// nonnegative random variable. Throws numerical_error when the Euler
// average has not settled after all doublings.
InversionResult invert_mgf_to_cdf(const std::function<std::complex<double>(std::complex<double>)>& mgf,
                                  double y, const EulerInversionSettings& st = {});

}  // namespace riscap
