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

namespace riscap {

// Modified Bessel function of the first kind, order zero. Power series up to
// x = 20, asymptotic expansion truncated at its smallest term beyond.
// Relative error below 1e-12 over the whole range.
double bessel_i0(double x);

// Exponentially scaled variant exp(-|x|) * I0(x). Never overflows.
double bessel_i0e(double x);

// First-order Marcum Q function Q1(a, b) = P[X > b] for X Rician with
// noncentrality a and unit per-component variance. Two evaluation paths:
// a Bessel series for a*b < 30 and a mode-centered Poisson-gamma mixture
// sum above. Requires a >= 0 and b >= 0.
double marcum_q1(double a, double b);

// Amplitude factors splitting a unit-power Rician link between its
// deterministic and scattered parts: kappa_los^2 + kappa_nlos^2 = 1.
// k_factor is the LoS-to-scatter power ratio; +infinity means pure LoS.
double kappa_los(double k_factor);
double kappa_nlos(double k_factor);

// Envelope distribution of kappa_los + kappa_nlos * CN(0,1):
// Rician with noncentrality nu and per-component deviation sigma.
struct RicianParams {
    double nu;
    double sigma;
};

// Parameters of the envelope of a unit-power Rician fading coefficient with
// the given K factor. Requires k_factor >= 0 and finite (the degenerate
// sigma = 0 limit is handled by callers, not by the density routines).
RicianParams rician_params_from_k(double k_factor);

// Density and distribution of the Rician envelope. Zero for x <= 0; the pdf
// is evaluated in scaled form so large nu/sigma ratios do not overflow.
// Both throw std::invalid_argument when p.sigma <= 0 or p.nu < 0.
double rician_pdf(double x, const RicianParams& p);
double rician_cdf(double x, const RicianParams& p);

}  // namespace riscap
