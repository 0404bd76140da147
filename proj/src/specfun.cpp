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

#include "riscap/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace riscap {

namespace {

// log(DBL_MIN) is about -708; exponents below this flush to zero.
constexpr double kExpUnderflow = -745.0;

// Asymptotic expansion of exp(-x) I0(x), truncated at its smallest term.
// Valid for large x; the truncation error is below 1e-15 for x >= 20.
double i0e_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 40; ++k) {
        const double num = 2.0 * k - 1.0;
        term *= num * num / (8.0 * k * x);
        if (term >= prev) break;
        sum += term;
        prev = term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// Power series for I0; all terms positive, so no cancellation.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Marcum Q via the Bessel series, for small a*b. Modified Bessel values
// I_k(a*b) come from Miller's downward recurrence with the normalization
// I0 + 2*sum I_k = exp(a*b) folded into the exp(-(a-b)^2/2) prefactor, so
// every intermediate stays finite.
double marcum_q1_series(double a, double b) {
    const double x = a * b;
    const double r = std::min(a, b) / std::max(a, b);

    // Start order: beyond it, (x/2)^k/k! (an upper envelope of I_k up to a
    // bounded factor for x <= 30) is negligible against the series total.
    int k_start = 0;
    {
        double t = 1.0;
        while (t > 1e-28 || k_start < x + 5.0) {
            ++k_start;
            t *= 0.5 * x / k_start;
        }
        k_start += 6;
    }

    std::vector<double> bessel(static_cast<std::size_t>(k_start) + 1);
    double ip1 = 0.0;     // scaled I_{k+1}
    double ik = 1e-250;   // scaled I_k, arbitrary seed
    for (int k = k_start; k >= 0; --k) {
        bessel[static_cast<std::size_t>(k)] = ik;
        if (k > 0) {
            const double im1 = ip1 + (2.0 * k / x) * ik;
            ip1 = ik;
            ik = im1;
        }
    }

    double norm = bessel[0];          // I0 + 2*sum_{k>=1} I_k, scaled
    double weighted = 0.0;            // sum_{k>=1} r^k I_k, scaled
    double rk = 1.0;
    for (int k = 1; k <= k_start; ++k) {
        norm += 2.0 * bessel[static_cast<std::size_t>(k)];
        rk *= r;
        weighted += rk * bessel[static_cast<std::size_t>(k)];
    }

    const double diff = a - b;
    const double pref = std::exp(-0.5 * diff * diff);
    const double q = b >= a ? pref * (bessel[0] + weighted) / norm
                            : 1.0 - pref * weighted / norm;
    return std::clamp(q, 0.0, 1.0);
}

// Marcum Q as a Poisson mixture of gamma upper-tail probabilities,
// summed over a mode-centered window. Used for large a*b where the
// Bessel series needs too many terms.
double marcum_q1_mixture(double a, double b) {
    const double lambda = 0.5 * a * a;  // Poisson rate
    const double y = 0.5 * b * b;       // gamma tail point

    const long k0 = static_cast<long>(lambda);
    const long half = static_cast<long>(std::ceil(9.0 * std::sqrt(lambda) + 25.0));
    const long k_lo = std::max(0L, k0 - half);
    const long k_hi = k0 + half;

    const double log_y = std::log(y);

    // Cumulative gamma weight G_k = sum_{j<=k} exp(-y) y^j / j!, brought up
    // to k_lo. Terms more than ~12 deviations below the Poisson(y) mode are
    // negligible, so the summation starts there.
    long j_start = std::max(0L, std::min(k_lo, static_cast<long>(y - 12.0 * std::sqrt(y) - 30.0)));
    double lt = -y + j_start * log_y - std::lgamma(static_cast<double>(j_start) + 1.0);
    double t = lt > kExpUnderflow ? std::exp(lt) : 0.0;
    double big_g = t;
    for (long j = j_start + 1; j <= k_lo; ++j) {
        t *= y / static_cast<double>(j);
        big_g += t;
    }
    big_g = std::min(big_g, 1.0);

    // Poisson weight at the window floor, then upward recurrence.
    const double lp = -lambda + k_lo * std::log(lambda) - std::lgamma(static_cast<double>(k_lo) + 1.0);
    double p = lp > kExpUnderflow ? std::exp(lp) : 0.0;

    double q = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) {
        if (k > k_lo) {
            p *= lambda / static_cast<double>(k);
            t *= y / static_cast<double>(k);
            big_g = std::min(big_g + t, 1.0);
        }
        q += p * big_g;
        // Past the Poisson mode the weights decay at least geometrically
        // with ratio lambda/(k+1) < 1, and the gamma factors are <= 1, so
        // the whole remainder is below p * r / (1 - r). Stop once that is
        // invisible next to q. (A cumulative-mass test would hit the
        // resolution floor of 1 - mass near 1 and quit too early for
        // deep-tail results.)
        if (k > k0) {
            const double r = lambda / static_cast<double>(k + 1);
            if (p * r / (1.0 - r) < q * 1e-15) break;
        }
    }
    return std::clamp(q, 0.0, 1.0);
}

}  // namespace

double bessel_i0(double x) {
    x = std::abs(x);
    if (x <= 20.0) return i0_series(x);
    return std::exp(x) * i0e_asymptotic(x);
}

double bessel_i0e(double x) {
    x = std::abs(x);
    if (x <= 20.0) return std::exp(-x) * i0_series(x);
    return i0e_asymptotic(x);
}

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::invalid_argument("marcum_q1: arguments must be non-negative");
    }
    // Near-degenerate arguments: the neglected series terms are O(1e-16).
    if (b < 1e-8) return 1.0;
    if (a < 1e-8) return std::exp(-0.5 * b * b);

    // Exponential tail bounds: once the argument gap is this wide the
    // result is 0 or 1 to beyond double precision.
    const double gap = 0.5 * (b - a) * (b - a);
    if (b > a && gap > -kExpUnderflow) return 0.0;
    if (a > b && gap > -kExpUnderflow) return 1.0;

    if (a * b < 30.0) return marcum_q1_series(a, b);
    return marcum_q1_mixture(a, b);
}

double kappa_los(double k_factor) {
    if (!(k_factor >= 0.0)) {
        throw std::invalid_argument("kappa_los: K factor must be non-negative");
    }
    if (std::isinf(k_factor)) return 1.0;
    return std::sqrt(k_factor / (1.0 + k_factor));
}

double kappa_nlos(double k_factor) {
    if (!(k_factor >= 0.0)) {
        throw std::invalid_argument("kappa_nlos: K factor must be non-negative");
    }
    if (std::isinf(k_factor)) return 0.0;
    return std::sqrt(1.0 / (1.0 + k_factor));
}

RicianParams rician_params_from_k(double k_factor) {
    if (!(k_factor >= 0.0) || std::isinf(k_factor)) {
        throw std::invalid_argument(
            "rician_params_from_k: K factor must be finite and non-negative");
    }
    return {kappa_los(k_factor), kappa_nlos(k_factor) / std::numbers::sqrt2};
}

double rician_pdf(double x, const RicianParams& p) {
    if (!(p.sigma > 0.0) || !(p.nu >= 0.0)) {
        throw std::invalid_argument("rician_pdf: need sigma > 0 and nu >= 0");
    }
    if (x <= 0.0) return 0.0;
    const double s2 = p.sigma * p.sigma;
    const double d = x - p.nu;
    return x / s2 * std::exp(-0.5 * d * d / s2) * bessel_i0e(x * p.nu / s2);
}

double rician_cdf(double x, const RicianParams& p) {
    if (!(p.sigma > 0.0) || !(p.nu >= 0.0)) {
        throw std::invalid_argument("rician_cdf: need sigma > 0 and nu >= 0");
    }
    if (x <= 0.0) return 0.0;
    return 1.0 - marcum_q1(p.nu / p.sigma, x / p.sigma);
}

}  // namespace riscap
