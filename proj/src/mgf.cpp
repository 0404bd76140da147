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

#include "riscap/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace riscap {

namespace {

using Cx = std::complex<double>;

Cx pow_int(Cx base, int exp) {
    Cx acc(1.0, 0.0);
    while (exp > 0) {
        if (exp & 1) acc *= base;
        base *= base;
        exp >>= 1;
    }
    return acc;
}

// E[exp(-z X)] for a Rician envelope X, as a Gauss-Legendre quadrature of
// the pdf against the complex exponential. The support window is fixed, so
// the only difficulty is the modulation frequency Im(z): the rule size
// grows past the oscillation count with a margin for the smooth factor,
// rounded up to a power of two so the cached rules stay few.
Cx envelope_mgf(Cx z, const RicianParams& env, const MgfSettings& st) {
    if (z == Cx{}) return {1.0, 0.0};
    const double lo = std::max(0.0, env.nu - st.support_lo_sigmas * env.sigma);
    const double hi = env.nu + st.support_hi_sigmas * env.sigma;

    const double need = 0.75 * std::abs(z.imag()) * (hi - lo) + 80.0;
    int nodes = 64;
    while (nodes < need && nodes < st.entry_max_nodes) nodes *= 2;
    if (nodes < need) {
        throw numerical_error("envelope transform: frequency exceeds the quadrature cap", need);
    }

    const GaussLegendreRule& rule = gauss_legendre(nodes);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    Cx acc{};
    for (int i = 0; i < nodes; ++i) {
        const double x = mid + half * rule.nodes[static_cast<std::size_t>(i)];
        acc += rule.weights[static_cast<std::size_t>(i)] * rician_pdf(x, env) *
               std::exp(-z * x);
    }
    return half * acc;
}

}  // namespace

std::complex<double> laplace_of_rician_cdf(std::complex<double> s, double scale,
                                           const RicianParams& p, const MgfSettings& st) {
    if (!(s.real() > 0.0)) {
        throw std::invalid_argument("laplace_of_rician_cdf: need Re(s) > 0");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("laplace_of_rician_cdf: scale must be positive");
    }
    // Change of variables folds the scale into the frequency:
    // L_scale(s) = scale * L_1(scale * s).
    const Cx z = scale * s;

    const double x_max = -std::log(st.tail_cut) / z.real();

    SimpsonOptions opt = st.inner;
    const double oscillations = std::abs(z.imag()) * x_max / std::numbers::pi;
    opt.min_panels = std::clamp(static_cast<int>(std::ceil(oscillations)) + 1,
                                st.inner.min_panels, st.inner.max_panels);

    const Cx integral = integrate_adaptive_simpson(
        [&](double t) { return std::exp(-z * t) * rician_cdf(t, p); }, 0.0, x_max, opt);
    return scale * integral;
}

MgfEvaluator::MgfEvaluator(int num_bs_antennas, int num_ris_elements, double k_bs_ris,
                           double k_ris_user, MgfSettings settings)
    : m_(num_bs_antennas),
      n_(num_ris_elements),
      bs_ris_los_(std::isinf(k_bs_ris)),
      ris_user_los_(std::isinf(k_ris_user)),
      settings_(settings) {
    if (m_ < 1 || n_ < 1) {
        throw std::invalid_argument("MgfEvaluator: dimensions must be >= 1");
    }
    if (!(k_bs_ris >= 0.0) || !(k_ris_user >= 0.0)) {
        throw std::invalid_argument("MgfEvaluator: K factors must be >= 0");
    }
    if (!bs_ris_los_) bs_ris_env_ = rician_params_from_k(k_bs_ris);
    if (!ris_user_los_) ris_user_env_ = rician_params_from_k(k_ris_user);
}

MgfEvaluator MgfEvaluator::from_config(const SystemConfig& cfg, MgfSettings settings) {
    cfg.validate();
    return MgfEvaluator(cfg.num_bs_antennas, cfg.num_ris_elements, cfg.k_bs_ris,
                        cfg.k_ris_user, settings);
}

double MgfEvaluator::deterministic_value() const {
    if (!deterministic()) {
        throw std::logic_error("MgfEvaluator: value is a point mass only under pure LoS");
    }
    // Unit-modulus LoS entries: every envelope is exactly 1.
    return static_cast<double>(n_) * static_cast<double>(m_);
}

// E[exp(-z |H_nm|)] for one entry of the first link.
std::complex<double> MgfEvaluator::entry_mgf(std::complex<double> z) const {
    if (z == Cx{}) return {1.0, 0.0};
    if (bs_ris_los_) return std::exp(-z);  // |H_nm| identically 1
    return envelope_mgf(z, bs_ris_env_, settings_);
}

std::complex<double> MgfEvaluator::per_element_mgf(std::complex<double> s) const {
    if (ris_user_los_) {
        // |h_n| is exactly 1: only the M first-link entries remain.
        return pow_int(entry_mgf(s), m_);
    }

    const RicianParams& env = ris_user_env_;
    const double lo = std::max(0.0, env.nu - settings_.support_lo_sigmas * env.sigma);
    const double hi = env.nu + settings_.support_hi_sigmas * env.sigma;

    const auto integrand = [&](double t) -> Cx {
        return rician_pdf(t, env) * pow_int(entry_mgf(s * t), m_);
    };

    // Gauss-Legendre with node doubling until two consecutive orders agree.
    Cx prev = integrate_gauss_legendre(integrand, lo, hi, settings_.outer_nodes);
    double err = std::numeric_limits<double>::infinity();
    for (int nodes = 2 * settings_.outer_nodes; nodes <= settings_.outer_max_nodes;
         nodes *= 2) {
        const Cx cur = integrate_gauss_legendre(integrand, lo, hi, nodes);
        err = std::abs(cur - prev);
        if (err <= std::max(settings_.outer_abs_tol, settings_.outer_rel_tol * std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    throw numerical_error("MgfEvaluator: mixing integral did not settle", err);
}

std::complex<double> MgfEvaluator::operator()(std::complex<double> s) const {
    if (s == Cx{}) return {1.0, 0.0};
    if (!(s.real() > 0.0)) {
        throw std::invalid_argument("MgfEvaluator: need Re(s) > 0 or s == 0");
    }
    if (deterministic()) return std::exp(-s * deterministic_value());
    return pow_int(per_element_mgf(s), n_);
}

InversionResult invert_mgf_to_cdf(
    const std::function<std::complex<double>(std::complex<double>)>& mgf, double y,
    const EulerInversionSettings& st) {
    if (st.base_terms < 1 || st.euler_terms < 1 || st.max_doublings < 0) {
        throw std::invalid_argument("invert_mgf_to_cdf: bad settings");
    }
    InversionResult res;
    if (y <= 0.0) return res;  // nonnegative variable: F(y) = 0 there

    const double a = st.discretization_a;
    const int q = st.euler_terms;
    const double prefactor = std::exp(0.5 * a) / (2.0 * y);

    // Binomial weights C(q, j) / 2^q.
    std::vector<double> w(static_cast<std::size_t>(q) + 1);
    w[0] = std::pow(0.5, q);
    for (int j = 1; j <= q; ++j) {
        w[static_cast<std::size_t>(j)] =
            w[static_cast<std::size_t>(j - 1)] * static_cast<double>(q - j + 1) / j;
    }

    // Partial sums S_k of the alternating Fourier series, grown lazily.
    std::vector<double> sums;
    const auto extend_sums = [&](int upto) {
        if (sums.empty()) {
            const Cx s0{a / (2.0 * y), 0.0};
            sums.push_back((mgf(s0) / s0).real());
        }
        while (static_cast<int>(sums.size()) <= upto) {
            const int k = static_cast<int>(sums.size());
            const Cx sk{a / (2.0 * y), std::numbers::pi * k / y};
            const double term = 2.0 * (mgf(sk) / sk).real();
            sums.push_back(sums.back() + (k % 2 == 0 ? term : -term));
        }
    };
    const auto euler_avg = [&](int first) {
        double acc = 0.0;
        for (int j = 0; j <= q; ++j) {
            acc += w[static_cast<std::size_t>(j)] * sums[static_cast<std::size_t>(first + j)];
        }
        return acc;
    };

    int k0 = st.base_terms;
    for (int attempt = 0;; ++attempt) {
        extend_sums(k0 + q);
        const double cur = euler_avg(k0);
        const double before = euler_avg(k0 - 1);
        res.settle_delta = prefactor * std::abs(cur - before);
        res.terms = k0 + q + 1;
        if (res.settle_delta <= st.settle_tol) {
            res.raw = prefactor * cur;
            break;
        }
        if (attempt == st.max_doublings) {
            throw numerical_error("invert_mgf_to_cdf: Euler average did not settle",
                                  res.settle_delta);
        }
        k0 *= 2;
    }
    res.value = std::clamp(res.raw, 0.0, 1.0);
    return res;
}

}  // namespace riscap
