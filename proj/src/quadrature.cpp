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

#include "riscap/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace riscap {

namespace {

GaussLegendreRule compute_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

struct PanelResult {
    std::complex<double> value;
    double error;
};

using Cx = std::complex<double>;

// One level of Simpson refinement over [a, b] with endpoint/midpoint values
// and the coarse estimate already known.
PanelResult simpson_refine(const std::function<Cx(double)>& f, double a, double b,
                           Cx fa, Cx fm, Cx fb, Cx coarse, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Cx flm = f(lm);
    const Cx frm = f(rm);
    const Cx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Cx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Cx fine = left + right;
    const double err = std::abs(fine - coarse);
    if (err <= 15.0 * tol || depth <= 0) {
        return {fine + (fine - coarse) / 15.0, err / 15.0};
    }
    const PanelResult rl = simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    const PanelResult rr = simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    return {rl.value + rr.value, rl.error + rr.error};
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1 || n > 100000) {
        throw std::invalid_argument("gauss_legendre: order out of range");
    }
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<GaussLegendreRule>(compute_gauss_legendre(n))).first;
    }
    return *it->second;
}

std::complex<double> integrate_adaptive_simpson(const std::function<Cx(double)>& f,
                                                double a, double b,
                                                const SimpsonOptions& opt,
                                                double* achieved) {
    if (!(b >= a)) {
        throw std::invalid_argument("integrate_adaptive_simpson: need b >= a");
    }
    if (a == b) {
        if (achieved) *achieved = 0.0;
        return {};
    }

    const int panels = std::min(std::max(opt.min_panels, 1), opt.max_panels);
    const double h = (b - a) / panels;

    // Coarse pass: evaluate endpoints and midpoints of every panel, form the
    // plain Simpson estimate to size the tolerance, reusing all values below.
    std::vector<Cx> fe(static_cast<std::size_t>(panels) + 1);
    std::vector<Cx> fm(static_cast<std::size_t>(panels));
    for (int i = 0; i <= panels; ++i) fe[static_cast<std::size_t>(i)] = f(a + h * i);
    for (int i = 0; i < panels; ++i) fm[static_cast<std::size_t>(i)] = f(a + h * (i + 0.5));

    double coarse_mag = 0.0;
    std::vector<Cx> coarse(static_cast<std::size_t>(panels));
    for (int i = 0; i < panels; ++i) {
        coarse[static_cast<std::size_t>(i)] =
            h / 6.0 * (fe[static_cast<std::size_t>(i)] + 4.0 * fm[static_cast<std::size_t>(i)] +
                       fe[static_cast<std::size_t>(i) + 1]);
        coarse_mag += std::abs(coarse[static_cast<std::size_t>(i)]);
    }

    const double tol = std::max(opt.abs_tol, opt.rel_tol * coarse_mag);
    const double panel_tol = tol / panels;

    Cx total{};
    double err_total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double pa = a + h * i;
        const double pb = a + h * (i + 1);
        const PanelResult r =
            simpson_refine(f, pa, pb, fe[static_cast<std::size_t>(i)],
                           fm[static_cast<std::size_t>(i)], fe[static_cast<std::size_t>(i) + 1],
                           coarse[static_cast<std::size_t>(i)], panel_tol, opt.max_depth);
        total += r.value;
        err_total += r.error;
    }

    if (achieved) *achieved = err_total;
    if (err_total > 10.0 * tol) {
        throw numerical_error("integrate_adaptive_simpson: tolerance not reached", err_total);
    }
    return total;
}

}  // namespace riscap
