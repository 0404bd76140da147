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
#include <stdexcept>
#include <string>
#include <vector>

namespace riscap {

// Raised when an iterative numeric procedure fails to reach its requested
// tolerance. Carries the tolerance actually achieved for diagnostics.
class numerical_error : public std::runtime_error {
  public:
    numerical_error(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what), achieved_(achieved_tolerance) {}

    double achieved_tolerance() const { return achieved_; }

  private:
    double achieved_;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;  // sum to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule, computed by Newton
// iteration on the Legendre recurrence and cached per order. Thread-safe.
const GaussLegendreRule& gauss_legendre(int n);

// Integrates f over [a, b] with the n-point Gauss-Legendre rule.
template <typename F>
auto integrate_gauss_legendre(F&& f, double a, double b, int n) {
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double span = 0.5 * (b - a);
    decltype(f(a) * 1.0) acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(mid + span * rule.nodes[i]);
    }
    return acc * span;
}

struct SimpsonOptions {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;  // against the coarse-pass magnitude
    int min_panels = 8;      // initial uniform split, e.g. per oscillation
    int max_panels = 8192;
    int max_depth = 28;
};

// Adaptive Simpson quadrature for complex integrands. The interval is first
// split uniformly into min_panels panels (callers size this to the local
// oscillation so no lobe is skipped), then each panel is refined recursively
// with function-value reuse. Returns the integral; *achieved, when given,
// receives the accumulated error estimate. Throws numerical_error when the
// refinement depth is exhausted before the tolerance is met.
std::complex<double> integrate_adaptive_simpson(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const SimpsonOptions& opt = {}, double* achieved = nullptr);

}  // namespace riscap
