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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "riscap/bounds.hpp"
#include "riscap/outage.hpp"
#include "riscap/rng.hpp"

using namespace riscap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemConfig make_config(int m, int n, double k) {
    SystemConfig cfg;
    cfg.num_bs_antennas = m;
    cfg.num_ris_elements = n;
    cfg.k_direct = cfg.k_bs_ris = cfg.k_ris_user = k;
    cfg.direct_link = false;
    cfg.gamma_override = 1.0;
    cfg.seed = 4242;
    return cfg;
}

double envelope_draw(const RicianParams& p, std::mt19937_64& gen) {
    const std::complex<double> scatter =
        std::numbers::sqrt2 * p.sigma * complex_gaussian(gen);
    return std::abs(std::complex<double>(p.nu, 0.0) + scatter);
}

double double_sum_draw(int m, int n, const RicianParams& first, const RicianParams& second,
                       std::mt19937_64& gen) {
    double total = 0.0;
    for (int e = 0; e < n; ++e) {
        double inner = 0.0;
        for (int a = 0; a < m; ++a) inner += envelope_draw(first, gen);
        total += envelope_draw(second, gen) * inner;
    }
    return total;
}

bool metrics_equal(const std::vector<TrialMetrics>& a, const std::vector<TrialMetrics>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].snr != b[i].snr) return false;
        if (a[i].snr_ub != b[i].snr_ub) return false;
        if (a[i].iterations != b[i].iterations) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("wilson interval brackets the estimate and clamps at the extremes") {
    const WilsonInterval none = wilson_interval(0, 40);
    CHECK(none.low == 0.0);
    CHECK(none.high > 0.0);
    CHECK(none.high < 0.2);

    const WilsonInterval all = wilson_interval(40, 40);
    CHECK(all.high == 1.0);
    CHECK(all.low > 0.8);
    CHECK(all.low < 1.0);

    // Interior estimates are contained and the interval is symmetric about
    // one half when the counts are.
    const WilsonInterval mid = wilson_interval(50, 100);
    CHECK(mid.low < 0.5);
    CHECK(mid.high > 0.5);
    CHECK(mid.low + mid.high == doctest::Approx(1.0).epsilon(1e-12));

    // For large counts the interval approaches the normal approximation.
    const long n = 1000000;
    const long k = 200000;
    const WilsonInterval big = wilson_interval(k, n);
    const double p = 0.2;
    const double half = 1.959963984540054 * std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs((big.high - big.low) / 2.0 - half) < 0.01 * half);
    CHECK(big.low < p);
    CHECK(big.high > p);

    // Both edges move up with the success count.
    WilsonInterval prev = wilson_interval(0, 20);
    for (long s = 1; s <= 20; ++s) {
        const WilsonInterval cur = wilson_interval(s, 20);
        CHECK(cur.low >= prev.low);
        CHECK(cur.high >= prev.high);
        prev = cur;
    }

    CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(-1, 10), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
}

TEST_CASE("pairwise summation is exact on integer patterns and matches long double") {
    std::vector<double> ints(1000);
    for (std::size_t i = 0; i < ints.size(); ++i) ints[i] = static_cast<double>(i + 1);
    CHECK(pairwise_sum(ints) == 1000.0 * 1001.0 / 2.0);

    std::vector<double> alt(256);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    CHECK(pairwise_sum(alt) == 0.0);

    CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
    const double single[] = {3.25};
    CHECK(pairwise_sum(single) == 3.25);

    // Just above the leaf size, against a long double accumulator.
    auto gen = make_stream(11, 0);
    std::vector<double> vals(17);
    long double want = 0.0L;
    for (double& v : vals) {
        v = uniform_unit(gen) - 0.5;
        want += static_cast<long double>(v);
    }
    CHECK(std::abs(pairwise_sum(vals) - static_cast<double>(want)) < 1e-14);
}

TEST_CASE("the two bound variants differ exactly by the antenna scaling of the threshold") {
    const MgfEvaluator mgf(2, 2, 1.0, 1.0);
    const double gamma = 0.8;
    const std::vector<double> betas = {0.5, 1.0, 2.0, 4.0};
    std::vector<double> scaled_betas;
    for (double b : betas) scaled_betas.push_back(2.0 * b);

    const OutageCurve a = outage_lower_bound(mgf, gamma, betas, UbVariant::scaled_by_m);
    const OutageCurve b = outage_lower_bound(mgf, gamma, scaled_betas, UbVariant::as_printed);
    REQUIRE(a.probabilities.size() == b.probabilities.size());
    for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
        CHECK(a.probabilities[i] == doctest::Approx(b.probabilities[i]).epsilon(1e-12));
    }
    CHECK(a.kind == CurveKind::analytical_lower_bound);
    CHECK(a.ci_low.empty());
    CHECK(a.ci_high.empty());
}

TEST_CASE("the analytic curve is the gain distribution evaluated at the mapped thresholds") {
    // Independent route: sample the double envelope sum directly and read
    // its empirical CDF at sqrt(M beta / gamma).
    const int m = 2;
    const int n = 3;
    const double k1 = 1.0;
    const double k2 = 4.0;
    const double gamma = 0.5;
    const MgfEvaluator mgf(m, n, k1, k2);

    const RicianParams first = rician_params_from_k(k1);
    const RicianParams second = rician_params_from_k(k2);
    const int draws = 120000;
    auto gen = make_stream(90210, 3);
    std::vector<double> samples(static_cast<std::size_t>(draws));
    for (double& s : samples) s = double_sum_draw(m, n, first, second, gen);
    std::sort(samples.begin(), samples.end());

    const std::vector<double> betas = {2.0, 6.0, 12.0, 20.0};
    const OutageCurve curve = outage_lower_bound(mgf, gamma, betas);
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double gain = std::sqrt(m * betas[i] / gamma);
        const double empirical =
            static_cast<double>(std::lower_bound(samples.begin(), samples.end(), gain) -
                                samples.begin()) /
            draws;
        CAPTURE(betas[i]);
        CHECK(std::abs(curve.probabilities[i] - empirical) < 5e-3);
    }

    // Monotone by construction, even where inversion noise is visible.
    for (std::size_t i = 1; i < curve.probabilities.size(); ++i) {
        CHECK(curve.probabilities[i] >= curve.probabilities[i - 1]);
    }
}

TEST_CASE("pure line of sight gives an exact outage step without inversion") {
    const MgfEvaluator mgf(2, 3, kInf, kInf);  // point mass at 6
    const double gamma = 1.0;
    // Step sits where sqrt(M beta / gamma) crosses 6, so at beta = 18.
    const std::vector<double> betas = {17.9, 18.0, 18.1};
    const OutageCurve curve = outage_lower_bound(mgf, gamma, betas);
    CHECK(curve.probabilities[0] == 0.0);
    CHECK(curve.probabilities[1] == 0.0);  // gain equal to the mass is not an outage
    CHECK(curve.probabilities[2] == 1.0);
}

TEST_CASE("loose inversion settings still produce a monotone curve") {
    const MgfEvaluator mgf(2, 2, 2.0, 2.0);
    EulerInversionSettings sloppy;
    sloppy.settle_tol = 1e-3;
    std::vector<double> betas;
    for (int i = 0; i < 25; ++i) betas.push_back(0.4 * (i + 1));
    const OutageCurve curve = outage_lower_bound(mgf, 1.0, betas, UbVariant::scaled_by_m, sloppy);
    for (std::size_t i = 1; i < curve.probabilities.size(); ++i) {
        CHECK(curve.probabilities[i] >= curve.probabilities[i - 1]);
    }
    CHECK(curve.probabilities.front() >= 0.0);
    CHECK(curve.probabilities.back() <= 1.0);
}

TEST_CASE("trials reproduce bit-identically for any thread count") {
    const SystemConfig cfg = make_config(2, 3, 1.0);
    const std::vector<TrialMetrics> one = run_trials(cfg, Architecture::fd, 64, 1);
    const std::vector<TrialMetrics> three = run_trials(cfg, Architecture::fd, 64, 3);
    const std::vector<TrialMetrics> four = run_trials(cfg, Architecture::fd, 64, 4);
    CHECK(metrics_equal(one, three));
    CHECK(metrics_equal(one, four));

    const std::vector<double> betas = {0.5, 2.0, 8.0};
    const OutageCurve c1 = monte_carlo_outage(cfg, Architecture::fa, betas, 64, 1);
    const OutageCurve c4 = monte_carlo_outage(cfg, Architecture::fa, betas, 64, 4);
    CHECK(c1.probabilities == c4.probabilities);
    CHECK(c1.ci_low == c4.ci_low);
    CHECK(c1.ci_high == c4.ci_high);
    CHECK(c1.trials == 64);
    CHECK(c4.kind == CurveKind::monte_carlo_fa);
}

TEST_CASE("architectures share channel randomness through trial-keyed streams") {
    const SystemConfig cfg = make_config(2, 4, 2.0);
    const long trials = 48;
    const std::vector<TrialMetrics> fd = run_trials(cfg, Architecture::fd, trials);
    const std::vector<TrialMetrics> mrt = run_trials(cfg, Architecture::mrt, trials);

    for (long t = 0; t < trials; ++t) {
        const auto i = static_cast<std::size_t>(t);
        // Identical channel draw per trial: the bound depends only on it.
        CHECK(fd[i].snr_ub == mrt[i].snr_ub);
        // Warm start makes the digital solution at least the matched filter.
        CHECK(fd[i].snr >= mrt[i].snr * (1.0 - 1e-12));
    }
}

TEST_CASE("transmit power scales trial snr linearly") {
    SystemConfig lo = make_config(2, 3, 5.0);
    SystemConfig hi = lo;
    lo.gamma_override = 1.0;
    hi.gamma_override = 2.0;
    const std::vector<TrialMetrics> base = run_trials(lo, Architecture::fd, 32);
    const std::vector<TrialMetrics> twice = run_trials(hi, Architecture::fd, 32);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(twice[i].snr == doctest::Approx(2.0 * base[i].snr).epsilon(1e-12));
        CHECK(twice[i].snr_ub == doctest::Approx(2.0 * base[i].snr_ub).epsilon(1e-12));
    }
}

TEST_CASE("empirical outage counts strictly below each threshold") {
    SystemConfig cfg = make_config(2, 3, kInf);
    const std::vector<TrialMetrics> metrics = run_trials(cfg, Architecture::fa, 8);
    const double snr = metrics[0].snr;
    for (const TrialMetrics& m : metrics) CHECK(m.snr == snr);  // deterministic channel

    const std::vector<double> betas = {snr * 0.999999, snr, snr * 1.000001};
    const OutageCurve curve = monte_carlo_outage(cfg, Architecture::fa, betas, 8);
    CHECK(curve.probabilities[0] == 0.0);
    CHECK(curve.probabilities[1] == 0.0);  // exact ties are not outages
    CHECK(curve.probabilities[2] == 1.0);
    CHECK(curve.ci_low[0] == 0.0);
    CHECK(curve.ci_high[2] == 1.0);
}

TEST_CASE("capacity estimates collapse exactly in the deterministic limit") {
    SystemConfig cfg = make_config(2, 4, kInf);
    const CapacityEstimate est = monte_carlo_capacity(cfg, Architecture::fa, 8);
    const std::vector<TrialMetrics> metrics = run_trials(cfg, Architecture::fa, 8);
    const double want = capacity(metrics[0].snr);
    CHECK(est.mean == doctest::Approx(want).epsilon(1e-12));
    CHECK(est.ci_halfwidth == 0.0);
    CHECK(est.trials == 8);
    // Rank-one specular cascade: the per-draw bound is attained, so the
    // averaged bound coincides with the achieved capacity.
    CHECK(est.mean_capacity_ub == doctest::Approx(est.mean).epsilon(1e-9));
}

TEST_CASE("capacity grows with the surface size and the bound stays above the mean") {
    const long trials = 400;
    SystemConfig small = make_config(2, 4, 10.0);
    SystemConfig big = make_config(2, 8, 10.0);
    const CapacityEstimate a = monte_carlo_capacity(small, Architecture::fd, trials);
    const CapacityEstimate b = monte_carlo_capacity(big, Architecture::fd, trials);
    CHECK(b.mean > a.mean);
    CHECK(a.mean_capacity_ub > a.mean);
    CHECK(b.mean_capacity_ub > b.mean);
    CHECK(a.ci_halfwidth > 0.0);
    CHECK(a.ci_halfwidth < 0.2);
}

TEST_CASE("the analytic lower bound sits below the fully digital empirical curve") {
    SystemConfig cfg = make_config(2, 4, 5.0);
    const long trials = 2000;
    const MgfEvaluator mgf = MgfEvaluator::from_config(cfg);

    // Thresholds at empirical quantiles so every regime is covered.
    std::vector<TrialMetrics> metrics = run_trials(cfg, Architecture::fd, trials);
    std::vector<double> snrs;
    for (const TrialMetrics& m : metrics) snrs.push_back(m.snr);
    std::sort(snrs.begin(), snrs.end());
    const std::vector<double> betas = {snrs[trials / 10], snrs[3 * trials / 10],
                                       snrs[trials / 2], snrs[8 * trials / 10]};

    const OutageCurve lb = outage_lower_bound(mgf, cfg.gamma(), betas);
    const OutageCurve emp = monte_carlo_outage(cfg, Architecture::fd, betas, trials);
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double sigma = (emp.ci_high[i] - emp.ci_low[i]) / (2.0 * 1.959963984540054);
        CAPTURE(betas[i]);
        CHECK(lb.probabilities[i] <= emp.probabilities[i] + 3.0 * sigma + 2e-3);
    }
}

TEST_CASE("threshold and argument validation") {
    const MgfEvaluator mgf(2, 2, 1.0, 1.0);
    const SystemConfig cfg = make_config(2, 2, 1.0);

    CHECK_THROWS_AS(outage_lower_bound(mgf, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(outage_lower_bound(mgf, 1.0, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(outage_lower_bound(mgf, 1.0, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(outage_lower_bound(mgf, 1.0, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(outage_lower_bound(mgf, 1.0, {2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(outage_lower_bound(mgf, 0.0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(outage_lower_bound(mgf, -1.0, {1.0}), std::invalid_argument);

    CHECK_THROWS_AS(monte_carlo_outage(cfg, Architecture::fd, {1.0, 0.5}, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_trials(cfg, Architecture::fd, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_trials(cfg, Architecture::fd, -5), std::invalid_argument);
}

TEST_CASE("curve kind and variant names round trip") {
    CHECK(std::string(curve_kind_name(CurveKind::analytical_lower_bound)) ==
          "analytical_lower_bound");
    CHECK(std::string(curve_kind_name(CurveKind::monte_carlo_fd)) == "monte_carlo_fd");
    CHECK(std::string(curve_kind_name(CurveKind::monte_carlo_fa)) == "monte_carlo_fa");
    CHECK(std::string(curve_kind_name(CurveKind::monte_carlo_mrt)) == "monte_carlo_mrt");

    CHECK(ub_variant_from_name("scaled_by_m") == UbVariant::scaled_by_m);
    CHECK(ub_variant_from_name("as_printed") == UbVariant::as_printed);
    CHECK(std::string(ub_variant_name(UbVariant::scaled_by_m)) == "scaled_by_m");
    CHECK(std::string(ub_variant_name(UbVariant::as_printed)) == "as_printed");
    CHECK_THROWS_AS(ub_variant_from_name("other"), std::invalid_argument);
}
