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

#include "riscap/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riscap/bounds.hpp"
#include "riscap/parallel.hpp"
#include "riscap/rng.hpp"

namespace riscap {

namespace {

void check_thresholds(const std::vector<double>& thresholds) {
    if (thresholds.empty()) {
        throw std::invalid_argument("outage: threshold grid must not be empty");
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0.0)) {
            throw std::invalid_argument("outage: thresholds must be positive");
        }
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
            throw std::invalid_argument("outage: thresholds must be strictly ascending");
        }
    }
}

}  // namespace

WilsonInterval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0 || successes < 0 || successes > trials) {
        throw std::invalid_argument("wilson_interval: bad counts");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

OutageCurve outage_lower_bound(const MgfEvaluator& mgf, double gamma,
                               const std::vector<double>& thresholds, UbVariant variant,
                               const EulerInversionSettings& inv, int threads) {
    if (!(gamma > 0.0)) throw std::invalid_argument("outage_lower_bound: gamma must be > 0");
    check_thresholds(thresholds);

    OutageCurve curve;
    curve.kind = CurveKind::analytical_lower_bound;
    curve.thresholds = thresholds;
    curve.probabilities.resize(thresholds.size());

    const double factor =
        variant == UbVariant::scaled_by_m ? static_cast<double>(mgf.num_bs_antennas()) : 1.0;
    const auto gain_at = [&](double beta) { return std::sqrt(factor * beta / gamma); };

    if (mgf.deterministic()) {
        const double mass = mgf.deterministic_value();
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            curve.probabilities[i] = gain_at(thresholds[i]) > mass ? 1.0 : 0.0;
        }
        return curve;
    }

    parallel_for_index(static_cast<long>(thresholds.size()), threads, [&](long i) {
        const auto idx = static_cast<std::size_t>(i);
        const InversionResult r = invert_mgf_to_cdf(
            [&mgf](std::complex<double> s) { return mgf(s); }, gain_at(thresholds[idx]), inv);
        curve.probabilities[idx] = r.value;
    });

    // Inversion noise (~settle_tol) can break monotonicity between adjacent
    // grid points; a running maximum restores it.
    double run_max = 0.0;
    for (double& p : curve.probabilities) {
        run_max = std::max(run_max, p);
        p = run_max;
    }
    return curve;
}

std::vector<TrialMetrics> run_trials(const SystemConfig& cfg, Architecture arch, long trials,
                                     int threads, const BeamformingOptions& opt) {
    cfg.validate();
    if (trials < 1) throw std::invalid_argument("run_trials: need at least one trial");

    const double gamma = cfg.gamma();
    const double mu = cfg.mu();
    std::vector<TrialMetrics> metrics(static_cast<std::size_t>(trials));
    parallel_for_index(trials, threads, [&](long t) {
        std::mt19937_64 gen = make_stream(cfg.seed, static_cast<std::uint64_t>(t));
        const ChannelRealization ch = draw_channel(cfg, gen);
        const BeamformingResult res = run_beamformer(arch, ch, gamma, mu, opt);
        TrialMetrics& m = metrics[static_cast<std::size_t>(t)];
        m.snr = res.snr;
        m.snr_ub = snr_upper_bound(ch, gamma, cfg.num_bs_antennas);
        m.iterations = res.iterations;
    });
    return metrics;
}

OutageCurve monte_carlo_outage(const SystemConfig& cfg, Architecture arch,
                               const std::vector<double>& thresholds, long trials, int threads,
                               const BeamformingOptions& opt) {
    check_thresholds(thresholds);
    const std::vector<TrialMetrics> metrics = run_trials(cfg, arch, trials, threads, opt);

    std::vector<double> snrs(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i) snrs[i] = metrics[i].snr;
    std::sort(snrs.begin(), snrs.end());

    OutageCurve curve;
    switch (arch) {
        case Architecture::fd: curve.kind = CurveKind::monte_carlo_fd; break;
        case Architecture::fa: curve.kind = CurveKind::monte_carlo_fa; break;
        case Architecture::mrt: curve.kind = CurveKind::monte_carlo_mrt; break;
    }
    curve.trials = trials;
    curve.thresholds = thresholds;
    for (double beta : thresholds) {
        const long below =
            std::lower_bound(snrs.begin(), snrs.end(), beta) - snrs.begin();
        curve.probabilities.push_back(static_cast<double>(below) / static_cast<double>(trials));
        const WilsonInterval ci = wilson_interval(below, trials);
        curve.ci_low.push_back(ci.low);
        curve.ci_high.push_back(ci.high);
    }
    return curve;
}

CapacityEstimate monte_carlo_capacity(const SystemConfig& cfg, Architecture arch, long trials,
                                      int threads, const BeamformingOptions& opt) {
    const std::vector<TrialMetrics> metrics = run_trials(cfg, arch, trials, threads, opt);

    std::vector<double> cap(metrics.size());
    std::vector<double> cap_ub(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        cap[i] = capacity(metrics[i].snr);
        cap_ub[i] = capacity(metrics[i].snr_ub);
    }

    CapacityEstimate est;
    est.trials = trials;
    const double n = static_cast<double>(trials);
    est.mean = pairwise_sum(cap) / n;
    est.mean_capacity_ub = pairwise_sum(cap_ub) / n;
    if (trials > 1) {
        std::vector<double> sq(metrics.size());
        for (std::size_t i = 0; i < cap.size(); ++i) {
            const double d = cap[i] - est.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq) / (n - 1.0);
        est.ci_halfwidth = 1.959963984540054 * std::sqrt(var / n);
    }
    return est;
}

const char* curve_kind_name(CurveKind kind) {
    switch (kind) {
        case CurveKind::analytical_lower_bound: return "analytical_lower_bound";
        case CurveKind::monte_carlo_fd: return "monte_carlo_fd";
        case CurveKind::monte_carlo_fa: return "monte_carlo_fa";
        case CurveKind::monte_carlo_mrt: return "monte_carlo_mrt";
    }
    return "?";
}

const char* ub_variant_name(UbVariant v) {
    switch (v) {
        case UbVariant::scaled_by_m: return "scaled_by_m";
        case UbVariant::as_printed: return "as_printed";
    }
    return "?";
}

UbVariant ub_variant_from_name(const std::string& name) {
    if (name == "scaled_by_m") return UbVariant::scaled_by_m;
    if (name == "as_printed") return UbVariant::as_printed;
    throw std::invalid_argument("unknown bound variant '" + name +
                                "' (expected scaled_by_m, as_printed)");
}

}  // namespace riscap
