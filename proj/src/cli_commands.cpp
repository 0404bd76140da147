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

#include "riscap/cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>

#include "riscap/bounds.hpp"
#include "riscap/quadrature.hpp"
#include "riscap/rng.hpp"
#include "riscap/specfun.hpp"

namespace riscap {

namespace {

using Clock = std::chrono::steady_clock;

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string k_cell(double k) { return std::isinf(k) ? "inf" : format_cell(k); }

void stamp(ResultTable& table, const SystemConfig& cfg, const char* command) {
    table.set_meta("tool", version_string());
    table.set_meta("command", command);
    table.set_meta("config_hash", hex64(config_hash(cfg)));
    table.set_meta("seed", std::to_string(cfg.seed));
}

void stamp_wall_time(ResultTable& table, Clock::time_point start) {
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    table.set_meta("wall_time_s", format_cell(secs));
}

SystemConfig with_joint_k(SystemConfig cfg, double k) {
    cfg.k_direct = k;
    cfg.k_bs_ris = k;
    cfg.k_ris_user = k;
    return cfg;
}

}  // namespace

SweepResult run_capacity_sweep(const CapacitySweepSpec& spec) {
    const Clock::time_point start = Clock::now();
    spec.base.validate();
    if (spec.trials < 1) throw std::invalid_argument("capacity sweep: need trials >= 1");
    if (spec.archs.empty()) throw std::invalid_argument("capacity sweep: no architectures");

    const std::vector<int> ns =
        spec.ris_sizes.empty() ? std::vector<int>{spec.base.num_ris_elements} : spec.ris_sizes;
    const std::vector<double> ks = spec.k_factors.empty()
                                       ? std::vector<double>{spec.base.k_bs_ris}
                                       : spec.k_factors;
    const bool sweep_k = !spec.k_factors.empty();
    const std::vector<double> mus = spec.mu_db;  // may stay empty: keep base

    SweepResult out;
    out.axes.push_back({"num_ris_elements", {}});
    for (int n : ns) out.axes[0].values.push_back(std::to_string(n));
    out.axes.push_back({"k_factor", {}});
    for (double k : ks) out.axes[1].values.push_back(k_cell(k));
    out.axes.push_back({"mu", {}});
    if (mus.empty()) {
        out.axes[2].values.push_back(format_cell(spec.base.mu()));
    } else {
        for (double m : mus) out.axes[2].values.push_back(format_cell(db_to_amplitude(m)));
    }
    out.axes.push_back({"arch", {}});
    for (Architecture a : spec.archs) out.axes[3].values.push_back(architecture_name(a));

    out.table.columns = {"num_ris_elements", "k_factor", "mu",           "arch",
                         "trials",           "capacity", "capacity_ci95", "capacity_ub",
                         "capacity_gap"};
    stamp(out.table, spec.base, "capacity-sweep");
    out.table.set_meta("trials_per_cell", std::to_string(spec.trials));

    for (int n : ns) {
        for (double k : ks) {
            const std::size_t mu_cells = mus.empty() ? 1 : mus.size();
            for (std::size_t mi = 0; mi < mu_cells; ++mi) {
                SystemConfig cfg = sweep_k ? with_joint_k(spec.base, k) : spec.base;
                cfg.num_ris_elements = n;
                if (!mus.empty()) cfg.mu_override = db_to_amplitude(mus[mi]);
                for (Architecture arch : spec.archs) {
                    const CapacityEstimate est =
                        monte_carlo_capacity(cfg, arch, spec.trials, spec.threads, spec.beam);
                    out.table.add_row({std::to_string(n), k_cell(k), format_cell(cfg.mu()),
                                       architecture_name(arch), std::to_string(spec.trials),
                                       format_cell(est.mean), format_cell(est.ci_halfwidth),
                                       format_cell(est.mean_capacity_ub),
                                       format_cell(est.mean_capacity_ub - est.mean)});
                }
            }
        }
    }
    stamp_wall_time(out.table, start);
    return out;
}

SweepResult run_outage_curve(const OutageCurveSpec& spec) {
    const Clock::time_point start = Clock::now();
    spec.base.validate();
    if (spec.trials < 0) throw std::invalid_argument("outage curve: trials must be >= 0");
    if (!spec.analytic && spec.trials == 0) {
        throw std::invalid_argument("outage curve: nothing to compute");
    }

    const std::vector<double> ks = spec.k_factors.empty()
                                       ? std::vector<double>{spec.base.k_bs_ris}
                                       : spec.k_factors;
    const bool sweep_k = !spec.k_factors.empty();

    SweepResult out;
    out.axes.push_back({"k_factor", {}});
    for (double k : ks) out.axes[0].values.push_back(k_cell(k));
    out.axes.push_back({"kind", {}});
    if (spec.analytic) out.axes[1].values.push_back(curve_kind_name(CurveKind::analytical_lower_bound));
    if (spec.trials > 0) {
        for (Architecture a : spec.archs) {
            out.axes[1].values.push_back(std::string("monte_carlo_") + architecture_name(a));
        }
    }
    out.axes.push_back({"beta", {}});
    for (double b : spec.thresholds) out.axes[2].values.push_back(format_cell(b));

    out.table.columns = {"k_factor", "kind",   "beta",    "beta_db",
                         "probability", "ci_low", "ci_high", "trials"};
    stamp(out.table, spec.base, "outage-curve");
    out.table.set_meta("ub_variant", ub_variant_name(spec.variant));

    const auto add_curve = [&](double k, const OutageCurve& curve) {
        for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
            const bool has_ci = i < curve.ci_low.size();
            out.table.add_row({k_cell(k), curve_kind_name(curve.kind),
                               format_cell(curve.thresholds[i]),
                               format_cell(10.0 * std::log10(curve.thresholds[i])),
                               format_cell(curve.probabilities[i]),
                               has_ci ? format_cell(curve.ci_low[i]) : std::string(),
                               has_ci ? format_cell(curve.ci_high[i]) : std::string(),
                               std::to_string(curve.trials)});
        }
    };

    for (double k : ks) {
        const SystemConfig cfg = sweep_k ? with_joint_k(spec.base, k) : spec.base;
        if (spec.analytic) {
            const MgfEvaluator mgf = MgfEvaluator::from_config(cfg, spec.mgf);
            add_curve(k, outage_lower_bound(mgf, cfg.gamma(), spec.thresholds, spec.variant,
                                            spec.inversion, spec.threads));
        }
        if (spec.trials > 0) {
            for (Architecture arch : spec.archs) {
                add_curve(k, monte_carlo_outage(cfg, arch, spec.thresholds, spec.trials,
                                                spec.threads, spec.beam));
            }
        }
    }
    stamp_wall_time(out.table, start);
    return out;
}

SweepResult run_mgf_probe(const MgfProbeSpec& spec) {
    const Clock::time_point start = Clock::now();
    spec.base.validate();
    if (spec.s_real.empty()) throw std::invalid_argument("mgf probe: empty s grid");
    for (double s : spec.s_real) {
        if (!(s > 0.0)) throw std::invalid_argument("mgf probe: Re(s) must be positive");
    }

    const MgfEvaluator mgf = MgfEvaluator::from_config(spec.base, spec.mgf);

    SweepResult out;
    out.axes.push_back({"s_re", {}});
    for (double s : spec.s_real) out.axes[0].values.push_back(format_cell(s));

    out.table.columns = {"s_re", "s_im", "mgf_re", "mgf_im", "mgf_abs"};
    stamp(out.table, spec.base, "mgf-probe");
    out.table.set_meta("deterministic", mgf.deterministic() ? "true" : "false");

    for (double sr : spec.s_real) {
        const std::complex<double> v = mgf({sr, spec.s_imag});
        out.table.add_row({format_cell(sr), format_cell(spec.s_imag), format_cell(v.real()),
                           format_cell(v.imag()), format_cell(std::abs(v))});
    }
    stamp_wall_time(out.table, start);
    return out;
}

// --- validate ---------------------------------------------------------

namespace {

struct CheckLog {
    std::ostream& os;
    double scale;
    bool all_ok = true;

    void check(const char* name, double metric, double tol) {
        const double limit = tol * scale;
        const bool ok = metric <= limit;
        all_ok = all_ok && ok;
        os << (ok ? "PASS" : "FAIL") << "  " << name << "  metric=" << format_cell(metric)
           << " limit=" << format_cell(limit) << "\n";
    }
};

SystemConfig small_test_config(int m, int n, double k, std::uint64_t seed) {
    SystemConfig cfg;
    cfg.num_bs_antennas = m;
    cfg.num_ris_elements = n;
    cfg = with_joint_k(cfg, k);
    cfg.gamma_override = 1.0;
    cfg.mu_override = db_to_amplitude(5.0);
    cfg.seed = seed;
    return cfg;
}

}  // namespace

int run_validate(const ValidateSpec& spec, std::ostream& log) {
    if (!(spec.tol_scale >= 0.0)) {
        throw std::invalid_argument("validate: tol_scale must be >= 0");
    }
    CheckLog c{log, spec.tol_scale};

    // Special functions.
    {
        const double ref = 1.2660658777520084;  // I0(1), frozen from the series
        c.check("bessel_i0_reference", std::abs(bessel_i0(1.0) - ref) / ref, 1e-13);
        const double tail = bessel_i0e(700.0) * std::sqrt(2.0 * std::numbers::pi * 700.0);
        c.check("bessel_i0_asymptote", std::abs(tail - 1.0), 1e-3);

        // Path handoff continuity at a*b = 30.
        const double lo = marcum_q1(5.0, 6.0 * (1.0 - 1e-7));
        const double hi = marcum_q1(5.0, 6.0 * (1.0 + 1e-7));
        c.check("marcum_path_handoff", std::abs(hi - lo), 1e-4);

        const RicianParams p = rician_params_from_k(5.0);
        const double quad =
            integrate_gauss_legendre([&](double t) { return rician_pdf(t, p); }, 0.0, 1.2, 200);
        c.check("rician_cdf_vs_pdf_integral", std::abs(rician_cdf(1.2, p) - quad), 1e-9);

        const double h = 1e-5;
        const double fd = (rician_cdf(1.0 + h, p) - rician_cdf(1.0 - h, p)) / (2.0 * h);
        c.check("rician_pdf_vs_cdf_slope", std::abs(fd - rician_pdf(1.0, p)) / rician_pdf(1.0, p),
                1e-6);
    }

    // Beamforming.
    {
        const SystemConfig cfg = small_test_config(3, 4, 1.0, 123);
        std::mt19937_64 gen = make_stream(cfg.seed, 0);
        const ChannelRealization ch = draw_channel(cfg, gen);
        const BeamformingResult fd = digital_beamformer(ch, cfg.gamma(), cfg.mu());
        const arma::cx_vec gf = ch.composite * fd.beamformer;
        std::complex<double> dot{};
        for (arma::uword i = 0; i < gf.n_elem; ++i) dot += std::abs(gf(i));
        c.check("l1_objective_identity",
                std::abs(arma::norm(gf, 1) - dot.real()) / dot.real(), 1e-12);

        double worst_fd = 0.0;
        double worst_fa = 0.0;
        // The alternating unit-modulus solver can park on a local optimum
        // from a single warm start; restarts are the documented remedy.
        BeamformingOptions multi;
        multi.restarts = 6;
        for (int t = 0; t < 10; ++t) {
            const SystemConfig tiny = small_test_config(2, 2, 1.0, 7);
            std::mt19937_64 g2 = make_stream(tiny.seed, static_cast<std::uint64_t>(t));
            const ChannelRealization ch2 = draw_channel(tiny, g2);
            const BeamformingResult ofd =
                oracle_grid_search(ch2, tiny.gamma(), tiny.mu(), Architecture::fd, 360);
            const BeamformingResult ofa =
                oracle_grid_search(ch2, tiny.gamma(), tiny.mu(), Architecture::fa, 360);
            const BeamformingResult afd = digital_beamformer(ch2, tiny.gamma(), tiny.mu());
            const BeamformingResult afa =
                analog_beamformer(ch2, tiny.gamma(), tiny.mu(), multi);
            worst_fd = std::max(worst_fd, std::abs(ofd.snr - afd.snr) / ofd.snr);
            worst_fa = std::max(worst_fa, std::abs(ofa.snr - afa.snr) / ofa.snr);
        }
        c.check("digital_vs_grid_reference", worst_fd, 5e-3);
        c.check("analog_vs_grid_reference", worst_fa, 1e-2);

        SystemConfig los;
        los.num_bs_antennas = 4;
        los.num_ris_elements = 64;
        los = with_joint_k(los, std::numeric_limits<double>::infinity());
        los.direct_link = false;
        los.gamma_override = 1.0;
        const ChannelRealization chl = los_channel(los);
        const double want = 16384.0;  // gamma * M * N^2
        const double got = digital_beamformer(chl, los.gamma(), los.mu()).snr;
        c.check("los_digital_snr", std::abs(got - want) / want, 1e-6);

        double worst_gap = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < 500; ++t) {
            const SystemConfig cfg2 = small_test_config(4, 8, 1.0, 99);
            std::mt19937_64 g3 = make_stream(cfg2.seed, static_cast<std::uint64_t>(t));
            const ChannelRealization ch3 = draw_channel(cfg2, g3);
            const double ub = snr_upper_bound(ch3, cfg2.gamma(), cfg2.num_bs_antennas);
            const double fa = analog_beamformer(ch3, cfg2.gamma(), cfg2.mu()).snr;
            worst_gap = std::max(worst_gap, (fa - ub) / ub);
        }
        c.check("analog_within_snr_bound", worst_gap, 1e-9);
    }

    // Transform machinery.
    {
        const MgfEvaluator mgf(2, 2, 5.0, 5.0);
        const std::complex<double> analytic = mgf(0.5);
        std::mt19937_64 gen = make_stream(2024, 0);
        const RicianParams p = rician_params_from_k(5.0);
        const auto envelope = [&gen, &p] {
            return std::abs(std::complex<double>(p.nu, 0.0) +
                            p.sigma * std::numbers::sqrt2 * complex_gaussian(gen));
        };
        double acc = 0.0;
        const long draws = 200000;
        for (long i = 0; i < draws; ++i) {
            double y = 0.0;
            for (int nn = 0; nn < 2; ++nn) {
                const double hn = envelope();
                y += hn * (envelope() + envelope());
            }
            acc += std::exp(-0.5 * y);
        }
        const double mc = acc / static_cast<double>(draws);
        c.check("mgf_vs_monte_carlo", std::abs(analytic.real() - mc) / mc, 1e-2);

        const double phi = (1e-4 * laplace_of_rician_cdf({1e-4, 0.0}, 1.0, p)).real();
        c.check("laplace_final_value", std::abs(phi - 1.0), 1e-3);

        const auto exp_mgf = [](std::complex<double> s) { return 1.0 / (1.0 + s); };
        const auto erl_mgf = [](std::complex<double> s) {
            return 1.0 / ((1.0 + s) * (1.0 + s));
        };
        double worst_exp = 0.0;
        double worst_erl = 0.0;
        for (double y = 0.1; y < 5.0; y += 0.2) {
            worst_exp = std::max(
                worst_exp, std::abs(invert_mgf_to_cdf(exp_mgf, y).value - (1.0 - std::exp(-y))));
            worst_erl =
                std::max(worst_erl, std::abs(invert_mgf_to_cdf(erl_mgf, y).value -
                                             (1.0 - std::exp(-y) * (1.0 + y))));
        }
        c.check("inversion_exponential", worst_exp, 1e-3);
        c.check("inversion_erlang2", worst_erl, 1e-3);

        // A mass point at c makes the series terms quasi-periodic for y > c,
        // where the Euler average cannot settle. The step is therefore probed
        // below and at the jump under a relaxed settling target, and a delayed
        // Erlang pair with a closed form covers the region above the jump.
        EulerInversionSettings relaxed;
        relaxed.settle_tol = 1e-4;
        const auto step_mgf = [](std::complex<double> s) { return std::exp(-s); };
        const double below = invert_mgf_to_cdf(step_mgf, 0.7, relaxed).value;
        const double at_jump = invert_mgf_to_cdf(step_mgf, 1.0, relaxed).value;
        c.check("inversion_step_below", below, 5e-2);
        c.check("inversion_step_midpoint", std::abs(at_jump - 0.5), 5e-2);

        const auto delayed_mgf = [](std::complex<double> s) {
            return std::exp(-s) / ((1.0 + 0.5 * s) * (1.0 + 0.5 * s));
        };
        const double got = invert_mgf_to_cdf(delayed_mgf, 3.0).value;
        const double want = 1.0 - std::exp(-4.0) * 5.0;
        c.check("inversion_delayed_jump", std::abs(got - want), 1e-3);
    }

    // Outage bound against simulation.
    {
        SystemConfig cfg = small_test_config(2, 2, 5.0, 31);
        cfg.direct_link = false;
        cfg.mu_override.reset();
        std::vector<double> betas;
        for (int i = 0; i < 12; ++i) betas.push_back(0.1 * std::pow(40.0 / 0.1, i / 11.0));
        const MgfEvaluator mgf = MgfEvaluator::from_config(cfg);
        const OutageCurve lb = outage_lower_bound(mgf, cfg.gamma(), betas,
                                                  UbVariant::scaled_by_m, {}, spec.threads);
        const OutageCurve emp =
            monte_carlo_outage(cfg, Architecture::fa, betas, 1000, spec.threads);
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < betas.size(); ++i) {
            const double sigma_w = (emp.ci_high[i] - emp.ci_low[i]) / (2.0 * 1.959963984540054);
            worst = std::max(worst,
                             lb.probabilities[i] - (emp.probabilities[i] + 3.0 * sigma_w));
        }
        c.check("outage_bound_below_empirical", worst, 1e-9);
    }

    // Architecture dominance on a seeded instance: digital beats both the
    // unit-modulus and matched-filter solutions.
    {
        const SystemConfig cfg = small_test_config(2, 2, 1.0, 20240711);
        std::mt19937_64 gen = make_stream(cfg.seed, 0);
        const ChannelRealization ch = draw_channel(cfg, gen);
        const double afd = digital_beamformer(ch, 1.0, cfg.mu()).snr;
        const double afa = analog_beamformer(ch, 1.0, cfg.mu()).snr;
        const double amrt = mrt_beamformer(ch, 1.0, cfg.mu()).snr;
        const double worst = std::max(amrt - afd, afa - afd) / afd;
        c.check("architecture_ordering", worst, 1e-9);
    }

    log << (c.all_ok ? "validation passed" : "validation FAILED") << "\n";
    return c.all_ok ? 0 : 2;
}

}  // namespace riscap
