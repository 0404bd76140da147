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

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riscap/cli_commands.hpp"
#include "riscap/quadrature.hpp"

namespace {

using namespace riscap;

double parse_k_factor(const std::string& text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size())
        throw std::invalid_argument("K factor must be a number or 'inf', got '" + text + "'");
    return v;
}

std::vector<double> parse_k_list(const std::vector<std::string>& texts) {
    std::vector<double> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(parse_k_factor(t));
    return out;
}

std::vector<Architecture> parse_arch_list(const std::vector<std::string>& names) {
    std::vector<Architecture> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(architecture_from_name(n));
    return out;
}

// Scenario options shared by every subcommand. Each flag is applied only if
// it was actually given, so the layering is: defaults, then --config file,
// then explicit flags.
class ConfigFlags {
  public:
    explicit ConfigFlags(CLI::App& app) {
        app.add_option("--config", config_file_, "JSON scenario file (flags override it)")
            ->check(CLI::ExistingFile);

        o_m_ = app.add_option("-M,--bs-antennas", m_, "BS antenna count");
        o_n_ = app.add_option("-N,--ris-elements", n_, "reflecting element count");

        o_tx_ = app.add_option("--tx-power", tx_, "transmit power, linear");
        o_tx_db_ = app.add_option("--tx-power-db", tx_db_, "transmit power, dB");
        o_noise_ = app.add_option("--noise-power", noise_, "noise power, linear");
        o_noise_db_ = app.add_option("--noise-power-db", noise_db_, "noise power, dB");
        o_ple_ = app.add_option("--path-loss-exp", ple_, "path loss exponent");
        o_d0_ = app.add_option("--dist-direct", d0_, "BS-user distance");
        o_d1_ = app.add_option("--dist-bs-ris", d1_, "BS-RIS distance");
        o_d2_ = app.add_option("--dist-ris-user", d2_, "RIS-user distance");

        o_k_ = app.add_option("-K,--k", k_, "Rician K for all links (number or 'inf')");
        o_k0_ = app.add_option("--k-direct", k0_, "Rician K, BS-user link");
        o_k1_ = app.add_option("--k-bs-ris", k1_, "Rician K, BS-RIS link");
        o_k2_ = app.add_option("--k-ris-user", k2_, "Rician K, RIS-user link");

        o_aod_direct_ = app.add_option("--aod-direct", aod_direct_, "BS departure angle, direct link (rad)");
        o_aod_direct_deg_ = app.add_option("--aod-direct-deg", aod_direct_deg_, "same, degrees");
        o_aod_ris_ = app.add_option("--aod-ris", aod_ris_, "BS departure angle toward RIS (rad)");
        o_aod_ris_deg_ = app.add_option("--aod-ris-deg", aod_ris_deg_, "same, degrees");
        o_aoa_ris_ = app.add_option("--aoa-ris", aoa_ris_, "RIS arrival angle (rad)");
        o_aoa_ris_deg_ = app.add_option("--aoa-ris-deg", aoa_ris_deg_, "same, degrees");
        o_aod_ris_user_ = app.add_option("--aod-ris-user", aod_ris_user_, "RIS departure angle toward user (rad)");
        o_aod_ris_user_deg_ = app.add_option("--aod-ris-user-deg", aod_ris_user_deg_, "same, degrees");

        o_spacing_ = app.add_option("--element-spacing", spacing_, "array spacing over wavelength");
        o_direct_ = app.add_flag("--direct-link,!--no-direct-link", direct_, "include the BS-user path");

        o_gamma_ = app.add_option("--gamma", gamma_, "composite SNR scale override, linear");
        o_gamma_db_ = app.add_option("--gamma-db", gamma_db_, "same, dB");
        o_mu_ = app.add_option("--mu", mu_, "direct-path amplitude override, linear");
        o_mu_db_ = app.add_option("--mu-db", mu_db_, "same, dB (20 log10)");

        o_seed_ = app.add_option("--seed", seed_, "master RNG seed");

        o_tx_db_->excludes(o_tx_);
        o_noise_db_->excludes(o_noise_);
        o_gamma_db_->excludes(o_gamma_);
        o_mu_db_->excludes(o_mu_);
        o_aod_direct_deg_->excludes(o_aod_direct_);
        o_aod_ris_deg_->excludes(o_aod_ris_);
        o_aoa_ris_deg_->excludes(o_aoa_ris_);
        o_aod_ris_user_deg_->excludes(o_aod_ris_user_);
    }

    SystemConfig build() const {
        SystemConfig cfg;
        if (!config_file_.empty()) {
            std::ifstream in(config_file_);
            if (!in) throw std::invalid_argument("cannot read config file: " + config_file_);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw std::invalid_argument("config file: " + std::string(e.what()));
            }
            cfg = config_from_json(j, cfg);
        }
        if (*o_m_) cfg.num_bs_antennas = m_;
        if (*o_n_) cfg.num_ris_elements = n_;
        if (*o_tx_) cfg.tx_power = tx_;
        if (*o_tx_db_) cfg.tx_power = db_to_power(tx_db_);
        if (*o_noise_) cfg.noise_power = noise_;
        if (*o_noise_db_) cfg.noise_power = db_to_power(noise_db_);
        if (*o_ple_) cfg.path_loss_exp = ple_;
        if (*o_d0_) cfg.dist_direct = d0_;
        if (*o_d1_) cfg.dist_bs_ris = d1_;
        if (*o_d2_) cfg.dist_ris_user = d2_;
        if (*o_k_) {
            const double k = parse_k_factor(k_);
            cfg.k_direct = cfg.k_bs_ris = cfg.k_ris_user = k;
        }
        if (*o_k0_) cfg.k_direct = parse_k_factor(k0_);
        if (*o_k1_) cfg.k_bs_ris = parse_k_factor(k1_);
        if (*o_k2_) cfg.k_ris_user = parse_k_factor(k2_);
        if (*o_aod_direct_) cfg.aod_direct = aod_direct_;
        if (*o_aod_direct_deg_) cfg.aod_direct = deg_to_rad(aod_direct_deg_);
        if (*o_aod_ris_) cfg.aod_ris = aod_ris_;
        if (*o_aod_ris_deg_) cfg.aod_ris = deg_to_rad(aod_ris_deg_);
        if (*o_aoa_ris_) cfg.aoa_ris = aoa_ris_;
        if (*o_aoa_ris_deg_) cfg.aoa_ris = deg_to_rad(aoa_ris_deg_);
        if (*o_aod_ris_user_) cfg.aod_ris_user = aod_ris_user_;
        if (*o_aod_ris_user_deg_) cfg.aod_ris_user = deg_to_rad(aod_ris_user_deg_);
        if (*o_spacing_) cfg.element_spacing = spacing_;
        if (*o_direct_) cfg.direct_link = direct_;
        if (*o_gamma_) cfg.gamma_override = gamma_;
        if (*o_gamma_db_) cfg.gamma_override = db_to_power(gamma_db_);
        if (*o_mu_) cfg.mu_override = mu_;
        if (*o_mu_db_) cfg.mu_override = db_to_amplitude(mu_db_);
        if (*o_seed_) cfg.seed = seed_;
        cfg.validate();
        return cfg;
    }

  private:
    std::string config_file_;
    int m_ = 0, n_ = 0;
    double tx_ = 0, tx_db_ = 0, noise_ = 0, noise_db_ = 0, ple_ = 0;
    double d0_ = 0, d1_ = 0, d2_ = 0;
    std::string k_, k0_, k1_, k2_;
    double aod_direct_ = 0, aod_direct_deg_ = 0, aod_ris_ = 0, aod_ris_deg_ = 0;
    double aoa_ris_ = 0, aoa_ris_deg_ = 0, aod_ris_user_ = 0, aod_ris_user_deg_ = 0;
    double spacing_ = 0, gamma_ = 0, gamma_db_ = 0, mu_ = 0, mu_db_ = 0;
    bool direct_ = true;
    std::uint64_t seed_ = 0;

    CLI::Option *o_m_{}, *o_n_{}, *o_tx_{}, *o_tx_db_{}, *o_noise_{}, *o_noise_db_{};
    CLI::Option *o_ple_{}, *o_d0_{}, *o_d1_{}, *o_d2_{};
    CLI::Option *o_k_{}, *o_k0_{}, *o_k1_{}, *o_k2_{};
    CLI::Option *o_aod_direct_{}, *o_aod_direct_deg_{}, *o_aod_ris_{}, *o_aod_ris_deg_{};
    CLI::Option *o_aoa_ris_{}, *o_aoa_ris_deg_{}, *o_aod_ris_user_{}, *o_aod_ris_user_deg_{};
    CLI::Option *o_spacing_{}, *o_direct_{}, *o_gamma_{}, *o_gamma_db_{}, *o_mu_{}, *o_mu_db_{};
    CLI::Option *o_seed_{};
};

// Output / beamformer-tuning flags common to the sweep-style commands.
struct OutputFlags {
    std::string out;
    std::string format = "csv";

    void attach(CLI::App& cmd) {
        cmd.add_option("-o,--out", out, "output file (default: stdout)");
        cmd.add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    void emit(const SweepResult& res) const {
        if (out.empty()) {
            res.table.write(std::cout, format);
            return;
        }
        std::ofstream os(out);
        if (!os) throw std::invalid_argument("cannot open output file: " + out);
        res.table.write(os, format);
    }
};

struct BeamFlags {
    BeamformingOptions beam;
    std::string fa_update = "composite";

    void attach(CLI::App& cmd) {
        cmd.add_option("--bf-tol", beam.tol, "fixed-point convergence tolerance");
        cmd.add_option("--bf-max-iter", beam.max_iter, "fixed-point iteration cap");
        cmd.add_option("--restarts", beam.restarts, "extra random beamformer starts");
        cmd.add_option("--fa-update", fa_update, "analog precoder update rule")
            ->check(CLI::IsMember({"composite", "printed"}));
    }

    BeamformingOptions build() const {
        BeamformingOptions opt = beam;
        opt.fa_update = fa_update == "printed" ? FaUpdate::printed : FaUpdate::composite;
        return opt;
    }
};

std::vector<double> threshold_grid(const std::vector<double>& explicit_db, double lo_db,
                                   double hi_db, int points) {
    std::vector<double> betas;
    if (!explicit_db.empty()) {
        betas.reserve(explicit_db.size());
        for (double b : explicit_db) betas.push_back(db_to_power(b));
        return betas;
    }
    if (points < 2) throw std::invalid_argument("threshold grid needs at least 2 points");
    if (!(hi_db > lo_db)) throw std::invalid_argument("threshold grid bounds must ascend");
    betas.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double db = lo_db + (hi_db - lo_db) * i / (points - 1);
        betas.push_back(db_to_power(db));
    }
    return betas;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity and outage analysis for RIS-aided downlink systems"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    ConfigFlags config(app);

    // capacity-sweep
    auto* sweep_cmd = app.add_subcommand(
        "capacity-sweep", "ergodic capacity over surface size / K factor / direct-link grids");
    sweep_cmd->fallthrough();
    std::vector<int> n_list;
    std::vector<std::string> sweep_k_list;
    std::vector<double> mu_db_list;
    std::vector<std::string> sweep_archs = {"fd"};
    long sweep_trials = 1000;
    int sweep_threads = 0;
    OutputFlags sweep_out;
    BeamFlags sweep_beam;
    sweep_cmd->add_option("--n-list", n_list, "surface sizes to sweep");
    sweep_cmd->add_option("--k-list", sweep_k_list, "joint K factors to sweep (number or 'inf')");
    sweep_cmd->add_option("--mu-db-list", mu_db_list, "direct-path amplitudes to sweep, dB");
    sweep_cmd->add_option("--arch", sweep_archs, "architectures (fd, fa, mrt)")
        ->check(CLI::IsMember({"fd", "fa", "mrt"}));
    sweep_cmd->add_option("--trials", sweep_trials, "Monte Carlo trials per cell")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0: hardware)");
    sweep_out.attach(*sweep_cmd);
    sweep_beam.attach(*sweep_cmd);

    // outage-curve
    auto* outage_cmd = app.add_subcommand(
        "outage-curve", "outage probability vs threshold: analytic bound and Monte Carlo");
    outage_cmd->fallthrough();
    std::vector<std::string> outage_k_list;
    std::vector<double> beta_db;
    double beta_db_min = -10.0, beta_db_max = 30.0;
    int beta_points = 41;
    std::vector<std::string> outage_archs = {"fd", "fa"};
    bool no_analytic = false;
    std::string variant_name = "scaled_by_m";
    long outage_trials = 10000;
    int outage_threads = 0;
    OutputFlags outage_out;
    BeamFlags outage_beam;
    outage_cmd->add_option("--k-list", outage_k_list, "joint K factors (number or 'inf')");
    outage_cmd->add_option("--beta-db", beta_db, "explicit threshold list, dB");
    outage_cmd->add_option("--beta-db-min", beta_db_min, "threshold grid start, dB");
    outage_cmd->add_option("--beta-db-max", beta_db_max, "threshold grid end, dB");
    outage_cmd->add_option("--beta-points", beta_points, "threshold grid size");
    outage_cmd->add_option("--arch", outage_archs, "architectures (fd, fa, mrt)")
        ->check(CLI::IsMember({"fd", "fa", "mrt"}));
    outage_cmd->add_flag("--no-analytic", no_analytic, "skip the analytic bound curve");
    outage_cmd->add_option("--ub-variant", variant_name, "bound threshold scaling")
        ->check(CLI::IsMember({"scaled_by_m", "as_printed"}));
    outage_cmd->add_option("--trials", outage_trials, "Monte Carlo trials (0: analytic only)")
        ->check(CLI::NonNegativeNumber);
    outage_cmd->add_option("--threads", outage_threads, "worker threads (0: hardware)");
    outage_out.attach(*outage_cmd);
    outage_beam.attach(*outage_cmd);

    // mgf-probe
    auto* probe_cmd = app.add_subcommand(
        "mgf-probe", "tabulate the cascade-gain transform M(-s) along a line");
    probe_cmd->fallthrough();
    std::vector<double> s_real = {0.1, 0.5, 1.0, 2.0};
    double s_imag = 0.0;
    OutputFlags probe_out;
    probe_cmd->add_option("--s", s_real, "real parts of s (positive)");
    probe_cmd->add_option("--s-imag", s_imag, "imaginary part shared by all points");
    probe_out.attach(*probe_cmd);

    // validate
    auto* validate_cmd =
        app.add_subcommand("validate", "run the built-in numerical cross-checks");
    validate_cmd->fallthrough();
    double tol_scale = 1.0;
    int validate_threads = 0;
    validate_cmd->add_option("--tol-scale", tol_scale, "multiply every check tolerance")
        ->check(CLI::PositiveNumber);
    validate_cmd->add_option("--threads", validate_threads, "worker threads (0: hardware)");

    try {
        app.parse(argc, argv);

        if (app.got_subcommand(sweep_cmd)) {
            CapacitySweepSpec spec;
            spec.base = config.build();
            spec.ris_sizes = n_list;
            spec.k_factors = parse_k_list(sweep_k_list);
            spec.mu_db = mu_db_list;
            spec.archs = parse_arch_list(sweep_archs);
            spec.trials = sweep_trials;
            spec.threads = sweep_threads;
            spec.beam = sweep_beam.build();
            sweep_out.emit(run_capacity_sweep(spec));
        } else if (app.got_subcommand(outage_cmd)) {
            OutageCurveSpec spec;
            spec.base = config.build();
            spec.k_factors = parse_k_list(outage_k_list);
            spec.thresholds = threshold_grid(beta_db, beta_db_min, beta_db_max, beta_points);
            spec.archs = parse_arch_list(outage_archs);
            spec.analytic = !no_analytic;
            spec.variant = ub_variant_from_name(variant_name);
            spec.trials = outage_trials;
            spec.threads = outage_threads;
            spec.beam = outage_beam.build();
            outage_out.emit(run_outage_curve(spec));
        } else if (app.got_subcommand(probe_cmd)) {
            MgfProbeSpec spec;
            spec.base = config.build();
            spec.s_real = s_real;
            spec.s_imag = s_imag;
            probe_out.emit(run_mgf_probe(spec));
        } else if (app.got_subcommand(validate_cmd)) {
            ValidateSpec spec;
            spec.tol_scale = tol_scale;
            spec.threads = validate_threads;
            return run_validate(spec, std::cout);
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const riscap::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
