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

#include <cmath>
#include <complex>
#include <limits>

#include "riscap/beamforming.hpp"
#include "riscap/channel.hpp"
#include "riscap/rng.hpp"

using namespace riscap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemConfig tiny_config(int m, int n, double k) {
    SystemConfig cfg;
    cfg.num_bs_antennas = m;
    cfg.num_ris_elements = n;
    cfg.k_direct = cfg.k_bs_ris = cfg.k_ris_user = k;
    cfg.gamma_override = 1.0;
    cfg.mu_override = db_to_amplitude(5.0);
    return cfg;
}

ChannelRealization draw(const SystemConfig& cfg, std::uint64_t trial) {
    std::mt19937_64 gen = make_stream(cfg.seed, trial);
    return draw_channel(cfg, gen);
}

void check_unit_modulus(const arma::cx_vec& v, double modulus) {
    for (arma::uword i = 0; i < v.n_elem; ++i) {
        CHECK(std::abs(v(i)) == doctest::Approx(modulus).epsilon(1e-12));
    }
}

}  // namespace

TEST_CASE("optimal surface phases co-phase every contribution") {
    const SystemConfig cfg = tiny_config(3, 5, 2.0);
    const ChannelRealization ch = draw(cfg, 0);
    std::mt19937_64 gen = make_stream(42, 0);
    arma::cx_vec f(3);
    for (arma::uword i = 0; i < 3; ++i) f(i) = complex_gaussian(gen);
    f /= arma::norm(f);

    const arma::cx_vec psi = optimal_ris_phases(ch, f);
    check_unit_modulus(psi, 1.0);

    // Achieved SNR equals gamma times the squared L1 norm of the stacked
    // per-path amplitudes: all N + 1 terms aligned.
    const double achieved = snr(ch, f, psi, cfg.gamma(), cfg.mu());
    const double l1 = arma::norm(ch.composite * f, 1);
    CHECK(achieved == doctest::Approx(cfg.gamma() * l1 * l1).epsilon(1e-12));

    // No other phase choice does better (spot check a few rotations).
    for (double rot : {0.3, 1.7, 3.0}) {
        arma::cx_vec twisted = psi;
        twisted(2) *= std::polar(1.0, rot);
        CHECK(snr(ch, f, twisted, cfg.gamma(), cfg.mu()) <= achieved * (1.0 + 1e-12));
    }
}

TEST_CASE("digital beamformer matches the grid reference on small instances") {
    const SystemConfig cfg = tiny_config(2, 2, 1.0);
    for (std::uint64_t t = 0; t < 5; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        const BeamformingResult fd = digital_beamformer(ch, cfg.gamma(), cfg.mu());
        const BeamformingResult ref =
            oracle_grid_search(ch, cfg.gamma(), cfg.mu(), Architecture::fd, 720);
        CAPTURE(t);
        CHECK(fd.snr >= ref.snr * (1.0 - 5e-3));
        CHECK(fd.snr <= ref.snr * (1.0 + 1e-4));
        CHECK(fd.converged);
        CHECK(arma::norm(fd.beamformer) == doctest::Approx(1.0).epsilon(1e-12));
        check_unit_modulus(fd.ris_phases, 1.0);
    }
}

TEST_CASE("analog beamformer matches the grid reference on small instances") {
    const SystemConfig cfg = tiny_config(2, 2, 1.0);
    for (std::uint64_t t = 0; t < 5; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        const BeamformingResult fa = analog_beamformer(ch, cfg.gamma(), cfg.mu());
        const BeamformingResult ref =
            oracle_grid_search(ch, cfg.gamma(), cfg.mu(), Architecture::fa, 720);
        CAPTURE(t);
        CHECK(fa.snr >= ref.snr * (1.0 - 1e-2));
        CHECK(fa.snr <= ref.snr * (1.0 + 1e-4));
        check_unit_modulus(fa.beamformer, 1.0 / std::sqrt(2.0));
        check_unit_modulus(fa.ris_phases, 1.0);
    }
}

TEST_CASE("single-element grid search approaches the closed-form optimum") {
    // With one surface element the best fully-digital SNR has a closed form:
    // gamma (||c||^2 + ||d||^2 + 2 |<c, d>|) for cascade row c, direct row d.
    const SystemConfig cfg = tiny_config(3, 1, 1.0);
    for (std::uint64_t t = 0; t < 3; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        const arma::cx_rowvec c = ch.cascade.row(0);
        const arma::cx_rowvec d = cfg.mu() * ch.direct.st();
        const double cross = std::abs(arma::cdot(c.st(), d.st()));
        const double opt =
            cfg.gamma() * (std::norm(arma::norm(c)) + std::norm(arma::norm(d)) + 2.0 * cross);

        const int grid = 360;
        const BeamformingResult ref =
            oracle_grid_search(ch, cfg.gamma(), cfg.mu(), Architecture::fd, grid);
        const double quant = std::pow(M_PI / grid, 2.0);
        CAPTURE(t);
        CHECK(ref.snr <= opt * (1.0 + 1e-12));
        CHECK(ref.snr >= opt * (1.0 - 2.0 * quant));

        // The fixed point solves this case to full precision.
        const BeamformingResult fd = digital_beamformer(ch, cfg.gamma(), cfg.mu());
        CHECK(fd.snr == doctest::Approx(opt).epsilon(1e-9));
    }
}

TEST_CASE("refining the oracle grid never lowers the result") {
    const SystemConfig cfg = tiny_config(2, 2, 1.0);
    const ChannelRealization ch = draw(cfg, 1);
    for (Architecture arch : {Architecture::fd, Architecture::fa}) {
        const double coarse = oracle_grid_search(ch, cfg.gamma(), cfg.mu(), arch, 360).snr;
        const double fine = oracle_grid_search(ch, cfg.gamma(), cfg.mu(), arch, 720).snr;
        CHECK(fine >= coarse);  // nested grids, exact inner step
    }
}

TEST_CASE("rank-one composite converges immediately to the product form") {
    SystemConfig cfg = tiny_config(4, 8, kInf);
    cfg.direct_link = false;
    cfg.mu_override.reset();
    const ChannelRealization ch = los_channel(cfg);
    const BeamformingResult fd = digital_beamformer(ch, 1.0, 0.0);
    // L1 norm of the rank-one factor times the L2 norm of the other:
    // unit-modulus rows give N^2 M.
    CHECK(fd.snr == doctest::Approx(8.0 * 8.0 * 4.0).epsilon(1e-12));
    CHECK(fd.iterations <= 3);
    const BeamformingResult fa = analog_beamformer(ch, 1.0, 0.0);
    CHECK(fa.snr == doctest::Approx(8.0 * 8.0 * 4.0).epsilon(1e-12));
}

TEST_CASE("objective traces are non-decreasing") {
    const SystemConfig cfg = tiny_config(3, 6, 1.0);
    for (std::uint64_t t = 0; t < 100; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        for (Architecture arch : {Architecture::fd, Architecture::fa}) {
            const BeamformingResult res = run_beamformer(arch, ch, cfg.gamma(), cfg.mu());
            CAPTURE(t);
            for (std::size_t i = 1; i < res.objective_trace.size(); ++i) {
                CHECK(res.objective_trace[i] >=
                      res.objective_trace[i - 1] -
                          1e-12 * std::max(1.0, res.objective_trace[i]));
            }
            // The reported SNR never falls below the last trace entry: the
            // final surface-phase step is an exact maximizer.
            CHECK(res.snr >= res.objective_trace.back() - 1e-12 * std::max(1.0, res.snr));
        }
    }
}

TEST_CASE("digital dominates the matched-filter baseline pointwise") {
    // Guaranteed: the fixed point is warm-started from the matched filter
    // and its objective never decreases.
    const SystemConfig cfg = tiny_config(4, 6, 1.0);
    for (std::uint64_t t = 0; t < 200; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        const double fd = digital_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
        const double mrt = mrt_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
        CAPTURE(t);
        CHECK(fd >= mrt * (1.0 - 1e-9));
    }
}

TEST_CASE("digital dominates analog up to rare local optima, which restarts recover") {
    // The unit-norm feasible set contains the unit-modulus one, but the
    // fixed point is a local method: on ~0.1% of draws it lands below the
    // analog alternation. Random restarts are the documented remedy.
    const SystemConfig cfg = tiny_config(4, 6, 1.0);
    BeamformingOptions rescue;
    rescue.restarts = 4;
    int violations = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        const double fd = digital_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
        const double fa = analog_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
        if (fd < fa * (1.0 - 1e-9)) {
            ++violations;
            const double fdr = digital_beamformer(ch, cfg.gamma(), cfg.mu(), rescue).snr;
            CAPTURE(t);
            CHECK(fdr >= fa * (1.0 - 1e-9));
        }
    }
    CHECK(violations <= 2);
}

TEST_CASE("the SNR scale factors out of the design") {
    const SystemConfig cfg = tiny_config(3, 4, 2.0);
    const ChannelRealization ch = draw(cfg, 5);
    const BeamformingResult base = digital_beamformer(ch, 1.0, cfg.mu());
    const BeamformingResult scaled = digital_beamformer(ch, 2.0, cfg.mu());
    CHECK(scaled.snr == doctest::Approx(2.0 * base.snr).epsilon(1e-14));
    CHECK(arma::approx_equal(scaled.beamformer, base.beamformer, "absdiff", 0.0));
    CHECK(arma::approx_equal(scaled.ris_phases, base.ris_phases, "absdiff", 0.0));
}

TEST_CASE("random restarts never lose to the warm start") {
    const SystemConfig cfg = tiny_config(3, 4, 0.5);
    BeamformingOptions with_restarts;
    with_restarts.restarts = 3;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const ChannelRealization ch = draw(cfg, t);
        const double plain = digital_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
        const double multi = digital_beamformer(ch, cfg.gamma(), cfg.mu(), with_restarts).snr;
        CHECK(multi >= plain * (1.0 - 1e-12));
    }
}

TEST_CASE("printed analog variant pins its own phase trajectory") {
    const SystemConfig cfg = tiny_config(3, 3, 1.0);
    const ChannelRealization ch = draw(cfg, 2);
    BeamformingOptions opt;
    opt.fa_update = FaUpdate::printed;
    const BeamformingResult res = analog_beamformer(ch, cfg.gamma(), cfg.mu(), opt);
    CHECK(res.snr > 0.0);
    check_unit_modulus(res.beamformer, 1.0 / std::sqrt(3.0));
    check_unit_modulus(res.ris_phases, 1.0);
    // The composite-update variant reaches at least the same SNR.
    const double composite = analog_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
    CHECK(composite >= res.snr * (1.0 - 1e-9));

    // Rectangular systems reject the printed variant.
    const SystemConfig rect = tiny_config(2, 3, 1.0);
    const ChannelRealization chr = draw(rect, 0);
    CHECK_THROWS_AS(analog_beamformer(chr, rect.gamma(), rect.mu(), opt),
                    std::invalid_argument);
}

TEST_CASE("mrt baseline is a single matched-filter step") {
    const SystemConfig cfg = tiny_config(3, 4, 1.0);
    const ChannelRealization ch = draw(cfg, 3);
    const BeamformingResult res = mrt_beamformer(ch, cfg.gamma(), cfg.mu());
    const arma::cx_vec ones(ch.composite.n_rows, arma::fill::ones);
    arma::cx_vec want = ch.composite.t() * ones;
    want /= arma::norm(want);
    CHECK(arma::norm(res.beamformer - want) < 1e-14);
    CHECK(res.iterations == 1);
    CHECK(res.converged);
    CHECK(res.objective_trace.size() == 1);
}

TEST_CASE("an all-zero channel yields zero SNR without NaNs") {
    SystemConfig cfg = tiny_config(2, 3, 1.0);
    ChannelRealization ch = los_channel(cfg);
    ch.bs_ris.zeros();
    ch.ris_user.zeros();
    ch.direct.zeros();
    ch.cascade.zeros();
    ch.composite.zeros();
    for (Architecture arch : {Architecture::fd, Architecture::fa, Architecture::mrt}) {
        const BeamformingResult res = run_beamformer(arch, ch, 1.0, 0.0);
        CHECK(res.snr == 0.0);
        CHECK(res.beamformer.is_finite());
        CHECK(res.ris_phases.is_finite());
    }
}

TEST_CASE("input validation") {
    const SystemConfig cfg = tiny_config(2, 2, 1.0);
    const ChannelRealization ch = draw(cfg, 0);
    CHECK_THROWS_AS(digital_beamformer(ch, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(analog_beamformer(ch, 1.0, -0.5), std::invalid_argument);
    BeamformingOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(digital_beamformer(ch, 1.0, 1.0, bad), std::invalid_argument);
    bad = {};
    bad.max_iter = 0;
    CHECK_THROWS_AS(analog_beamformer(ch, 1.0, 1.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(oracle_grid_search(ch, 1.0, 1.0, Architecture::mrt, 360),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_grid_search(ch, 1.0, 1.0, Architecture::fd, 1),
                    std::invalid_argument);

    const SystemConfig big = tiny_config(2, 4, 1.0);
    const ChannelRealization chb = draw(big, 0);
    CHECK_THROWS_AS(oracle_grid_search(chb, 1.0, 1.0, Architecture::fd, 8),
                    std::invalid_argument);

    arma::cx_vec wrong(5, arma::fill::ones);
    CHECK_THROWS_AS(snr(ch, wrong, ch.ris_user, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_ris_phases(ch, wrong), std::invalid_argument);
}

TEST_CASE("frozen regression values for a seeded instance") {
    // Values pinned from the first verified run of this configuration
    // (cross-checked against the 720-point grid reference above).
    const SystemConfig cfg = [] {
        SystemConfig c = tiny_config(2, 2, 1.0);
        c.seed = 20240711;
        return c;
    }();
    const ChannelRealization ch = draw(cfg, 0);
    const double fd = digital_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
    const double fa = analog_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
    const double mrt = mrt_beamformer(ch, cfg.gamma(), cfg.mu()).snr;
    CHECK(fd == doctest::Approx(11.827913451645065).epsilon(1e-9));
    CHECK(fa == doctest::Approx(11.747066408409724).epsilon(1e-9));
    CHECK(mrt == doctest::Approx(11.781991179865882).epsilon(1e-9));
}
