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

#include "riscap/beamforming.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "riscap/rng.hpp"

namespace riscap {

namespace {

using Cx = std::complex<double>;

// z / |z| with the zero-phase convention angle(0) = 0.
Cx unit_phase(Cx z) {
    const double mag = std::abs(z);
    return mag > 0.0 ? z / mag : Cx(1.0, 0.0);
}

arma::cx_vec unit_phases(const arma::cx_vec& z) {
    arma::cx_vec u(z.n_elem);
    for (arma::uword i = 0; i < z.n_elem; ++i) u(i) = unit_phase(z(i));
    return u;
}

arma::cx_vec normalized_or_basis(const arma::cx_vec& v) {
    const double nrm = arma::norm(v, 2);
    if (nrm > 0.0) return v / nrm;
    arma::cx_vec e(v.n_elem, arma::fill::zeros);
    e(0) = 1.0;
    return e;
}

// MRT beamformer vector: matched filter to the coherent row sum of the
// composite channel.
arma::cx_vec mrt_vector(const arma::cx_mat& composite) {
    const arma::cx_vec ones(composite.n_rows, arma::fill::ones);
    return normalized_or_basis(composite.t() * ones);
}

void check_gamma_mu(double gamma, double mu) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("beamforming: gamma must be >= 0");
    if (!(mu >= 0.0)) throw std::invalid_argument("beamforming: mu must be >= 0");
}

// Combined row vector psi^T E + mu g^T whose inner product with f is the
// received amplitude.
arma::cx_rowvec combined_row(const ChannelRealization& ch, const arma::cx_vec& psi, double mu) {
    return arma::cx_rowvec(psi.st() * ch.cascade + mu * ch.direct.st());
}

struct FixedPointRun {
    arma::cx_vec beamformer;
    arma::cx_vec psi;  // set by runs that must pin their own surface phases
    std::vector<double> trace;
    int iterations = 0;
    bool converged = false;
};

void check_options(const BeamformingOptions& opt) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("beamforming: tol must be positive");
    if (opt.max_iter < 1) throw std::invalid_argument("beamforming: max_iter must be >= 1");
    if (opt.restarts < 0) throw std::invalid_argument("beamforming: restarts must be >= 0");
}

// Shared convergence test: relative change of the achieved amplitude.
bool settled(double prev, double cur, double tol) {
    return std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur));
}

// L1-PCA fixed point from a given phase-vector start. Records gamma times
// the squared L1 objective per iteration.
FixedPointRun digital_run(const arma::cx_mat& composite, arma::cx_vec u, double gamma,
                          const BeamformingOptions& opt) {
    FixedPointRun run;
    double prev = -1.0;
    arma::cx_vec f;
    for (int it = 1; it <= opt.max_iter; ++it) {
        f = normalized_or_basis(composite.t() * u);
        const arma::cx_vec gf = composite * f;
        const double obj = arma::norm(gf, 1);
        u = unit_phases(gf);
        run.trace.push_back(gamma * obj * obj);
        run.iterations = it;
        if (prev >= 0.0 && settled(prev, obj, opt.tol)) {
            run.converged = true;
            break;
        }
        prev = obj;
    }
    run.beamformer = f;
    return run;
}

// Alternating analog run from a given unit-modulus beamformer start.
FixedPointRun analog_run(const ChannelRealization& ch, arma::cx_vec f, double gamma, double mu,
                         const BeamformingOptions& opt) {
    const arma::uword m = ch.cascade.n_cols;
    const arma::uword n = ch.cascade.n_rows;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));

    if (opt.fa_update == FaUpdate::printed && n != m) {
        throw std::invalid_argument(
            "analog_beamformer: the printed update variant is defined only for N == M");
    }

    FixedPointRun run;
    double prev = -1.0;
    arma::cx_vec psi(n);
    for (int it = 1; it <= opt.max_iter; ++it) {
        if (opt.fa_update == FaUpdate::composite) {
            psi = optimal_ris_phases(ch, f);
            const arma::cx_rowvec row = combined_row(ch, psi, mu);
            for (arma::uword i = 0; i < m; ++i) f(i) = scale * std::conj(unit_phase(row(i)));
        } else {
            // Published variant: per-element direct-channel phase references
            // on both updates, direct amplitude ignored in the f step.
            const arma::cx_vec ef = ch.cascade * f;
            for (arma::uword i = 0; i < n; ++i) {
                psi(i) = std::conj(unit_phase(ef(i))) * unit_phase(ch.direct(i));
            }
            const arma::cx_rowvec row0 = arma::cx_rowvec(psi.st() * ch.cascade);
            for (arma::uword i = 0; i < m; ++i) {
                f(i) = scale * std::conj(unit_phase(row0(i))) * unit_phase(ch.direct(i));
            }
        }
        const double cur = snr(ch, f, psi, gamma, mu);
        run.trace.push_back(cur);
        run.iterations = it;
        const double amp = std::sqrt(cur);
        if (prev >= 0.0 && settled(prev, amp, opt.tol)) {
            run.converged = true;
            break;
        }
        prev = amp;
    }
    run.beamformer = f;
    if (opt.fa_update == FaUpdate::printed) run.psi = psi;
    return run;
}

// Fills the result from a finished run; ends on a surface phase step unless
// the run pinned its own phases (the printed analog variant must report the
// configuration its own updates produce).
BeamformingResult finish(const ChannelRealization& ch, const FixedPointRun& run, double gamma,
                         double mu) {
    BeamformingResult res;
    res.beamformer = run.beamformer;
    res.ris_phases = run.psi.n_elem > 0 ? run.psi : optimal_ris_phases(ch, run.beamformer);
    res.snr = snr(ch, res.beamformer, res.ris_phases, gamma, mu);
    res.objective_trace = run.trace;
    res.iterations = run.iterations;
    res.converged = run.converged;
    return res;
}

}  // namespace

double snr(const ChannelRealization& ch, const arma::cx_vec& beamformer,
           const arma::cx_vec& ris_phases, double gamma, double mu) {
    check_gamma_mu(gamma, mu);
    if (beamformer.n_elem != ch.cascade.n_cols) {
        throw std::invalid_argument("snr: beamformer length must match antenna count");
    }
    if (ris_phases.n_elem != ch.cascade.n_rows) {
        throw std::invalid_argument("snr: phase vector length must match element count");
    }
    const Cx amp = arma::as_scalar(ris_phases.st() * (ch.cascade * beamformer)) +
                   mu * arma::as_scalar(ch.direct.st() * beamformer);
    return gamma * std::norm(amp);
}

arma::cx_vec optimal_ris_phases(const ChannelRealization& ch, const arma::cx_vec& beamformer) {
    if (beamformer.n_elem != ch.cascade.n_cols) {
        throw std::invalid_argument("optimal_ris_phases: beamformer length mismatch");
    }
    const arma::uword n = ch.cascade.n_rows;
    const arma::cx_vec through = ch.cascade * beamformer;
    const Cx direct_term =
        arma::as_scalar(ch.composite.row(n) * beamformer);  // mu g^T f
    const Cx ref = std::abs(direct_term) > 0.0 ? unit_phase(direct_term) : Cx(1.0, 0.0);

    arma::cx_vec psi(n);
    for (arma::uword i = 0; i < n; ++i) psi(i) = ref * std::conj(unit_phase(through(i)));
    return psi;
}

BeamformingResult digital_beamformer(const ChannelRealization& ch, double gamma, double mu,
                                     const BeamformingOptions& opt) {
    check_gamma_mu(gamma, mu);
    check_options(opt);
    const arma::cx_mat& composite = ch.composite;

    arma::cx_vec u0 = unit_phases(composite * mrt_vector(composite));
    FixedPointRun best = digital_run(composite, u0, gamma, opt);

    for (int r = 1; r <= opt.restarts; ++r) {
        std::mt19937_64 gen = make_stream(opt.restart_seed, static_cast<std::uint64_t>(r));
        arma::cx_vec u(composite.n_rows);
        for (arma::uword i = 0; i < u.n_elem; ++i) {
            u(i) = std::polar(1.0, 2.0 * std::numbers::pi * uniform_unit(gen));
        }
        FixedPointRun run = digital_run(composite, u, gamma, opt);
        if (run.trace.back() > best.trace.back()) best = run;
    }
    return finish(ch, best, gamma, mu);
}

BeamformingResult analog_beamformer(const ChannelRealization& ch, double gamma, double mu,
                                    const BeamformingOptions& opt) {
    check_gamma_mu(gamma, mu);
    check_options(opt);
    const arma::uword m = ch.cascade.n_cols;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));

    arma::cx_vec f0 = scale * unit_phases(mrt_vector(ch.composite));
    FixedPointRun best = analog_run(ch, f0, gamma, mu, opt);

    for (int r = 1; r <= opt.restarts; ++r) {
        std::mt19937_64 gen = make_stream(opt.restart_seed, static_cast<std::uint64_t>(r));
        arma::cx_vec f(m);
        for (arma::uword i = 0; i < m; ++i) {
            f(i) = std::polar(scale, 2.0 * std::numbers::pi * uniform_unit(gen));
        }
        FixedPointRun run = analog_run(ch, f, gamma, mu, opt);
        if (run.trace.back() > best.trace.back()) best = run;
    }
    return finish(ch, best, gamma, mu);
}

BeamformingResult mrt_beamformer(const ChannelRealization& ch, double gamma, double mu) {
    check_gamma_mu(gamma, mu);
    FixedPointRun run;
    run.beamformer = mrt_vector(ch.composite);
    run.iterations = 1;
    run.converged = true;
    BeamformingResult res = finish(ch, run, gamma, mu);
    res.objective_trace = {res.snr};
    return res;
}

BeamformingResult oracle_grid_search(const ChannelRealization& ch, double gamma, double mu,
                                     Architecture arch, int grid_points) {
    check_gamma_mu(gamma, mu);
    if (arch == Architecture::mrt) {
        throw std::invalid_argument("oracle_grid_search: defined for fd and fa only");
    }
    const int n = static_cast<int>(ch.cascade.n_rows);
    const int m = static_cast<int>(ch.cascade.n_cols);
    if (n > 3 || (arch == Architecture::fa && m > 3)) {
        throw std::invalid_argument("oracle_grid_search: instance too large");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("oracle_grid_search: need at least 2 grid points");
    }

    std::vector<Cx> phasor(static_cast<std::size_t>(grid_points));
    for (int k = 0; k < grid_points; ++k) {
        phasor[static_cast<std::size_t>(k)] =
            std::polar(1.0, 2.0 * std::numbers::pi * k / grid_points);
    }

    const arma::cx_rowvec direct_row = mu * ch.direct.st();
    std::vector<arma::cx_rowvec> partial(static_cast<std::size_t>(n) + 1);
    partial[0] = direct_row;

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<int> best_idx = idx;
    double best = -1.0;
    long evaluated = 0;

    // Depth-first odometer over the phase grid; partial[d] accumulates the
    // first d surface rows so each leaf costs O(M).
    int d = 0;
    while (d >= 0) {
        if (d == n) {
            const arma::cx_rowvec& w = partial[static_cast<std::size_t>(n)];
            double amp;
            if (arch == Architecture::fd) {
                amp = arma::norm(w.st(), 2);
            } else {
                amp = arma::norm(w.st(), 1) / std::sqrt(static_cast<double>(m));
            }
            ++evaluated;
            if (amp > best) {
                best = amp;
                best_idx = idx;
            }
            --d;
            continue;
        }
        if (idx[static_cast<std::size_t>(d)] == grid_points) {
            idx[static_cast<std::size_t>(d)] = 0;
            --d;
            continue;
        }
        partial[static_cast<std::size_t>(d) + 1] =
            partial[static_cast<std::size_t>(d)] +
            phasor[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])] * ch.cascade.row(
                static_cast<arma::uword>(d));
        ++idx[static_cast<std::size_t>(d)];
        ++d;
    }

    BeamformingResult res;
    res.ris_phases.set_size(static_cast<arma::uword>(n));
    arma::cx_rowvec w = direct_row;
    for (int i = 0; i < n; ++i) {
        const Cx p = phasor[static_cast<std::size_t>(best_idx[static_cast<std::size_t>(i)])];
        res.ris_phases(static_cast<arma::uword>(i)) = p;
        w += p * ch.cascade.row(static_cast<arma::uword>(i));
    }
    if (arch == Architecture::fd) {
        res.beamformer = normalized_or_basis(w.t());
    } else {
        res.beamformer.set_size(static_cast<arma::uword>(m));
        const double scale = 1.0 / std::sqrt(static_cast<double>(m));
        for (int i = 0; i < m; ++i) {
            res.beamformer(static_cast<arma::uword>(i)) =
                scale * std::conj(unit_phase(w(static_cast<arma::uword>(i))));
        }
    }
    res.snr = snr(ch, res.beamformer, res.ris_phases, gamma, mu);
    res.objective_trace = {res.snr};
    res.iterations = static_cast<int>(std::min<long>(evaluated, 0x7fffffffL));
    res.converged = true;
    return res;
}

BeamformingResult run_beamformer(Architecture arch, const ChannelRealization& ch, double gamma,
                                 double mu, const BeamformingOptions& opt) {
    switch (arch) {
        case Architecture::fd: return digital_beamformer(ch, gamma, mu, opt);
        case Architecture::fa: return analog_beamformer(ch, gamma, mu, opt);
        case Architecture::mrt: return mrt_beamformer(ch, gamma, mu);
    }
    throw std::invalid_argument("run_beamformer: unknown architecture");
}

const char* architecture_name(Architecture arch) {
    switch (arch) {
        case Architecture::fd: return "fd";
        case Architecture::fa: return "fa";
        case Architecture::mrt: return "mrt";
    }
    return "?";
}

Architecture architecture_from_name(const std::string& name) {
    if (name == "fd") return Architecture::fd;
    if (name == "fa") return Architecture::fa;
    if (name == "mrt") return Architecture::mrt;
    throw std::invalid_argument("unknown architecture '" + name + "' (expected fd, fa, mrt)");
}

}  // namespace riscap
