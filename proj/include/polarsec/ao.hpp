// SPDX-License-Identifier: Apache-2.0
//
// polarsec: joint transmit beamforming and polarforming for secure links
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polarsec/beamforming.hpp"
#include "polarsec/channel.hpp"
#include "polarsec/config.hpp"
#include "polarsec/errors.hpp"
#include "polarsec/metrics.hpp"
#include "polarsec/polarforming.hpp"
#include "polarsec/rng.hpp"
#include "polarsec/sdp.hpp"

// Alternating optimization of the transmit beamformer and the PSV.
//
// The loop designs against the first eavesdropper antenna of the channel set.
// Every iteration runs a beamforming update for the current PSV, then a
// polarforming update for the new beamformer; it stops once the secrecy rate
// after polarforming grows by less than epsilon.

namespace polarsec {

struct AoIteration {
    int index = 0;
    double rate_after_beamforming = 0.0;
    double rate_after_polarforming = 0.0;
    double upper_bound_rate = 0.0;  // log2 of the relaxed objective for this iteration's beamformer
};

struct AoTrace {
    std::vector<AoIteration> iterations;
    bool converged = false;
    // MRT only: the last iteration lowered the rate and was dropped.
    bool discarded_last_step = false;
    PhaseShiftVector final_psv;
    Beamformer final_w;
    double final_rate = 0.0;
    double upper_bound_rate = 0.0;
};

enum class BeamformingRule { Optimal, Mrt };

/// Optimal beamformer for `psv` against the first `eve_antennas` eavesdropper
/// antennas combined by MRC (A_E = H_E H_E^H / sigma2).
inline Beamformer beamform_at(const std::vector<PolarizedLink>& user_links,
                              const std::vector<std::vector<PolarizedLink>>& eve_grid, int eve_antennas,
                              const TerminalPolarization& g_user, const TerminalPolarization& g_eve,
                              const PhaseShiftVector& psv, double sigma2, double p_max) {
    const CVec h_user = effective_channel(user_links, g_user, psv);
    const CMat h_eve = effective_channel_matrix(eve_grid, g_eve, psv, eve_antennas);
    return optimal_beamformer(make_quadratic_forms(h_user, h_eve, sigma2), p_max);
}

inline RatePair rates_at(const std::vector<PolarizedLink>& user_links,
                         const std::vector<std::vector<PolarizedLink>>& eve_grid, int eve_antennas,
                         const TerminalPolarization& g_user, const TerminalPolarization& g_eve,
                         const PhaseShiftVector& psv, const CVec& w, double sigma2) {
    const CVec h_user = effective_channel(user_links, g_user, psv);
    const CMat h_eve = effective_channel_matrix(eve_grid, g_eve, psv, eve_antennas);
    return secrecy_rate_mrc(h_user, h_eve, w, sigma2);
}

inline double objective_to_rate(double objective) { return std::max(0.0, std::log2(objective)); }

/// log2 of the relaxed polarforming objective for beamformer w (single-antenna eavesdropper).
inline double upper_bound_rate_at(const std::vector<PolarizedLink>& user_links,
                                  const std::vector<PolarizedLink>& eve_links, const TerminalPolarization& g_user,
                                  const TerminalPolarization& g_eve, const CVec& w, double sigma2,
                                  const SdpSettings& settings = {}) {
    const LiftedProblem lp = build_lifted(user_links, eve_links, g_user, g_eve, w, sigma2);
    return objective_to_rate(charnes_cooper_sdp(lp, settings).relaxed_objective);
}

inline AoTrace run_ao(const ChannelSet& ch, const ScenarioConfig& cfg, BeamformingRule rule, RngStream& rng) {
    validate(cfg);
    if (ch.n() < 1 || ch.m() < 1) throw ContractViolation("run_ao: empty channel set");
    const double sigma2 = cfg.sigma2();
    const auto& user = ch.user_links;
    const auto& eve = ch.eve_links;

    auto rate = [&](const PhaseShiftVector& psv, const CVec& w) {
        return rates_at(user, eve, 1, ch.g_user, ch.g_eve, psv, w, sigma2).secrecy_rate;
    };

    AoTrace trace;
    PhaseShiftVector psv = PhaseShiftVector::constant(ch.n(), 0.0);
    CVec w_state;
    double rate_state = 0.0;
    double ub_state = 0.0;

    for (int k = 1; k <= cfg.max_iters; ++k) {
        try {
            const Beamformer bf =
                rule == BeamformingRule::Optimal
                    ? beamform_at(user, eve, 1, ch.g_user, ch.g_eve, psv, sigma2, cfg.p_max)
                    : mrt_beamformer(effective_channel(user, ch.g_user, psv), cfg.p_max);
            const double rate_bf = rate(psv, bf.w);

            const LiftedProblem lp = build_lifted(user, eve.front(), ch.g_user, ch.g_eve, bf.w, sigma2);
            const RelaxedSolution rs = charnes_cooper_sdp(lp);
            const PolarformingResult pf = gaussian_randomization(rs, lp, psv, cfg.rand_count, rng);
            const CVec w_rot = rotate_beamformer(bf.w, pf.reference_phases);
            const double rate_pf = rate(pf.psv, w_rot);

            if (rule == BeamformingRule::Mrt && k > 1 && rate_pf < rate_state) {
                trace.discarded_last_step = true;
                trace.converged = true;
                break;
            }

            const double previous = k == 1 ? rate_bf : rate_state;
            trace.iterations.push_back({k, rate_bf, rate_pf, objective_to_rate(rs.relaxed_objective)});
            psv = pf.psv;
            w_state = w_rot;
            rate_state = rate_pf;
            ub_state = trace.iterations.back().upper_bound_rate;
            if (rate_pf - previous < cfg.epsilon) {
                trace.converged = true;
                break;
            }
        } catch (const SolverError& e) {
            throw SolverError("alternating optimization, iteration " + std::to_string(k) + ": " + e.what());
        }
    }

    trace.final_psv = psv;
    if (rule == BeamformingRule::Optimal) {
        // One more beamforming update at the final PSV; the bound is re-evaluated for it.
        trace.final_w = beamform_at(user, eve, 1, ch.g_user, ch.g_eve, psv, sigma2, cfg.p_max);
        trace.final_rate = rate(psv, trace.final_w.w);
        try {
            trace.upper_bound_rate =
                upper_bound_rate_at(user, eve.front(), ch.g_user, ch.g_eve, trace.final_w.w, sigma2);
        } catch (const SolverError& e) {
            throw SolverError(std::string("alternating optimization, final bound: ") + e.what());
        }
    } else {
        trace.final_w = {w_state, cfg.p_max};
        trace.final_rate = rate_state;
        trace.upper_bound_rate = ub_state;
    }
    return trace;
}

/// Proposed scheme: optimal beamforming alternated with polarforming.
inline AoTrace solve_instance(const ChannelSet& ch, const ScenarioConfig& cfg, RngStream& rng) {
    return run_ao(ch, cfg, BeamformingRule::Optimal, rng);
}

/// Same loop with MRT beamforming. An iteration that lowers the rate ends the
/// loop and is not kept, since MRT is not a best response for the secrecy rate.
inline AoTrace solve_instance_mrt(const ChannelSet& ch, const ScenarioConfig& cfg, RngStream& rng) {
    return run_ao(ch, cfg, BeamformingRule::Mrt, rng);
}

inline PhaseShiftVector circular_psv(int n) { return PhaseShiftVector::constant(n, std::numbers::pi / 2.0); }

/// Fixed circular polarization with the optimal beamformer; one step, no bound.
inline AoTrace solve_instance_fpa(const ChannelSet& ch, const ScenarioConfig& cfg) {
    validate(cfg);
    const double sigma2 = cfg.sigma2();
    AoTrace trace;
    trace.final_psv = circular_psv(ch.n());
    trace.final_w =
        beamform_at(ch.user_links, ch.eve_links, 1, ch.g_user, ch.g_eve, trace.final_psv, sigma2, cfg.p_max);
    trace.final_rate =
        rates_at(ch.user_links, ch.eve_links, 1, ch.g_user, ch.g_eve, trace.final_psv, trace.final_w.w, sigma2)
            .secrecy_rate;
    trace.upper_bound_rate = std::numeric_limits<double>::quiet_NaN();
    trace.iterations.push_back({1, trace.final_rate, trace.final_rate, trace.upper_bound_rate});
    trace.converged = true;
    return trace;
}

}  // namespace polarsec
