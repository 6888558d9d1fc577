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
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "polarsec/ao.hpp"
#include "polarsec/channel.hpp"
#include "polarsec/config.hpp"
#include "polarsec/errors.hpp"
#include "polarsec/metrics.hpp"
#include "polarsec/rng.hpp"

// Monte Carlo sweeps. Each trial draws its channels once from streams keyed by
// (seed, trial) and every scheme at every sweep point is evaluated on that same
// realization. Means are summed in trial order, so output does not depend on
// the number of worker threads.

namespace polarsec {

enum class Scheme : int { Proposed = 0, Mrt = 1, Fpa = 2, UpperBound = 3 };
inline constexpr int kSchemeCount = 4;

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Proposed: return "Proposed";
        case Scheme::Mrt: return "MRT";
        case Scheme::Fpa: return "FPA";
        case Scheme::UpperBound: return "Upper bound";
    }
    return "?";
}

/// Per-trial metrics for one scheme. The upper bound carries NaN eve rate and
/// cross-correlation.
struct SchemeOutcome {
    double secrecy_rate = 0.0;
    double eve_rate = 0.0;
    double cross_corr = 0.0;
};

using TrialOutcome = std::array<SchemeOutcome, kSchemeCount>;

struct SweepRow {
    std::string scenario;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string scheme;
    double mean_secrecy_rate = 0.0;
    double mean_eve_rate = 0.0;
    double mean_cross_corr = 0.0;
    int trials = 0;
    std::uint64_t master_seed = 0;
};

struct SweepResult {
    std::string scenario;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::vector<SweepRow> rows;                     // point-major, scheme order as in Scheme
    std::vector<std::vector<TrialOutcome>> outcomes;  // [point][trial]

    const SweepRow& row(std::size_t point, Scheme s) const {
        return rows.at(point * kSchemeCount + static_cast<std::size_t>(s));
    }
};

inline constexpr const char* kCsvHeader =
    "scenario,sweep_param,sweep_value,scheme,mean_secrecy_rate,mean_eve_rate,mean_cross_corr,trials,master_seed";

using ProgressFn = std::function<void(const std::string&)>;

namespace detail {

/// Runs fn(0..count-1) on up to `jobs` threads (0 = hardware concurrency).
/// Rethrows the exception of the lowest failing index.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_index = count;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

inline std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline SchemeOutcome outcome_at(const ChannelSet& truth, int eve_antennas, const PhaseShiftVector& psv, const CVec& w,
                                double sigma2) {
    const CVec h_user = effective_channel(truth.user_links, truth.g_user, psv);
    const CMat h_eve = effective_channel_matrix(truth.eve_links, truth.g_eve, psv, eve_antennas);
    const RatePair r = secrecy_rate_mrc(h_user, h_eve, w, sigma2);
    return {r.secrecy_rate, r.eve_rate, cross_correlation(h_user, h_eve)};
}

}  // namespace detail

/// Evaluates all schemes for one trial.
///
/// The AO loops (proposed and MRT) design against `design`, which differs from
/// `truth` only in the first eavesdropper antenna's links when CSI is
/// imperfect. The proposed scheme then gets a final beamforming update on the
/// true channel against the first M eavesdropper antennas, and every scheme is
/// scored on the true channel with MRC at the eavesdropper. Returns one
/// outcome per entry of `eve_antenna_counts`.
inline std::vector<TrialOutcome> evaluate_trial(const ChannelSet& truth, const ChannelSet& design,
                                                const ScenarioConfig& cfg, std::uint64_t trial,
                                                const std::vector<int>& eve_antenna_counts) {
    const double sigma2 = cfg.sigma2();
    RngStream rng_proposed(cfg.seed, trial, StreamPurpose::Randomization);
    RngStream rng_mrt(cfg.seed, trial, StreamPurpose::Randomization);
    const AoTrace proposed = solve_instance(design, cfg, rng_proposed);
    const AoTrace mrt = solve_instance_mrt(design, cfg, rng_mrt);
    const PhaseShiftVector circular = circular_psv(truth.n());

    std::vector<TrialOutcome> out;
    out.reserve(eve_antenna_counts.size());
    for (int antennas : eve_antenna_counts) {
        TrialOutcome t;
        const Beamformer w = beamform_at(truth.user_links, truth.eve_links, antennas, truth.g_user, truth.g_eve,
                                         proposed.final_psv, sigma2, cfg.p_max);
        t[static_cast<int>(Scheme::Proposed)] = detail::outcome_at(truth, antennas, proposed.final_psv, w.w, sigma2);
        t[static_cast<int>(Scheme::Mrt)] = detail::outcome_at(truth, antennas, mrt.final_psv, mrt.final_w.w, sigma2);
        const Beamformer w_fpa = beamform_at(truth.user_links, truth.eve_links, antennas, truth.g_user, truth.g_eve,
                                             circular, sigma2, cfg.p_max);
        t[static_cast<int>(Scheme::Fpa)] = detail::outcome_at(truth, antennas, circular, w_fpa.w, sigma2);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const double ub = upper_bound_rate_at(truth.user_links, truth.eve_antenna(0), truth.g_user, truth.g_eve, w.w,
                                              sigma2);
        t[static_cast<int>(Scheme::UpperBound)] = {ub, nan, nan};
        out.push_back(t);
    }
    return out;
}

namespace detail {

inline SweepResult aggregate(std::string scenario, std::string param, std::vector<double> values,
                             std::vector<std::vector<TrialOutcome>> outcomes, const ScenarioConfig& cfg,
                             const ProgressFn& progress) {
    SweepResult res;
    res.scenario = std::move(scenario);
    res.sweep_param = std::move(param);
    res.sweep_values = std::move(values);
    res.outcomes = std::move(outcomes);
    for (std::size_t p = 0; p < res.sweep_values.size(); ++p) {
        std::string line = res.scenario + " " + res.sweep_param + "=" + format_value(res.sweep_values[p]) + ":";
        for (int s = 0; s < kSchemeCount; ++s) {
            SweepRow row;
            row.scenario = res.scenario;
            row.sweep_param = res.sweep_param;
            row.sweep_value = res.sweep_values[p];
            row.scheme = scheme_name(static_cast<Scheme>(s));
            row.trials = cfg.trials;
            row.master_seed = cfg.seed;
            double sr = 0.0, er = 0.0, xc = 0.0;
            for (const auto& trial : res.outcomes[p]) {
                sr += trial[s].secrecy_rate;
                er += trial[s].eve_rate;
                xc += trial[s].cross_corr;
            }
            const double count = static_cast<double>(res.outcomes[p].size());
            row.mean_secrecy_rate = sr / count;
            row.mean_eve_rate = er / count;
            row.mean_cross_corr = xc / count;
            line += std::string(" ") + row.scheme + " " + format_value(row.mean_secrecy_rate);
            res.rows.push_back(std::move(row));
        }
        if (progress) progress(line);
    }
    return res;
}

template <typename TrialFn>
std::vector<std::vector<TrialOutcome>> run_trials(const ScenarioConfig& cfg, std::size_t points, unsigned jobs,
                                                  TrialFn&& per_trial) {
    std::vector<std::vector<TrialOutcome>> by_trial(cfg.trials);
    parallel_for(static_cast<std::size_t>(cfg.trials), jobs, [&](std::size_t t) {
        try {
            by_trial[t] = per_trial(static_cast<std::uint64_t>(t));
        } catch (const SolverError& e) {
            throw SolverError("trial " + std::to_string(t) + ": " + e.what());
        }
    });
    std::vector<std::vector<TrialOutcome>> by_point(points, std::vector<TrialOutcome>(cfg.trials));
    for (std::size_t t = 0; t < by_trial.size(); ++t)
        for (std::size_t p = 0; p < points; ++p) by_point[p][t] = by_trial[t][p];
    return by_point;
}

}  // namespace detail

/// Secrecy and eavesdropper rates versus SNR.
inline SweepResult run_snr_sweep(const ScenarioConfig& cfg, const std::vector<double>& snr_list_db,
                                 unsigned jobs = 0, const ProgressFn& progress = {}) {
    validate(cfg);
    if (snr_list_db.empty()) throw ContractViolation("run_snr_sweep: empty SNR list");
    ScenarioConfig base = cfg;
    base.m = 1;
    auto outcomes = detail::run_trials(base, snr_list_db.size(), jobs, [&](std::uint64_t trial) {
        const ChannelSet ch = gen_channel_set(base, trial);
        std::vector<TrialOutcome> row;
        for (std::size_t p = 0; p < snr_list_db.size(); ++p) {
            ScenarioConfig point = base;
            point.snr_db = snr_list_db[p];
            try {
                row.push_back(evaluate_trial(ch, ch, point, trial, {1}).front());
            } catch (const SolverError& e) {
                throw SolverError("snr_db " + detail::format_value(point.snr_db) + ": " + e.what());
            }
        }
        return row;
    });
    return detail::aggregate("snr", "snr_db", snr_list_db, std::move(outcomes), base, progress);
}

/// Secrecy rate and cross-correlation versus the number of BS antennas.
inline SweepResult run_antenna_sweep(const ScenarioConfig& cfg, const std::vector<int>& n_list, unsigned jobs = 0,
                                     const ProgressFn& progress = {}) {
    validate(cfg);
    if (n_list.empty()) throw ContractViolation("run_antenna_sweep: empty antenna list");
    ScenarioConfig base = cfg;
    base.m = 1;
    auto outcomes = detail::run_trials(base, n_list.size(), jobs, [&](std::uint64_t trial) {
        std::vector<TrialOutcome> row;
        for (int n : n_list) {
            ScenarioConfig point = base;
            point.n = n;
            const ChannelSet ch = gen_channel_set(point, trial);
            try {
                row.push_back(evaluate_trial(ch, ch, point, trial, {1}).front());
            } catch (const SolverError& e) {
                throw SolverError("n " + std::to_string(n) + ": " + e.what());
            }
        }
        return row;
    });
    std::vector<double> values(n_list.begin(), n_list.end());
    return detail::aggregate("antennas", "n", std::move(values), std::move(outcomes), base, progress);
}

/// Secrecy and eavesdropper rates versus the variance of the eavesdropper
/// channel estimation error. The AO loops see the estimate; the final
/// beamforming update and all scoring use the true channel.
inline SweepResult run_csi_error_sweep(const ScenarioConfig& cfg, const std::vector<double>& xi_list,
                                       unsigned jobs = 0, const ProgressFn& progress = {}) {
    validate(cfg);
    if (xi_list.empty()) throw ContractViolation("run_csi_error_sweep: empty error-variance list");
    ScenarioConfig base = cfg;
    base.m = 1;
    auto outcomes = detail::run_trials(base, xi_list.size(), jobs, [&](std::uint64_t trial) {
        const ChannelSet truth = gen_channel_set(base, trial);
        std::vector<TrialOutcome> row;
        for (double xi : xi_list) {
            ChannelSet design = truth;
            RngStream err_rng(base.seed, trial, StreamPurpose::ChannelError);
            design.eve_links[0] = perturb_eve_links(truth.eve_links[0], xi, err_rng);
            try {
                row.push_back(evaluate_trial(truth, design, base, trial, {1}).front());
            } catch (const SolverError& e) {
                throw SolverError("xi " + detail::format_value(xi) + ": " + e.what());
            }
        }
        return row;
    });
    return detail::aggregate("csi-error", "xi", xi_list, std::move(outcomes), base, progress);
}

/// Secrecy rate and cross-correlation versus the number of eavesdropper
/// antennas. Polarforming is designed against the first antenna only; the
/// final beamformer and the scoring use all M antennas with MRC.
inline SweepResult run_multi_eve_sweep(const ScenarioConfig& cfg, const std::vector<int>& m_list, unsigned jobs = 0,
                                       const ProgressFn& progress = {}) {
    validate(cfg);
    if (m_list.empty()) throw ContractViolation("run_multi_eve_sweep: empty antenna list");
    ScenarioConfig base = cfg;
    base.m = *std::max_element(m_list.begin(), m_list.end());
    auto outcomes = detail::run_trials(base, m_list.size(), jobs, [&](std::uint64_t trial) {
        const ChannelSet ch = gen_channel_set(base, trial);
        return evaluate_trial(ch, ch, base, trial, m_list);
    });
    std::vector<double> values(m_list.begin(), m_list.end());
    return detail::aggregate("multi-eve", "m", std::move(values), std::move(outcomes), base, progress);
}

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"snr", "antennas", "csi-error", "multi-eve"};
    return names;
}

/// Runs a named scenario over the grid stored in cfg.
inline SweepResult run_scenario(const std::string& name, const ScenarioConfig& cfg, unsigned jobs = 0,
                                const ProgressFn& progress = {}) {
    if (name == "snr") return run_snr_sweep(cfg, cfg.snr_list_db, jobs, progress);
    if (name == "antennas") return run_antenna_sweep(cfg, cfg.n_list, jobs, progress);
    if (name == "csi-error") return run_csi_error_sweep(cfg, cfg.xi_list, jobs, progress);
    if (name == "multi-eve") return run_multi_eve_sweep(cfg, cfg.m_list, jobs, progress);
    throw ConfigError("unknown scenario '" + name + "' (expected snr, antennas, csi-error or multi-eve)");
}

inline void write_csv(const SweepResult& res, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const auto& r : res.rows) {
        os << r.scenario << ',' << r.sweep_param << ',' << detail::format_value(r.sweep_value) << ',' << r.scheme
           << ',' << detail::format_value(r.mean_secrecy_rate) << ',' << detail::format_value(r.mean_eve_rate) << ','
           << detail::format_value(r.mean_cross_corr) << ',' << r.trials << ',' << r.master_seed << '\n';
    }
}

}  // namespace polarsec
