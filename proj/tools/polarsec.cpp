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
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarsec/ao.hpp"
#include "polarsec/config.hpp"
#include "polarsec/errors.hpp"
#include "polarsec/experiments.hpp"

// Command-line front end.
//
//   polarsec solve [options]                   one instance, prints the AO trace
//   polarsec sweep --scenario NAME [options]   Monte Carlo sweep, writes CSV
//   polarsec config [options]                  prints the effective configuration
//
// Exit codes: 0 success, 1 unexpected failure, 2 bad arguments or
// configuration, 3 numerical solver failure.

namespace {

using namespace polarsec;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

/// Config file, --set overrides and per-key flags, shared by every subcommand.
struct ConfigOptions {
    std::string config_path;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;  // key -> value, for flags that were given

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "Configuration file (key = value lines)")->check(CLI::ExistingFile);
        app.add_option("--set", sets, "Override one key: --set key=value (repeatable)");
        for (const auto& key : config_keys()) {
            std::string flag = key;
            for (char& c : flag)
                if (c == '_') c = '-';
            app.add_option_function<std::string>(
                "--" + flag, [this, key](const std::string& v) { flags[key] = v; }, "Set '" + key + "'");
        }
    }

    ScenarioConfig resolve() const {
        ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
            apply_override(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [key, value] : flags) apply_override(cfg, key, value);
        validate(cfg);
        return cfg;
    }
};

json complex_vector_json(const CVec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

json nullable(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

json trace_json(const std::string& scheme, const AoTrace& t) {
    json its = json::array();
    for (const auto& it : t.iterations)
        its.push_back({{"index", it.index},
                       {"rate_after_beamforming", it.rate_after_beamforming},
                       {"rate_after_polarforming", it.rate_after_polarforming},
                       {"upper_bound_rate", nullable(it.upper_bound_rate)}});
    json psv = json::array();
    for (int i = 0; i < t.final_psv.size(); ++i) psv.push_back(t.final_psv[i]);
    return {{"scheme", scheme},
            {"converged", t.converged},
            {"discarded_last_step", t.discarded_last_step},
            {"iterations", its},
            {"final_psv", psv},
            {"final_w", complex_vector_json(t.final_w.w)},
            {"final_rate", t.final_rate},
            {"upper_bound_rate", nullable(t.upper_bound_rate)}};
}

void print_trace(std::ostream& os, const std::string& scheme, const AoTrace& t) {
    os << scheme << ": " << t.iterations.size() << " iteration(s)"
       << (t.converged ? ", converged" : ", iteration cap reached")
       << (t.discarded_last_step ? ", last step discarded" : "") << '\n';
    os << "  iter  rate_bf        rate_pf        bound\n";
    for (const auto& it : t.iterations) {
        os << "  " << std::setw(4) << it.index << std::fixed << std::setprecision(9) << "  " << std::setw(13)
           << it.rate_after_beamforming << "  " << std::setw(13) << it.rate_after_polarforming << "  "
           << std::setw(13) << it.upper_bound_rate << '\n';
        os.unsetf(std::ios::floatfield);
    }
    os << std::setprecision(12) << "  final secrecy rate " << t.final_rate << " bps/Hz, upper bound "
       << t.upper_bound_rate << '\n';
    os << "  theta:";
    for (int i = 0; i < t.final_psv.size(); ++i) os << ' ' << t.final_psv[i];
    os << '\n';
}

int run_solve(const ScenarioConfig& cfg, std::uint64_t trial, const std::string& trace_out) {
    const ChannelSet ch = gen_channel_set(cfg, trial);
    RngStream rng_proposed(cfg.seed, trial, StreamPurpose::Randomization);
    RngStream rng_mrt(cfg.seed, trial, StreamPurpose::Randomization);
    const std::vector<std::pair<std::string, AoTrace>> traces{
        {"Proposed", solve_instance(ch, cfg, rng_proposed)},
        {"MRT", solve_instance_mrt(ch, cfg, rng_mrt)},
        {"FPA", solve_instance_fpa(ch, cfg)}};

    std::cout << "instance: n=" << cfg.n << " snr_db=" << cfg.snr_db << " seed=" << cfg.seed << " trial=" << trial
              << '\n';
    for (const auto& [name, t] : traces) print_trace(std::cout, name, t);

    if (!trace_out.empty()) {
        json doc{{"seed", cfg.seed}, {"trial", trial}, {"config", to_config_text(cfg)}, {"schemes", json::array()}};
        for (const auto& [name, t] : traces) doc["schemes"].push_back(trace_json(name, t));
        std::ofstream out(trace_out);
        if (!out) throw ConfigError("cannot write trace file '" + trace_out + "'");
        out << doc.dump(2) << '\n';
    }
    return 0;
}

int run_sweep(const ScenarioConfig& cfg, const std::string& scenario, unsigned jobs, const std::string& out_path,
              bool quiet) {
    ProgressFn progress;
    if (!quiet) progress = [](const std::string& line) { std::cerr << line << '\n'; };
    const SweepResult res = run_scenario(scenario, cfg, jobs, progress);
    if (out_path.empty() || out_path == "-") {
        write_csv(res, std::cout);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write output file '" + out_path + "'");
    write_csv(res, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint beamforming and polarforming for physical layer security"};
    app.require_subcommand(1);

    ConfigOptions solve_opts, sweep_opts, config_opts;

    auto* solve = app.add_subcommand("solve", "Run the schemes on one channel realization and print the AO trace");
    solve_opts.attach(*solve);
    std::uint64_t trial = 0;
    std::string trace_out;
    solve->add_option("--trial", trial, "Trial index selecting the channel realization");
    solve->add_option("--trace-out", trace_out, "Write the traces as JSON");

    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV");
    sweep_opts.attach(*sweep);
    std::string scenario;
    unsigned jobs = 0;
    std::string out_path;
    bool quiet = false;
    sweep->add_option("--scenario", scenario, "Scenario")
        ->required()
        ->check(CLI::IsMember(scenario_names()));
    sweep->add_option("--jobs,-j", jobs, "Worker threads (0 = all cores)");
    sweep->add_option("--out,-o", out_path, "CSV output path (default: stdout)");
    sweep->add_flag("--quiet,-q", quiet, "No progress lines on stderr");

    auto* show = app.add_subcommand("config", "Print the effective configuration");
    config_opts.attach(*show);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*solve) return run_solve(solve_opts.resolve(), trial, trace_out);
        if (*sweep) return run_sweep(sweep_opts.resolve(), scenario, jobs, out_path, quiet);
        std::cout << to_config_text(config_opts.resolve());
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ContractViolation& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
