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

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "polarsec/errors.hpp"

namespace polarsec {

/// Every experiment knob. Key names used by the text format and the CLI
/// overrides are listed in config_keys().
struct ScenarioConfig {
    int n = 4;           // BS antennas
    int m = 1;           // eavesdropper antennas
    double snr_db = 0.0; // gamma = p_max / sigma^2
    double chi_user = 0.2;
    double chi_eve = 0.2;
    Eigen::Vector2cd g_user{1.0, 0.0};
    Eigen::Vector2cd g_eve{1.0, 0.0};
    double xi = 0.0;
    int trials = 500;
    std::uint64_t seed = 1;
    double epsilon = 1e-5;
    int rand_count = 200;
    int max_iters = 50;
    double p_max = 1.0;

    std::vector<double> snr_list_db{-10.0, -5.0, 0.0, 5.0, 10.0};
    std::vector<int> n_list{2, 4, 6, 8};
    std::vector<double> xi_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<int> m_list{1, 2, 3, 4};

    double sigma2() const { return p_max * std::pow(10.0, -snr_db / 10.0); }
};

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "n",       "m",         "snr_db",    "chi_user", "chi_eve",     "g_user",
        "g_eve",   "xi",        "trials",    "seed",     "epsilon",     "rand_count",
        "max_iters", "p_max",   "snr_list_db", "n_list", "xi_list",     "m_list"};
    return keys;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(',');
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

inline double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
        throw ConfigError("invalid number '" + std::string(text) + "' for key '" + std::string(key) + "'");
    return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("invalid integer '" + std::string(text) + "' for key '" + std::string(key) + "'");
    return v;
}

/// Accepts "a", "bj", "a+bj", "a-bj".
inline std::complex<double> parse_complex(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ConfigError("empty complex value for key '" + std::string(key) + "'");
    if (text.back() != 'j') return {parse_double(key, text), 0.0};
    text.remove_suffix(1);
    // Split at the last sign that is not the leading one and not an exponent sign.
    for (std::size_t i = text.size(); i-- > 1;) {
        const char c = text[i];
        if ((c == '+' || c == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            const double re = parse_double(key, text.substr(0, i));
            std::string_view im_text = text.substr(i);
            double im = 0.0;
            if (im_text == "+" || im_text == "-")
                im = im_text == "+" ? 1.0 : -1.0;
            else
                im = parse_double(key, im_text);
            return {re, im};
        }
    }
    if (text.empty() || text == "+") return {0.0, 1.0};
    if (text == "-") return {0.0, -1.0};
    return {0.0, parse_double(key, text)};
}

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
    return std::string(buf, res.ptr);
}

inline std::string format_complex(std::complex<double> z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string out = format_double(z.real());
    if (!std::signbit(z.imag())) out += '+';
    out += format_double(z.imag());
    out += 'j';
    return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view key, std::string_view text, Parse parse) {
    std::vector<T> out;
    for (auto item : split_list(text)) out.push_back(parse(key, item));
    return out;
}

}  // namespace detail

/// Sets one key from its textual value. Unknown keys are rejected by name.
inline void apply_override(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    using namespace detail;
    key = trim(key);
    if (key == "n") cfg.n = parse_int<int>(key, value);
    else if (key == "m") cfg.m = parse_int<int>(key, value);
    else if (key == "snr_db") cfg.snr_db = parse_double(key, value);
    else if (key == "chi_user") cfg.chi_user = parse_double(key, value);
    else if (key == "chi_eve") cfg.chi_eve = parse_double(key, value);
    else if (key == "g_user" || key == "g_eve") {
        const auto parts = split_list(value);
        if (parts.size() != 2) throw ConfigError("key '" + std::string(key) + "' needs two comma-separated entries");
        Eigen::Vector2cd g{parse_complex(key, parts[0]), parse_complex(key, parts[1])};
        (key == "g_user" ? cfg.g_user : cfg.g_eve) = g;
    }
    else if (key == "xi") cfg.xi = parse_double(key, value);
    else if (key == "trials") cfg.trials = parse_int<int>(key, value);
    else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_double(key, value);
    else if (key == "rand_count") cfg.rand_count = parse_int<int>(key, value);
    else if (key == "max_iters") cfg.max_iters = parse_int<int>(key, value);
    else if (key == "p_max") cfg.p_max = parse_double(key, value);
    else if (key == "snr_list_db") cfg.snr_list_db = parse_list<double>(key, value, parse_double);
    else if (key == "n_list") cfg.n_list = parse_list<int>(key, value, parse_int<int>);
    else if (key == "xi_list") cfg.xi_list = parse_list<double>(key, value, parse_double);
    else if (key == "m_list") cfg.m_list = parse_list<int>(key, value, parse_int<int>);
    else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

/// Throws ConfigError naming the first offending key.
inline void validate(const ScenarioConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (cfg.n < 1) fail("n must be >= 1");
    if (cfg.m < 1) fail("m must be >= 1");
    if (cfg.chi_user < 0.0) fail("chi_user must be >= 0");
    if (cfg.chi_eve < 0.0) fail("chi_eve must be >= 0");
    if (std::abs(cfg.g_user.norm() - 1.0) > 1e-9) fail("g_user must have unit norm");
    if (std::abs(cfg.g_eve.norm() - 1.0) > 1e-9) fail("g_eve must have unit norm");
    if (cfg.xi < 0.0) fail("xi must be >= 0");
    if (cfg.trials < 1) fail("trials must be >= 1");
    if (!(cfg.epsilon > 0.0)) fail("epsilon must be > 0");
    if (cfg.rand_count < 1) fail("rand_count must be >= 1");
    if (cfg.max_iters < 1) fail("max_iters must be >= 1");
    if (!(cfg.p_max > 0.0)) fail("p_max must be > 0");
    if (cfg.snr_list_db.empty()) fail("snr_list_db must be nonempty");
    if (cfg.n_list.empty()) fail("n_list must be nonempty");
    for (int v : cfg.n_list)
        if (v < 1) fail("n_list entries must be >= 1");
    if (cfg.xi_list.empty()) fail("xi_list must be nonempty");
    for (double v : cfg.xi_list)
        if (v < 0.0) fail("xi_list entries must be >= 0");
    if (cfg.m_list.empty()) fail("m_list must be nonempty");
    for (int v : cfg.m_list)
        if (v < 1) fail("m_list entries must be >= 1");
}

/// Parses the key=value format: one assignment per line, '#' starts a comment,
/// blank lines ignored, later assignments win. Starts from the defaults.
inline ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Renders cfg in the same format parse_config reads.
inline std::string to_config_text(const ScenarioConfig& cfg) {
    using detail::format_complex;
    using detail::format_double;
    auto join = [](const auto& values) {
        std::string out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ", ";
            if constexpr (std::is_floating_point_v<std::decay_t<decltype(values[i])>>)
                out += format_double(values[i]);
            else
                out += std::to_string(values[i]);
        }
        return out;
    };
    std::ostringstream os;
    os << "n = " << cfg.n << '\n'
       << "m = " << cfg.m << '\n'
       << "snr_db = " << format_double(cfg.snr_db) << '\n'
       << "chi_user = " << format_double(cfg.chi_user) << '\n'
       << "chi_eve = " << format_double(cfg.chi_eve) << '\n'
       << "g_user = " << format_complex(cfg.g_user(0)) << ", " << format_complex(cfg.g_user(1)) << '\n'
       << "g_eve = " << format_complex(cfg.g_eve(0)) << ", " << format_complex(cfg.g_eve(1)) << '\n'
       << "xi = " << format_double(cfg.xi) << '\n'
       << "trials = " << cfg.trials << '\n'
       << "seed = " << cfg.seed << '\n'
       << "epsilon = " << format_double(cfg.epsilon) << '\n'
       << "rand_count = " << cfg.rand_count << '\n'
       << "max_iters = " << cfg.max_iters << '\n'
       << "p_max = " << format_double(cfg.p_max) << '\n'
       << "snr_list_db = " << join(cfg.snr_list_db) << '\n'
       << "n_list = " << join(cfg.n_list) << '\n'
       << "xi_list = " << join(cfg.xi_list) << '\n'
       << "m_list = " << join(cfg.m_list) << '\n';
    return os.str();
}

}  // namespace polarsec
