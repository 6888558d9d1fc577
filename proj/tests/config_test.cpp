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
#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "polarsec/config.hpp"
#include "polarsec/errors.hpp"

using namespace polarsec;
using Complex = std::complex<double>;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Config, DefaultsMatchBaselineScenario) {
    const ScenarioConfig cfg = parse_config("");
    EXPECT_EQ(cfg.n, 4);
    EXPECT_EQ(cfg.m, 1);
    EXPECT_EQ(cfg.snr_db, 0.0);
    EXPECT_EQ(cfg.chi_user, 0.2);
    EXPECT_EQ(cfg.chi_eve, 0.2);
    EXPECT_EQ(cfg.trials, 500);
    EXPECT_EQ(cfg.epsilon, 1e-5);
    EXPECT_EQ(cfg.rand_count, 200);
    EXPECT_EQ(cfg.max_iters, 50);
    EXPECT_EQ(cfg.sigma2(), 1.0);
    EXPECT_EQ(cfg.g_user, Eigen::Vector2cd(1.0, 0.0));
}

TEST(Config, ParsesAssignmentsAndComments) {
    const ScenarioConfig cfg = parse_config(
        "# baseline\n"
        "n = 8\n"
        "snr_db = -10   # low SNR\n"
        "\n"
        "  seed=42\n"
        "n_list = 2, 4\n"
        "g_eve = 0.7071067811865476, 0.7071067811865476j\n");
    EXPECT_EQ(cfg.n, 8);
    EXPECT_EQ(cfg.snr_db, -10.0);
    EXPECT_NEAR(cfg.sigma2(), 10.0, 1e-12);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.n_list, (std::vector<int>{2, 4}));
    EXPECT_NEAR(std::abs(cfg.g_eve(1) - Complex(0.0, 0.7071067811865476)), 0.0, 1e-16);
}

TEST(Config, ComplexForms) {
    ScenarioConfig cfg;
    apply_override(cfg, "g_user", "0.6+0.8j, 0");
    EXPECT_EQ(cfg.g_user(0), Complex(0.6, 0.8));
    apply_override(cfg, "g_user", "0, -1j");
    EXPECT_EQ(cfg.g_user(1), Complex(0.0, -1.0));
    EXPECT_THROW(apply_override(cfg, "g_user", "1"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "g_user", "1+, 0"), ConfigError);
}

TEST(Config, UnknownKeyIsNamed) {
    EXPECT_NE(error_of("antennas = 4\n").find("antennas"), std::string::npos);
}

TEST(Config, MalformedValuesRejected) {
    EXPECT_FALSE(error_of("n = four\n").empty());
    EXPECT_FALSE(error_of("n = 4.5\n").empty());
    EXPECT_FALSE(error_of("snr_db = \n").empty());
    EXPECT_FALSE(error_of("just a line\n").empty());
    EXPECT_FALSE(error_of("xi_list = 0, x\n").empty());
}

TEST(Config, RangeChecksNameTheKey) {
    EXPECT_NE(error_of("n = 0\n").find("n must"), std::string::npos);
    EXPECT_NE(error_of("chi_eve = -1\n").find("chi_eve"), std::string::npos);
    EXPECT_NE(error_of("g_user = 1, 1\n").find("g_user"), std::string::npos);
    EXPECT_NE(error_of("epsilon = 0\n").find("epsilon"), std::string::npos);
    EXPECT_NE(error_of("trials = 0\n").find("trials"), std::string::npos);
    EXPECT_NE(error_of("m_list = 0\n").find("m_list"), std::string::npos);
}

TEST(Config, TextRoundTrip) {
    ScenarioConfig cfg;
    cfg.n = 6;
    cfg.snr_db = 0.1;
    cfg.chi_eve = 1.0 / 3.0;
    cfg.g_user = Eigen::Vector2cd(Complex(0.6, 0.0), Complex(0.0, 0.8));
    cfg.seed = 18446744073709551615ull;
    cfg.xi_list = {0.0, 0.05, 1e-7};
    const ScenarioConfig back = parse_config(to_config_text(cfg));
    EXPECT_EQ(to_config_text(back), to_config_text(cfg));
    EXPECT_EQ(back.chi_eve, cfg.chi_eve);
    EXPECT_EQ(back.g_user, cfg.g_user);
    EXPECT_EQ(back.seed, cfg.seed);
    EXPECT_EQ(back.xi_list, cfg.xi_list);
}

TEST(Config, MissingFileReported) {
    EXPECT_THROW(load_config("/nonexistent/polarsec.cfg"), ConfigError);
}
