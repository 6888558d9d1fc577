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

#include "polarsec/ao.hpp"
#include "support.hpp"

using namespace polarsec;
namespace pt = polarsec::testing;

namespace {

AoTrace run(const ChannelSet& ch, const ScenarioConfig& cfg, std::uint64_t trial, BeamformingRule rule) {
    RngStream rng(cfg.seed, trial, StreamPurpose::Randomization);
    return run_ao(ch, cfg, rule, rng);
}

}  // namespace

TEST(AlternatingOptimization, ProposedTraceIsMonotone) {
    ScenarioConfig cfg;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const ChannelSet ch = gen_channel_set(cfg, t);
        const AoTrace tr = run(ch, cfg, t, BeamformingRule::Optimal);
        EXPECT_TRUE(tr.converged);
        EXPECT_LE(static_cast<int>(tr.iterations.size()), cfg.max_iters);
        auto seq = pt::interleaved_rates(tr);
        seq.push_back(tr.final_rate);
        EXPECT_TRUE(pt::non_decreasing(seq, 1e-9)) << "trial " << t;
        EXPECT_GE(tr.upper_bound_rate, tr.final_rate - 1e-6);
    }
}

TEST(AlternatingOptimization, MrtTraceIsMonotoneAndBelowProposed) {
    ScenarioConfig cfg;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const ChannelSet ch = gen_channel_set(cfg, t);
        const AoTrace mrt = run(ch, cfg, t, BeamformingRule::Mrt);
        const AoTrace opt = run(ch, cfg, t, BeamformingRule::Optimal);
        EXPECT_TRUE(pt::non_decreasing(pt::polarforming_rates(mrt), 1e-9)) << "trial " << t;
        EXPECT_NEAR(mrt.final_rate, mrt.iterations.back().rate_after_polarforming, 0.0);
        EXPECT_LE(mrt.final_rate, opt.final_rate + 1e-6) << "trial " << t;
    }
}

TEST(AlternatingOptimization, IdenticalChannelsGiveZeroRate) {
    ScenarioConfig cfg;
    ChannelSet ch = gen_channel_set(cfg, 0);
    ch.eve_links[0] = ch.user_links;
    const AoTrace tr = run(ch, cfg, 0, BeamformingRule::Optimal);
    EXPECT_NEAR(tr.final_rate, 0.0, 1e-9);
}

TEST(AlternatingOptimization, SingleAntennaMatchesExhaustiveSearch) {
    ScenarioConfig cfg;
    cfg.n = 1;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const ChannelSet ch = gen_channel_set(cfg, t);
        const AoTrace tr = run(ch, cfg, t, BeamformingRule::Optimal);
        const auto grid = pt::grid_optimum_n1(ch, cfg.sigma2(), cfg.p_max, 10000);
        EXPECT_NEAR(tr.final_rate, grid.rate, 1e-3) << "trial " << t;
        EXPECT_GE(tr.upper_bound_rate, grid.rate - 1e-9);
    }
}

TEST(AlternatingOptimization, MrtOptimalWhenChannelsOrthogonal) {
    // User reached only from antennas 0-1, eavesdropper only from 2-3: the
    // effective channels are orthogonal for every PSV and MRT leaks nothing.
    ScenarioConfig cfg;
    for (std::uint64_t t = 0; t < 5; ++t) {
        ChannelSet ch = gen_channel_set(cfg, t);
        for (int i = 0; i < 2; ++i) {
            ch.user_links[i + 2].lambda.setZero();
            ch.eve_links[0][i].lambda.setZero();
        }
        const AoTrace mrt = run(ch, cfg, t, BeamformingRule::Mrt);
        const AoTrace opt = run(ch, cfg, t, BeamformingRule::Optimal);
        EXPECT_NEAR(mrt.final_rate, opt.final_rate, 1e-6);
    }
}

TEST(AlternatingOptimization, FixedCircularPolarization) {
    ScenarioConfig cfg;
    for (std::uint64_t t = 0; t < 10; ++t) {
        const ChannelSet ch = gen_channel_set(cfg, t);
        const AoTrace fpa = solve_instance_fpa(ch, cfg);
        EXPECT_EQ(fpa.iterations.size(), 1u);
        EXPECT_TRUE(std::isnan(fpa.upper_bound_rate));
        for (int i = 0; i < cfg.n; ++i) EXPECT_DOUBLE_EQ(fpa.final_psv[i], std::numbers::pi / 2);
        // Same value from scratch: optimal beamformer at theta = pi/2.
        const auto psv = PhaseShiftVector::constant(cfg.n, std::numbers::pi / 2);
        const CVec hu = effective_channel(ch.user_links, ch.g_user, psv);
        const CVec he = effective_channel(ch.eve_links[0], ch.g_eve, psv);
        const auto pair = make_quadratic_forms(hu, CMat(he), cfg.sigma2());
        const CVec w = optimal_beamformer(pair, cfg.p_max).w;
        EXPECT_NEAR(fpa.final_rate, secrecy_rate(hu, he, w, cfg.sigma2()).secrecy_rate, 1e-12);
        RngStream rng(cfg.seed, t, StreamPurpose::Randomization);
        EXPECT_GE(solve_instance(ch, cfg, rng).final_rate, fpa.final_rate - 1e-9);
    }
}

TEST(AlternatingOptimization, Deterministic) {
    ScenarioConfig cfg;
    const ChannelSet ch = gen_channel_set(cfg, 4);
    const AoTrace a = run(ch, cfg, 4, BeamformingRule::Optimal);
    const AoTrace b = run(ch, cfg, 4, BeamformingRule::Optimal);
    EXPECT_EQ(a.final_rate, b.final_rate);
    EXPECT_EQ(a.final_psv, b.final_psv);
    EXPECT_EQ(a.iterations.size(), b.iterations.size());
}

TEST(AlternatingOptimization, IterationCapStopsLoop) {
    ScenarioConfig cfg;
    cfg.max_iters = 1;
    cfg.epsilon = 1e-300;
    const ChannelSet ch = gen_channel_set(cfg, 2);
    const AoTrace tr = run(ch, cfg, 2, BeamformingRule::Optimal);
    EXPECT_EQ(tr.iterations.size(), 1u);
}

TEST(AlternatingOptimization, RejectsInvalidConfig) {
    ScenarioConfig cfg;
    const ChannelSet ch = gen_channel_set(cfg, 0);
    cfg.epsilon = 0.0;
    RngStream rng(1, 0);
    EXPECT_THROW(solve_instance(ch, cfg, rng), ConfigError);
}
