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
#include <vector>

#include "polarsec/rng.hpp"

using namespace polarsec;

TEST(RngStream, SameKeySameDraws) {
    RngStream a(42, 7, StreamPurpose::EveLinks);
    RngStream b(42, 7, StreamPurpose::EveLinks);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
}

TEST(RngStream, DrawsDoNotDependOnConsumptionOrder) {
    RngStream first(1, 0, StreamPurpose::UserLinks);
    RngStream second(1, 1, StreamPurpose::UserLinks);
    std::vector<double> forward;
    for (int i = 0; i < 10; ++i) forward.push_back(second.normal());
    for (int i = 0; i < 50; ++i) first.normal();

    RngStream again(1, 1, StreamPurpose::UserLinks);
    for (double v : forward) EXPECT_EQ(again.normal(), v);
}

TEST(RngStream, DistinctKeysDiffer) {
    RngStream a(1, 0, StreamPurpose::UserLinks);
    RngStream b(1, 0, StreamPurpose::EveLinks);
    RngStream c(2, 0, StreamPurpose::UserLinks);
    const double va = a.normal();
    EXPECT_NE(va, b.normal());
    EXPECT_NE(va, c.normal());
}

TEST(RngStream, StreamIndexLayout) {
    EXPECT_EQ(stream_index(0, StreamPurpose::UserLinks), 0u);
    EXPECT_EQ(stream_index(3, StreamPurpose::Randomization), 3u * kPurposesPerTrial + 3u);
    RngStream s(5, 2, StreamPurpose::ChannelError);
    EXPECT_EQ(s.index(), stream_index(2, StreamPurpose::ChannelError));
    EXPECT_EQ(s.master_seed(), 5u);
}

TEST(RngStream, ComplexNormalMoments) {
    RngStream s(9, 0);
    const int count = 200000;
    double power = 0.0;
    std::complex<double> mean = 0.0;
    std::complex<double> pseudo = 0.0;
    for (int i = 0; i < count; ++i) {
        const auto z = s.complex_normal(0.5);
        power += std::norm(z);
        mean += z;
        pseudo += z * z;
    }
    EXPECT_NEAR(power / count, 0.5, 0.01);
    EXPECT_LT(std::abs(mean / double(count)), 0.01);
    EXPECT_LT(std::abs(pseudo / double(count)), 0.01);
}
