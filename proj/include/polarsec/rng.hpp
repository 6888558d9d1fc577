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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace polarsec {

/// What a stream is used for. Codes are part of the reproducibility contract.
enum class StreamPurpose : std::uint64_t {
    UserLinks = 0,
    EveLinks = 1,
    ChannelError = 2,
    Randomization = 3,
};

inline constexpr std::uint64_t kPurposesPerTrial = 16;

inline constexpr std::uint64_t stream_index(std::uint64_t trial, StreamPurpose purpose) {
    return trial * kPurposesPerTrial + static_cast<std::uint64_t>(purpose);
}

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic random stream keyed by (master_seed, stream_index). Two
/// streams with the same key produce the same draws regardless of which
/// thread or in which order they are consumed.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t index)
        : master_seed_(master_seed),
          index_(index),
          engine_(detail::splitmix64(detail::splitmix64(master_seed) ^ detail::splitmix64(~index))) {}

    RngStream(std::uint64_t master_seed, std::uint64_t trial, StreamPurpose purpose)
        : RngStream(master_seed, stream_index(trial, purpose)) {}

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t index() const noexcept { return index_; }

    double normal() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

private:
    std::uint64_t master_seed_;
    std::uint64_t index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace polarsec
