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

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "polarsec/config.hpp"
#include "polarsec/errors.hpp"
#include "polarsec/linalg.hpp"
#include "polarsec/rng.hpp"

namespace polarsec {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps a finite angle into [0, 2pi).
inline double wrap_phase(double theta) {
    if (!std::isfinite(theta)) throw ContractViolation("phase must be finite");
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Transmit polarization of one PRA: f(theta) = [1, e^{j theta}]^T / sqrt(2).
struct PolarformingVector {
    double theta;
    Eigen::Vector2cd value;
};

inline PolarformingVector polarforming_vector(double theta) {
    const double t = wrap_phase(theta);
    const double s = 1.0 / std::numbers::sqrt2;
    return {t, Eigen::Vector2cd{Complex(s, 0.0), std::polar(s, t)}};
}

/// One 2x2 polarized channel matrix and the inverse XPD it was drawn with.
struct PolarizedLink {
    Eigen::Matrix2cd lambda;
    double chi = 0.0;
};

/// N phase shifts, each wrapped to [0, 2pi).
class PhaseShiftVector {
public:
    PhaseShiftVector() = default;

    explicit PhaseShiftVector(RVec thetas) : thetas_(std::move(thetas)) {
        if (thetas_.size() < 1) throw ContractViolation("phase shift vector must have length >= 1");
        for (Eigen::Index i = 0; i < thetas_.size(); ++i) thetas_(i) = wrap_phase(thetas_(i));
    }

    static PhaseShiftVector constant(int n, double theta) {
        return PhaseShiftVector(RVec::Constant(n, theta));
    }

    int size() const { return static_cast<int>(thetas_.size()); }
    double operator[](int i) const { return thetas_(i); }
    const RVec& thetas() const { return thetas_; }

    bool operator==(const PhaseShiftVector& o) const {
        return thetas_.size() == o.thetas_.size() && thetas_ == o.thetas_;
    }

private:
    RVec thetas_;
};

/// Receive antenna polarization of a terminal.
class TerminalPolarization {
public:
    explicit TerminalPolarization(const Eigen::Vector2cd& g) : g_(g) {
        if (!g.allFinite() || std::abs(g.norm() - 1.0) > 1e-9)
            throw ContractViolation("terminal polarization must be a finite unit vector");
    }
    const Eigen::Vector2cd& g() const { return g_; }

private:
    Eigen::Vector2cd g_;
};

/// All links of one channel realization. `eve_links[m][n]` is the link from
/// BS antenna n to eavesdropper antenna m; M = eve_links.size().
struct ChannelSet {
    std::vector<PolarizedLink> user_links;
    std::vector<std::vector<PolarizedLink>> eve_links;
    TerminalPolarization g_user{Eigen::Vector2cd{1.0, 0.0}};
    TerminalPolarization g_eve{Eigen::Vector2cd{1.0, 0.0}};

    int n() const { return static_cast<int>(user_links.size()); }
    int m() const { return static_cast<int>(eve_links.size()); }
    const std::vector<PolarizedLink>& eve_antenna(int idx) const { return eve_links.at(idx); }
};

/// Lambda = [[1, sqrt(chi)], [sqrt(chi), 1]] / sqrt(chi + 1) (.) H, with
/// every entry of H drawn CN(0, 1/sqrt(2)).
inline PolarizedLink gen_polarized_link(double chi, RngStream& rng) {
    if (!(chi >= 0.0) || !std::isfinite(chi)) throw ContractViolation("inverse XPD must be finite and >= 0");
    const double variance = 1.0 / std::numbers::sqrt2;
    const double co = 1.0 / std::sqrt(chi + 1.0);
    const double cross = std::sqrt(chi) * co;
    PolarizedLink link;
    link.chi = chi;
    // Column-major draw order: (0,0), (1,0), (0,1), (1,1).
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            const Complex h = rng.complex_normal(variance);
            link.lambda(i, j) = (i == j ? co : cross) * h;
        }
    return link;
}

/// h[n] = g^H Lambda_n f(theta_n).
inline CVec effective_channel(const std::vector<PolarizedLink>& links, const TerminalPolarization& g,
                              const PhaseShiftVector& psv) {
    if (links.size() != static_cast<std::size_t>(psv.size()))
        throw ContractViolation("effective_channel: link count differs from phase shift vector length");
    CVec h(static_cast<Eigen::Index>(links.size()));
    for (std::size_t n = 0; n < links.size(); ++n) {
        const Eigen::Vector2cd f = polarforming_vector(psv[static_cast<int>(n)]).value;
        h(static_cast<Eigen::Index>(n)) = g.g().dot(links[n].lambda * f);
    }
    return h;
}

/// N x M matrix whose column m is the effective channel to eavesdropper antenna m.
inline CMat effective_channel_matrix(const std::vector<std::vector<PolarizedLink>>& grid,
                                     const TerminalPolarization& g, const PhaseShiftVector& psv,
                                     int antennas) {
    if (antennas < 1 || antennas > static_cast<int>(grid.size()))
        throw ContractViolation("effective_channel_matrix: antenna count out of range");
    CMat h(psv.size(), antennas);
    for (int m = 0; m < antennas; ++m) h.col(m) = effective_channel(grid[m], g, psv);
    return h;
}

/// Channel estimate under relative error: each entry becomes
/// Lambda_ij - |Lambda_ij| e with e ~ CN(0, xi). Zero entries are passed
/// through. The error draws are consumed for every entry regardless of xi,
/// so runs at different xi share the same underlying noise.
inline std::vector<PolarizedLink> perturb_eve_links(const std::vector<PolarizedLink>& links, double xi,
                                                    RngStream& rng) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw ContractViolation("error variance must be finite and >= 0");
    const double scale = std::sqrt(xi);
    std::vector<PolarizedLink> out = links;
    for (auto& link : out)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i) {
                const Complex e = scale * rng.complex_normal(1.0);
                const double mag = std::abs(link.lambda(i, j));
                if (mag == 0.0) continue;
                link.lambda(i, j) -= mag * e;
            }
    return out;
}

/// Draws one realization for `trial`: N user links from the user-link stream,
/// then M x N eavesdropper links antenna-major from the eve-link stream, so the
/// first eavesdropper antenna is identical for every M.
inline ChannelSet gen_channel_set(const ScenarioConfig& cfg, std::uint64_t trial) {
    validate(cfg);
    ChannelSet set{{}, {}, TerminalPolarization(cfg.g_user), TerminalPolarization(cfg.g_eve)};
    RngStream user_rng(cfg.seed, trial, StreamPurpose::UserLinks);
    RngStream eve_rng(cfg.seed, trial, StreamPurpose::EveLinks);
    set.user_links.reserve(cfg.n);
    for (int i = 0; i < cfg.n; ++i) set.user_links.push_back(gen_polarized_link(cfg.chi_user, user_rng));
    set.eve_links.resize(cfg.m);
    for (int m = 0; m < cfg.m; ++m) {
        set.eve_links[m].reserve(cfg.n);
        for (int i = 0; i < cfg.n; ++i) set.eve_links[m].push_back(gen_polarized_link(cfg.chi_eve, eve_rng));
    }
    return set;
}

}  // namespace polarsec
