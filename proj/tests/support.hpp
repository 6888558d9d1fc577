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
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "polarsec/ao.hpp"
#include "polarsec/channel.hpp"
#include "polarsec/config.hpp"
#include "polarsec/linalg.hpp"
#include "polarsec/sdp.hpp"

// Random instances and reference solvers shared by the unit and acceptance tests.
// The reference solvers do not call into the library's solvers.

namespace polarsec::testing {

using Rng = std::mt19937_64;

inline Complex cnormal(Rng& rng) {
    std::normal_distribution<double> nd;
    const double a = nd(rng);
    const double b = nd(rng);
    return {a, b};
}

inline CVec random_cvec(Eigen::Index n, Rng& rng) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal(rng);
    return v;
}

inline CMat random_cmat(Eigen::Index r, Eigen::Index c, Rng& rng) {
    CMat m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = cnormal(rng);
    return m;
}

inline CMat random_hermitian(Eigen::Index n, Rng& rng) {
    const CMat a = random_cmat(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline CMat random_hpd(Eigen::Index n, Rng& rng) {
    const CMat a = random_cmat(n, n, rng);
    return a * a.adjoint() + 0.5 * CMat::Identity(n, n);
}

/// Uniform direction, radius^2 uniform in [0, p_max].
inline CVec random_feasible_beamformer(Eigen::Index n, double p_max, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CVec w = random_cvec(n, rng);
    return w.normalized() * std::sqrt(p_max * u(rng));
}

/// Certified bracket [lower, upper] on the optimum of a max-form SDP.
struct DualBracket {
    double upper = 0.0;
    double lower = 0.0;
    int iterations = 0;
};

/// Minimizes the exact-penalty dual  b^T y + K * max(0, lambda_max(C - sum_i y_i A_i))
/// with the central-cut ellipsoid method, using only function values and
/// subgradients. K must bound tr(X) for some optimal X. Each step yields the
/// lower bound f(y_k) - ||B_k^T g_k||.
inline DualBracket dual_ellipsoid(const SdpProblem& p, double k_trace, double radius, double tol,
                                  int max_iters) {
    const int m = static_cast<int>(p.constraints.size());
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b(i) = p.constraints[i].b;
    Eigen::MatrixXd factor = Eigen::MatrixXd::Identity(m, m) * radius;
    const double n = m;
    // For m = 1 the ellipsoid degenerates to bisection.
    const double a = m > 1 ? n / std::sqrt(n * n - 1.0) : 1.0;
    const double c = m > 1 ? n / (n + 1.0) - a : -0.5;
    DualBracket out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0};
    for (int k = 0; k < max_iters; ++k) {
        CMat s = p.objective;
        for (int i = 0; i < m; ++i) s -= y(i) * p.constraints[i].a;
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (s + s.adjoint()));
        const Eigen::Index last = s.rows() - 1;
        const double lmax = es.eigenvalues()(last);
        const double value = b.dot(y) + k_trace * std::max(0.0, lmax);
        Eigen::VectorXd g = b;
        if (lmax > 0.0) {
            const CVec v = es.eigenvectors().col(last);
            for (int i = 0; i < m; ++i) g(i) -= k_trace * v.dot(p.constraints[i].a * v).real();
        }
        const Eigen::VectorXd bt = factor.transpose() * g;
        const double width = bt.norm();
        out.upper = std::min(out.upper, value);
        out.lower = std::max(out.lower, value - width);
        out.iterations = k + 1;
        if (out.upper - out.lower <= tol || width == 0.0) break;
        const Eigen::VectorXd dir = bt / width;
        const Eigen::VectorXd step = factor * dir;
        y -= step / (n + 1.0);
        factor = a * factor + c * step * dir.transpose();
    }
    return out;
}

/// Single-antenna rate written out from scratch: g^H Lambda [1, e^{j theta}]^T / sqrt(2).
inline Complex scalar_channel(const PolarizedLink& link, const Eigen::Vector2cd& g, double theta) {
    const Eigen::Vector2cd f = Eigen::Vector2cd(1.0, std::polar(1.0, theta)) / std::numbers::sqrt2;
    return g.dot(link.lambda * f);
}

/// N = 1 exhaustive search: theta on a uniform grid, full-power scalar
/// beamforming (any phase). Returns the best secrecy rate and its ratio.
struct GridOptimum {
    double rate = 0.0;
    double ratio = 0.0;
    double theta = 0.0;
};

inline GridOptimum grid_optimum_n1(const ChannelSet& ch, double sigma2, double p_max, int points) {
    GridOptimum best{0.0, 0.0, 0.0};
    for (int i = 0; i < points; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / points;
        const double gu = p_max * std::norm(scalar_channel(ch.user_links[0], ch.g_user.g(), theta)) / sigma2;
        const double ge = p_max * std::norm(scalar_channel(ch.eve_links[0][0], ch.g_eve.g(), theta)) / sigma2;
        const double ratio = (1.0 + gu) / (1.0 + ge);
        if (ratio > best.ratio) best = {std::max(0.0, std::log2(ratio)), ratio, theta};
    }
    return best;
}

inline bool non_decreasing(const std::vector<double>& seq, double tol) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] < seq[i - 1] - tol) return false;
    return true;
}

/// Rate sequence of an AO trace in evaluation order: after beamforming, after polarforming, ...
inline std::vector<double> interleaved_rates(const AoTrace& t) {
    std::vector<double> seq;
    for (const auto& it : t.iterations) {
        seq.push_back(it.rate_after_beamforming);
        seq.push_back(it.rate_after_polarforming);
    }
    return seq;
}

inline std::vector<double> polarforming_rates(const AoTrace& t) {
    std::vector<double> seq;
    for (const auto& it : t.iterations) seq.push_back(it.rate_after_polarforming);
    return seq;
}

}  // namespace polarsec::testing
