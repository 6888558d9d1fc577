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
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "polarsec/beamforming.hpp"
#include "polarsec/channel.hpp"
#include "polarsec/errors.hpp"
#include "polarsec/linalg.hpp"
#include "polarsec/rng.hpp"
#include "polarsec/sdp.hpp"

// Polarforming step for a fixed beamformer w.
//
// With b_n = Lambda_n^H g and B = blkdiag(b_1, ..., b_N) (2N x N), the channel
// becomes h(phi) = B^H e^{j phi} / sqrt(2) where phi holds two phases per PRA
// and theta_n = phi_{2n} - phi_{2n-1}. Entry n of h(phi) equals
// e^{j phi_{2n-1}} h_n(theta), so the per-PRA reference phase acts as a
// unit-modulus rotation of w_n; it is returned alongside the PSV and folded
// into the beamformer by the caller.

namespace polarsec {

/// D_I = B_I w w^H B_I^H / (2 sigma^2) and the stacking matrices B_I.
struct LiftedProblem {
    CMat d_user;
    CMat d_eve;
    CMat b_user;
    CMat b_eve;

    int n() const { return static_cast<int>(b_user.cols()); }
};

/// Lifted phases for a PSV with zero reference phase: phi = [0, theta_1, 0, theta_2, ...].
inline RVec lift_phases(const PhaseShiftVector& psv) {
    RVec phi = RVec::Zero(2 * psv.size());
    for (int n = 0; n < psv.size(); ++n) phi(2 * n + 1) = psv[n];
    return phi;
}

inline CVec unit_modulus(const RVec& phi) {
    CVec f(phi.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) f(i) = std::polar(1.0, phi(i));
    return f;
}

/// Objective of the lifted problem: (f^H D_U f + 1) / (f^H D_E f + 1) with f = e^{j phi}.
inline double lifted_objective(const LiftedProblem& lp, const CVec& f) {
    return (f.dot(lp.d_user * f).real() + 1.0) / (f.dot(lp.d_eve * f).real() + 1.0);
}

inline double lifted_objective(const LiftedProblem& lp, const RVec& phi) {
    return lifted_objective(lp, unit_modulus(phi));
}

namespace detail {

inline CMat stacking_matrix(const std::vector<PolarizedLink>& links, const TerminalPolarization& g) {
    const Eigen::Index n = static_cast<Eigen::Index>(links.size());
    CMat b = CMat::Zero(2 * n, n);
    for (Eigen::Index i = 0; i < n; ++i) b.block(2 * i, i, 2, 1) = links[i].lambda.adjoint() * g.g();
    return b;
}

inline void check_lifted_identity(const CMat& b, const std::vector<PolarizedLink>& links,
                                  const TerminalPolarization& g) {
    const int n = static_cast<int>(links.size());
    RVec probe(n);
    for (int i = 0; i < n; ++i) probe(i) = 2.399963229728653 * (i + 1);  // golden angle steps
    const PhaseShiftVector psv(probe);
    const CVec direct = effective_channel(links, g, psv);
    const CVec lifted = b.adjoint() * unit_modulus(lift_phases(psv)) / std::numbers::sqrt2;
    const double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
    if ((direct - lifted).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::logic_error("build_lifted: lifted channel does not reproduce the direct channel");
}

}  // namespace detail

inline LiftedProblem build_lifted(const std::vector<PolarizedLink>& user_links,
                                  const std::vector<PolarizedLink>& eve_links, const TerminalPolarization& g_user,
                                  const TerminalPolarization& g_eve, const CVec& w, double sigma2) {
    if (user_links.empty() || user_links.size() != eve_links.size() ||
        static_cast<Eigen::Index>(user_links.size()) != w.size())
        throw ContractViolation("build_lifted: dimension mismatch");
    if (!(sigma2 > 0.0)) throw ContractViolation("build_lifted: noise power must be > 0");
    LiftedProblem lp;
    lp.b_user = detail::stacking_matrix(user_links, g_user);
    lp.b_eve = detail::stacking_matrix(eve_links, g_eve);
    detail::check_lifted_identity(lp.b_user, user_links, g_user);
    detail::check_lifted_identity(lp.b_eve, eve_links, g_eve);
    const CVec bu = lp.b_user * w;
    const CVec be = lp.b_eve * w;
    lp.d_user = bu * bu.adjoint() / (2.0 * sigma2);
    lp.d_eve = be * be.adjoint() / (2.0 * sigma2);
    return lp;
}

/// Uses the first eavesdropper antenna.
inline LiftedProblem build_lifted(const ChannelSet& channels, const Beamformer& bf, double sigma2) {
    if (channels.m() < 1) throw ContractViolation("build_lifted: channel set has no eavesdropper antenna");
    return build_lifted(channels.user_links, channels.eve_antenna(0), channels.g_user, channels.g_eve, bf.w,
                        sigma2);
}

/// Relaxed (rank-free) solution F with unit diagonal, recovered as S / mu.
struct RelaxedSolution {
    CMat f;
    double mu = 0.0;
    double relaxed_objective = 0.0;  // (tr(D_U F) + 1) / (tr(D_E F) + 1)
    double dual_bound = 0.0;         // dual objective of the homogenized SDP
    int sdp_iterations = 0;
};

/// Homogenized SDP over blkdiag(S, mu):
///   maximize tr(D_U S) + mu  s.t.  tr(D_E S) + mu = 1,  S_ll = mu for every l.
inline SdpProblem homogenized_sdp(const LiftedProblem& lp) {
    const Eigen::Index d = lp.d_user.rows();
    SdpProblem p;
    p.dim = static_cast<int>(d + 1);
    p.objective = CMat::Zero(d + 1, d + 1);
    p.objective.topLeftCorner(d, d) = lp.d_user;
    p.objective(d, d) = 1.0;

    SdpConstraint normalization{CMat::Zero(d + 1, d + 1), 1.0};
    normalization.a.topLeftCorner(d, d) = lp.d_eve;
    normalization.a(d, d) = 1.0;
    p.constraints.push_back(std::move(normalization));
    for (Eigen::Index l = 0; l < d; ++l) {
        SdpConstraint diag{CMat::Zero(d + 1, d + 1), 0.0};
        diag.a(l, l) = 1.0;
        diag.a(d, d) = -1.0;
        p.constraints.push_back(std::move(diag));
    }
    return p;
}

inline RelaxedSolution charnes_cooper_sdp(const LiftedProblem& lp, const SdpSettings& settings = {}) {
    const Eigen::Index d = lp.d_user.rows();
    if (d < 2 || lp.d_eve.rows() != d) throw ContractViolation("charnes_cooper_sdp: malformed lifted problem");
    const SdpSolution sol = sdp_solve(homogenized_sdp(lp), settings);
    RelaxedSolution rs;
    rs.mu = sol.x(d, d).real();
    if (!(rs.mu > 1e-12)) {
        std::ostringstream os;
        os << "charnes_cooper_sdp: degenerate solution with mu = " << rs.mu;
        throw DegenerateSolutionError(os.str());
    }
    rs.f = sol.x.topLeftCorner(d, d) / rs.mu;
    rs.relaxed_objective = ((lp.d_user * rs.f).trace().real() + 1.0) / ((lp.d_eve * rs.f).trace().real() + 1.0);
    rs.dual_bound = sol.dual_value;
    rs.sdp_iterations = sol.iterations;
    return rs;
}

struct PolarformingResult {
    PhaseShiftVector psv;
    RVec reference_phases;  // phi_{2n-1}; rotate w_n by e^{-j ref_n} to realize the objective with psv
    double achieved_objective = 0.0;
    double upper_bound = 0.0;
};

inline constexpr int kDefaultRandomizations = 200;

namespace detail {

inline RVec phases_of(const CVec& x) {
    RVec phi(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) phi(i) = std::abs(x(i)) == 0.0 ? 0.0 : std::arg(x(i));
    return phi;
}

}  // namespace detail

/// Recovers a PSV from the relaxed solution. Candidates, in order: the
/// incumbent PSV, the phases of F's principal eigenvector, and the phases of
/// U Sigma^{1/2} r_k for L standard complex Gaussian r_k. The first candidate
/// with the largest lifted objective wins, so the result never scores below
/// the incumbent.
inline PolarformingResult gaussian_randomization(const RelaxedSolution& rs, const LiftedProblem& lp,
                                                 const PhaseShiftVector& incumbent, int count, RngStream& rng) {
    if (count < 1) throw ContractViolation("gaussian_randomization: candidate count must be >= 1");
    const int n = lp.n();
    if (incumbent.size() != n || rs.f.rows() != 2 * n)
        throw ContractViolation("gaussian_randomization: dimension mismatch");

    RVec best_phi = lift_phases(incumbent);
    double best = lifted_objective(lp, best_phi);
    auto consider = [&](const RVec& phi) {
        const double value = lifted_objective(lp, phi);
        if (value > best) {
            best = value;
            best_phi = phi;
        }
    };

    const HermEigen eig = herm_eig(0.5 * (rs.f + rs.f.adjoint()));
    const Eigen::Index d = 2 * n;
    consider(detail::phases_of(eig.vectors.col(d - 1)));

    const CMat factor = eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    CVec r(d);
    for (int k = 0; k < count; ++k) {
        for (Eigen::Index i = 0; i < d; ++i) r(i) = rng.complex_normal(1.0);
        consider(detail::phases_of(factor * r));
    }

    PolarformingResult out;
    RVec thetas(n);
    out.reference_phases.resize(n);
    for (int i = 0; i < n; ++i) {
        thetas(i) = best_phi(2 * i + 1) - best_phi(2 * i);
        out.reference_phases(i) = best_phi(2 * i);
    }
    out.psv = PhaseShiftVector(thetas);
    out.achieved_objective = best;
    out.upper_bound = rs.relaxed_objective;
    return out;
}

/// Applies the reference-phase rotation w_n -> e^{-j ref_n} w_n.
inline CVec rotate_beamformer(const CVec& w, const RVec& reference_phases) {
    CVec out(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) out(i) = std::polar(1.0, -reference_phases(i)) * w(i);
    return out;
}

}  // namespace polarsec
