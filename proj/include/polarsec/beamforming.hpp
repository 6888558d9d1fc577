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

#include "polarsec/errors.hpp"
#include "polarsec/linalg.hpp"

namespace polarsec {

struct Beamformer {
    CVec w;
    double p_max = 1.0;
};

/// A_U = h_U h_U^H / sigma2 and A_E = H_E H_E^H / sigma2 (H_E is N x M; a
/// single-antenna eavesdropper is the M = 1 case).
struct QuadraticFormPair {
    CMat user;
    CMat eve;
};

inline QuadraticFormPair make_quadratic_forms(const CVec& h_user, const CMat& h_eve, double sigma2) {
    if (h_eve.rows() != h_user.size()) throw ContractViolation("make_quadratic_forms: dimension mismatch");
    if (!(sigma2 > 0.0)) throw ContractViolation("make_quadratic_forms: noise power must be > 0");
    // Both forms use the user's noise power, as the beamforming subproblem is stated.
    return {(h_user * h_user.adjoint()) / sigma2, (h_eve * h_eve.adjoint()) / sigma2};
}

/// (w^H A_U w + 1) / (w^H A_E w + 1)
inline double beamforming_objective(const QuadraticFormPair& pair, const CVec& w) {
    return (w.dot(pair.user * w).real() + 1.0) / (w.dot(pair.eve * w).real() + 1.0);
}

/// Maximizer of the secrecy ratio under ||w||^2 <= p_max: sqrt(p_max) times
/// the top generalized eigenvector of (A_U + I/p_max, A_E + I/p_max).
inline Beamformer optimal_beamformer(const QuadraticFormPair& pair, double p_max) {
    if (!(p_max > 0.0)) throw ContractViolation("optimal_beamformer: power budget must be > 0");
    const Eigen::Index n = pair.user.rows();
    if (n < 1 || pair.eve.rows() != n) throw ContractViolation("optimal_beamformer: dimension mismatch");
    const CMat shift = CMat::Identity(n, n) / p_max;
    const CVec u = max_gen_eigvec(pair.user + shift, pair.eve + shift);
    return {std::sqrt(p_max) * u, p_max};
}

/// w = sqrt(p_max) h_U / ||h_U||
inline Beamformer mrt_beamformer(const CVec& h_user, double p_max) {
    if (!(p_max > 0.0)) throw ContractViolation("mrt_beamformer: power budget must be > 0");
    const double norm = h_user.norm();
    if (!(norm > 0.0)) throw ContractViolation("mrt_beamformer: zero user channel");
    return {std::sqrt(p_max) * h_user / norm, p_max};
}

}  // namespace polarsec
