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

#include <algorithm>
#include <cmath>

#include "polarsec/errors.hpp"
#include "polarsec/linalg.hpp"

namespace polarsec {

/// Rates in bps/Hz. secrecy_rate = max(user_rate - eve_rate, 0).
struct RatePair {
    double secrecy_rate = 0.0;
    double eve_rate = 0.0;
    double user_rate = 0.0;
};

namespace detail {

inline RatePair make_rate_pair(double user_gain, double eve_gain) {
    RatePair r;
    r.user_rate = std::log2(1.0 + user_gain);
    r.eve_rate = std::log2(1.0 + eve_gain);
    r.secrecy_rate = std::max(r.user_rate - r.eve_rate, 0.0);
    return r;
}

inline void require_noise(double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ContractViolation("noise power must be finite and > 0");
}

}  // namespace detail

/// Secrecy rate with distinct noise powers at the user and the eavesdropper.
inline RatePair secrecy_rate(const CVec& h_user, const CVec& h_eve, const CVec& w, double sigma2_user,
                             double sigma2_eve) {
    if (h_user.size() != w.size() || h_eve.size() != w.size())
        throw ContractViolation("secrecy_rate: dimension mismatch");
    detail::require_noise(sigma2_user);
    detail::require_noise(sigma2_eve);
    return detail::make_rate_pair(std::norm(h_user.dot(w)) / sigma2_user, std::norm(h_eve.dot(w)) / sigma2_eve);
}

inline RatePair secrecy_rate(const CVec& h_user, const CVec& h_eve, const CVec& w, double sigma2) {
    return secrecy_rate(h_user, h_eve, w, sigma2, sigma2);
}

/// Eavesdropper combines its M antennas by MRC: eve SNR = ||H_E^H w||^2 / sigma2.
inline RatePair secrecy_rate_mrc(const CVec& h_user, const CMat& h_eve, const CVec& w, double sigma2) {
    if (h_user.size() != w.size() || h_eve.rows() != w.size() || h_eve.cols() < 1)
        throw ContractViolation("secrecy_rate_mrc: dimension mismatch");
    detail::require_noise(sigma2);
    const CVec leak = h_eve.adjoint() * w;
    return detail::make_rate_pair(std::norm(h_user.dot(w)) / sigma2, leak.squaredNorm() / sigma2);
}

/// |h_U^H h_E| / (||h_U|| ||h_E||).
inline double cross_correlation(const CVec& h_user, const CVec& h_eve) {
    if (h_user.size() != h_eve.size()) throw ContractViolation("cross_correlation: dimension mismatch");
    const double nu = h_user.norm();
    const double ne = h_eve.norm();
    if (nu == 0.0 || ne == 0.0) throw ContractViolation("cross_correlation: zero-norm channel");
    return std::min(1.0, std::abs(h_user.dot(h_eve)) / (nu * ne));
}

/// ||h_U^H H_E||_2 / (||h_U|| ||H_E||_F).
inline double cross_correlation(const CVec& h_user, const CMat& h_eve) {
    if (h_user.size() != h_eve.rows() || h_eve.cols() < 1)
        throw ContractViolation("cross_correlation: dimension mismatch");
    const double nu = h_user.norm();
    const double ne = h_eve.norm();
    if (nu == 0.0 || ne == 0.0) throw ContractViolation("cross_correlation: zero-norm channel");
    const CVec proj = h_eve.adjoint() * h_user;
    return std::min(1.0, proj.norm() / (nu * ne));
}

}  // namespace polarsec
