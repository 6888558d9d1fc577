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

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "polarsec/errors.hpp"

namespace polarsec {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kDefiniteFloor = 1e-12;

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascend; columns
/// of `vectors` are orthonormal and phase-normalized (see normalize_phase).
struct HermEigen {
    RVec values;
    CMat vectors;
};

inline bool all_finite(const CMat& a) {
    return a.allFinite();
}

/// Largest |A_ij - conj(A_ji)|.
inline double hermitian_deviation(const CMat& a) {
    if (a.rows() != a.cols()) return INFINITY;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const CMat& a, const char* who) {
    if (a.rows() != a.cols()) {
        std::ostringstream os;
        os << who << ": matrix is " << a.rows() << "x" << a.cols() << ", expected square";
        throw ContractViolation(os.str());
    }
    if (a.size() == 0) throw ContractViolation(std::string(who) + ": empty matrix");
    if (!all_finite(a)) throw ContractViolation(std::string(who) + ": non-finite entry");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double dev = hermitian_deviation(a);
    if (dev > kHermitianTol * scale) {
        std::ostringstream os;
        os << who << ": matrix is not Hermitian (deviation " << dev << ")";
        throw ContractViolation(os.str());
    }
}

/// Rotates `v` by a global phase so its largest-magnitude entry is real and
/// nonnegative. The first index wins ties.
inline void normalize_phase(Eigen::Ref<CVec> v) {
    if (v.size() == 0) return;
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    const double mag = std::abs(v(idx));
    if (mag == 0.0) return;
    v *= std::conj(v(idx)) / mag;
    v(idx) = Complex(std::abs(v(idx)), 0.0);
}

inline HermEigen herm_eig(const CMat& a) {
    require_hermitian(a, "herm_eig");
    const CMat sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(sym);
    if (es.info() != Eigen::Success) throw FactorizationError("herm_eig: eigensolver failed");
    HermEigen out{es.eigenvalues(), es.eigenvectors()};
    for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
        auto col = out.vectors.col(j);
        col.normalize();
        normalize_phase(col);
    }
    return out;
}

namespace detail {

inline bool lexicographically_greater_real(const CVec& a, const CVec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).real() > b(i).real()) return true;
        if (a(i).real() < b(i).real()) return false;
    }
    return false;
}

}  // namespace detail

/// Unit vector maximizing (v^H P v) / (v^H Q v).
///
/// Q is whitened by its Cholesky factor (Q = L L^H) and the Hermitian problem
/// L^{-1} P L^{-H} is solved instead of the non-Hermitian Q^{-1} P. When the top
/// eigenvalue is repeated, the candidate with the lexicographically largest
/// real part (after phase normalization) is returned.
inline CVec max_gen_eigvec(const CMat& p, const CMat& q) {
    require_hermitian(p, "max_gen_eigvec(P)");
    require_hermitian(q, "max_gen_eigvec(Q)");
    if (p.rows() != q.rows()) throw ContractViolation("max_gen_eigvec: P and Q differ in size");

    const HermEigen qe = herm_eig(q);
    if (!(qe.values(0) > kDefiniteFloor)) {
        std::ostringstream os;
        os << "max_gen_eigvec: Q is not positive definite (minimum eigenvalue " << qe.values(0)
           << ")";
        throw FactorizationError(os.str());
    }

    const Eigen::LLT<CMat> llt(0.5 * (q + q.adjoint()));
    if (llt.info() != Eigen::Success) throw FactorizationError("max_gen_eigvec: Cholesky of Q failed");
    const auto lower = llt.matrixL();
    // M = L^{-1} P L^{-H}
    CMat tmp = lower.solve(p);
    CMat m = lower.solve(tmp.adjoint()).adjoint();
    m = 0.5 * (m + m.adjoint()).eval();

    const HermEigen me = herm_eig(m);
    const Eigen::Index n = m.rows();
    const double top = me.values(n - 1);
    const double tie_tol = 1e-12 * std::max(1.0, std::abs(top));

    CVec best;
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        if (top - me.values(j) > tie_tol) break;
        CVec v = llt.matrixU().solve(me.vectors.col(j));
        v.normalize();
        normalize_phase(v);
        if (best.size() == 0 || detail::lexicographically_greater_real(v, best)) best = v;
    }
    return best;
}

/// Solves A x = b for Hermitian positive definite A by Cholesky.
inline CVec solve_hpd(const CMat& a, const CVec& b) {
    require_hermitian(a, "solve_hpd");
    if (b.size() != a.rows()) throw ContractViolation("solve_hpd: right-hand side has wrong length");
    const Eigen::LLT<CMat> llt(0.5 * (a + a.adjoint()));
    if (llt.info() != Eigen::Success) throw FactorizationError("solve_hpd: matrix is not positive definite");
    CVec x = llt.solve(b);
    if (!x.allFinite()) throw FactorizationError("solve_hpd: non-finite solution");
    return x;
}

/// Generalized Rayleigh quotient (v^H P v)/(v^H Q v).
inline double rayleigh_quotient(const CMat& p, const CMat& q, const CVec& v) {
    return (v.dot(p * v)).real() / (v.dot(q * v)).real();
}

}  // namespace polarsec
