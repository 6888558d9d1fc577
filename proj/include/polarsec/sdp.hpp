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
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polarsec/errors.hpp"
#include "polarsec/linalg.hpp"

// Dense primal-dual interior-point solver for small complex Hermitian SDPs:
//
//   maximize tr(C X)  s.t.  tr(A_i X) = b_i,  X >= 0.
//
// The complex problem is mapped onto the real symmetric cone of twice the order,
// X -> [[Re X, -Im X], [Im X, Re X]], and solved there with Nesterov-Todd
// scaling and a Mehrotra predictor-corrector step. Orders of a few dozen are
// the intended range; every iteration is O(n^3 m + n^2 m^2).

namespace polarsec {

struct SdpConstraint {
    CMat a;
    double b = 0.0;
};

struct SdpProblem {
    int dim = 0;
    CMat objective;
    std::vector<SdpConstraint> constraints;
};

struct SdpSolution {
    CMat x;
    RVec y;  // multipliers of the dual: minimize b^T y s.t. sum y_i A_i - C >= 0
    double objective_value = 0.0;
    double dual_value = 0.0;
    double duality_gap = 0.0;
    double feas_residual = 0.0;  // max_i |tr(A_i X) - b_i|
    double dual_residual = 0.0;  // max entry of |sum y_i A_i - C - Z|
    int iterations = 0;
};

struct SdpSettings {
    // Target accuracy. The loop keeps iterating until these are met.
    double gap_tol = 1e-9;
    double feas_tol = 1e-9;
    // If progress stalls (factorization breakdown or iteration cap) the
    // current iterate is still returned when it meets these.
    double accept_gap_tol = 1e-6;
    double accept_feas_tol = 1e-7;
    int max_iters = 200;
    double step_fraction = 0.98;
    double divergence_limit = 1e12;
};

namespace sdp_detail {

using RMat = Eigen::MatrixXd;

inline RMat embed(const CMat& a) {
    const Eigen::Index d = a.rows();
    RMat out(2 * d, 2 * d);
    out.topLeftCorner(d, d) = a.real();
    out.topRightCorner(d, d) = -a.imag();
    out.bottomLeftCorner(d, d) = a.imag();
    out.bottomRightCorner(d, d) = a.real();
    return out;
}

/// Inverse of embed, averaged over the two copies (also projects an
/// unstructured symmetric matrix onto the embedded subspace).
inline CMat collapse(const RMat& y) {
    const Eigen::Index d = y.rows() / 2;
    CMat out(d, d);
    out.real() = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
    out.imag() = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
    return 0.5 * (out + out.adjoint());
}

inline double inner(const RMat& a, const RMat& b) { return a.cwiseProduct(b).sum(); }

inline RMat sym(const RMat& a) { return 0.5 * (a + a.transpose()); }

/// Largest alpha with x + alpha * dx still PSD, given chol(x) = L L^T.
inline double max_step(const Eigen::LLT<RMat>& chol, const RMat& dx) {
    const auto l = chol.matrixL();
    RMat t = l.solve(dx);
    t = l.solve(t.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<RMat> es(sym(t), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

/// min(1, fraction * max_step). A Cholesky test at the full step avoids the
/// eigenvalue computation whenever the full step stays interior.
inline double step_length(const RMat& x, const Eigen::LLT<RMat>& chol, const RMat& dx, double fraction) {
    const Eigen::LLT<RMat> trial(x + dx / fraction);
    if (trial.info() == Eigen::Success) return 1.0;
    return std::min(1.0, fraction * max_step(chol, dx));
}

inline bool trace_enabled() {
    const char* v = std::getenv("POLARSEC_SDP_TRACE");
    return v != nullptr && std::strcmp(v, "1") == 0;
}

inline void validate(const SdpProblem& p) {
    if (p.dim < 1) throw ContractViolation("sdp_solve: dimension must be >= 1");
    if (p.constraints.empty()) throw ContractViolation("sdp_solve: constraint list is empty");
    if (p.objective.rows() != p.dim) throw ContractViolation("sdp_solve: objective has wrong order");
    require_hermitian(p.objective, "sdp_solve(objective)");
    for (const auto& c : p.constraints) {
        if (c.a.rows() != p.dim) throw ContractViolation("sdp_solve: constraint has wrong order");
        require_hermitian(c.a, "sdp_solve(constraint)");
        if (!std::isfinite(c.b)) throw ContractViolation("sdp_solve: non-finite right-hand side");
    }
}

/// Constraint matrix on the real embedding, with a triplet list when sparse.
struct RealOperator {
    RMat dense;
    std::vector<Eigen::Triplet<double>> entries;
    bool sparse = false;

    explicit RealOperator(RMat m) : dense(std::move(m)) {
        const Eigen::Index nnz = (dense.array() != 0.0).count();
        if (nnz <= dense.rows()) {
            sparse = true;
            for (Eigen::Index j = 0; j < dense.cols(); ++j)
                for (Eigen::Index i = 0; i < dense.rows(); ++i)
                    if (dense(i, j) != 0.0) entries.emplace_back(i, j, dense(i, j));
        }
    }

    double inner(const RMat& x) const {
        if (!sparse) return dense.cwiseProduct(x).sum();
        double acc = 0.0;
        for (const auto& e : entries) acc += e.value() * x(e.row(), e.col());
        return acc;
    }

    void add_to(RMat& out, double scale) const {
        if (!sparse) {
            out += scale * dense;
            return;
        }
        for (const auto& e : entries) out(e.row(), e.col()) += scale * e.value();
    }
};

/// tr(A W B W) for symmetric W, using triplets when both operands are sparse.
inline double scaled_inner(const RealOperator& a, const RealOperator& b, const RMat& w) {
    double acc = 0.0;
    for (const auto& ea : a.entries)
        for (const auto& eb : b.entries) acc += ea.value() * eb.value() * w(ea.col(), eb.row()) * w(eb.col(), ea.row());
    return acc;
}

}  // namespace sdp_detail

inline SdpSolution sdp_solve(const SdpProblem& problem, const SdpSettings& settings = {}) {
    using namespace sdp_detail;
    validate(problem);

    const int m = static_cast<int>(problem.constraints.size());
    const Eigen::Index n = 2 * problem.dim;

    // Minimization form on the real embedding; the 1/2 keeps <A_hat, embed(X)> = tr(A X).
    const RMat c = -0.5 * embed(problem.objective);
    std::vector<RealOperator> a;
    a.reserve(m);
    RVec b(m);
    for (int i = 0; i < m; ++i) {
        a.emplace_back(0.5 * embed(problem.constraints[i].a));
        b(i) = problem.constraints[i].b;
    }
    auto apply_a = [&](const RMat& x) {
        RVec out(m);
        for (int i = 0; i < m; ++i) out(i) = a[i].inner(x);
        return out;
    };
    auto apply_at = [&](const RVec& y) {
        RMat out = RMat::Zero(n, n);
        for (int i = 0; i < m; ++i) a[i].add_to(out, y(i));
        return out;
    };

    // Start point scaled to the data.
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    double primal_scale = 0.0;
    double dual_scale = c.norm();
    for (int i = 0; i < m; ++i) {
        primal_scale = std::max(primal_scale, (1.0 + std::abs(b(i))) / (1.0 + a[i].dense.norm()));
        dual_scale = std::max(dual_scale, a[i].dense.norm());
    }
    RMat x = std::max({10.0, sqrt_n, sqrt_n * primal_scale}) * RMat::Identity(n, n);
    RMat z = std::max({10.0, sqrt_n, dual_scale}) * RMat::Identity(n, n);
    RVec y = RVec::Zero(m);

    const bool trace = trace_enabled();
    const RMat identity = RMat::Identity(n, n);

    double pobj = 0.0, dobj = 0.0, rel_gap = INFINITY, pinf = INFINITY, dinf = INFINITY;
    int iter = 0;
    bool converged = false;
    for (;; ++iter) {
        const RVec rp = b - apply_a(x);
        const RMat rd = c - apply_at(y) - z;
        pobj = inner(c, x);
        dobj = b.dot(y);
        rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
        pinf = rp.cwiseAbs().maxCoeff();
        dinf = rd.cwiseAbs().maxCoeff();
        if (trace) {
            std::clog << "sdp iter " << std::setw(3) << iter << std::scientific << std::setprecision(6)
                      << " pobj " << -pobj << " dobj " << -dobj << " gap " << rel_gap << " pinf " << pinf
                      << " dinf " << dinf << " mu " << inner(x, z) / static_cast<double>(n) << '\n'
                      << std::defaultfloat;
        }
        if (rel_gap <= settings.gap_tol && pinf <= settings.feas_tol && dinf <= settings.feas_tol) {
            converged = true;
            break;
        }
        if (iter >= settings.max_iters) break;
        if (y.cwiseAbs().maxCoeff() > settings.divergence_limit || x.trace() > settings.divergence_limit) {
            std::ostringstream os;
            os << "sdp_solve: iterates diverge after " << iter
               << " iterations; problem is infeasible or unbounded";
            throw InfeasibleError(os.str());
        }

        const double mu = inner(x, z) / static_cast<double>(n);
        const Eigen::LLT<RMat> chol_x(x);
        const Eigen::LLT<RMat> chol_z(z);
        if (chol_x.info() != Eigen::Success || chol_z.info() != Eigen::Success) break;

        // Nesterov-Todd scaling: G^{-1} X G^{-T} = G^T Z G = V diagonal, W = G G^T.
        // With K = L_Z^T L_X = U V Q^T, G = L_X Q V^{-1/2}; Q and V^2 come from
        // the eigendecomposition of K^T K = L_X^T Z L_X, whose spectrum (that of
        // XZ) stays clustered near mu on the central path.
        const RMat lx = chol_x.matrixL();
        const RMat ktk = sym(lx.transpose() * z * lx);
        const Eigen::SelfAdjointEigenSolver<RMat> ks(ktk);
        if (ks.info() != Eigen::Success || !(ks.eigenvalues().minCoeff() > 0.0)) break;
        const RVec v = ks.eigenvalues().cwiseSqrt();
        const RMat& q = ks.eigenvectors();
        const RMat g = lx * q * v.cwiseSqrt().cwiseInverse().asDiagonal();
        const RMat g_inv = v.cwiseSqrt().asDiagonal() * q.transpose() *
                           lx.triangularView<Eigen::Lower>().solve(identity);
        const RMat w = g * g.transpose();

        RMat schur(m, m);
        for (int j = 0; j < m; ++j) {
            if (a[j].sparse) continue;
            const RMat waw = w * a[j].dense * w;
            for (int i = 0; i < m; ++i) schur(i, j) = schur(j, i) = a[i].inner(waw);
        }
        for (int j = 0; j < m; ++j) {
            if (!a[j].sparse) continue;
            for (int i = 0; i <= j; ++i)
                if (a[i].sparse) schur(i, j) = schur(j, i) = scaled_inner(a[i], a[j], w);
        }
        const Eigen::LLT<RMat> chol_m(schur);
        if (chol_m.info() != Eigen::Success) break;

        const RVec a_wrdw = apply_a(w * rd * w);
        auto direction = [&](const RMat& gdgt, RMat& dx, RVec& dy, RMat& dz) {
            dy = chol_m.solve(rp - apply_a(gdgt) + a_wrdw);
            dz = rd - apply_at(dy);
            dx = sym(gdgt - w * dz * w);
        };

        // Predictor (affine scaling): G D G^T = -X.
        RMat dx, dz;
        RVec dy;
        direction(-x, dx, dy, dz);
        const double ap_aff = step_length(x, chol_x, dx, 1.0);
        const double ad_aff = step_length(z, chol_z, dz, 1.0);
        const double mu_aff = inner(x + ap_aff * dx, z + ad_aff * dz) / static_cast<double>(n);
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        // Corrector in the scaled space: V D + D V = 2 sigma mu I - 2 V^2 - (dX' dZ' + dZ' dX').
        const RMat dxs = g_inv * dx * g_inv.transpose();
        const RMat dzs = g.transpose() * dz * g;
        RMat rc = -(dxs * dzs + dzs * dxs);
        for (Eigen::Index i = 0; i < n; ++i) rc(i, i) += 2.0 * sigma * mu - 2.0 * v(i) * v(i);
        RMat d(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) d(i, j) = rc(i, j) / (v(i) + v(j));
        direction(sym(g * d * g.transpose()), dx, dy, dz);

        const double ap = step_length(x, chol_x, dx, settings.step_fraction);
        const double ad = step_length(z, chol_z, dz, settings.step_fraction);
        if (!(ap > 0.0) || !(ad > 0.0) || !dx.allFinite() || !dz.allFinite()) break;
        x = sym(x + ap * dx);
        y += ad * dy;
        z = sym(z + ad * dz);
    }

    if (!converged &&
        !(rel_gap <= settings.accept_gap_tol && pinf <= settings.accept_feas_tol && dinf <= settings.accept_feas_tol)) {
        std::ostringstream os;
        os << "sdp_solve: no convergence after " << iter << " iterations (relative gap " << rel_gap
           << ", primal residual " << pinf << ", dual residual " << dinf << ")";
        throw NonConvergenceError(os.str(), iter, rel_gap, std::max(pinf, dinf));
    }

    SdpSolution sol;
    sol.x = collapse(x);
    sol.y = -y;
    sol.iterations = iter;
    sol.objective_value = (problem.objective.cwiseProduct(sol.x.conjugate())).sum().real();
    sol.dual_value = -dobj;
    sol.duality_gap = std::abs(sol.dual_value - sol.objective_value);
    double res = 0.0;
    for (const auto& con : problem.constraints)
        res = std::max(res, std::abs(con.a.cwiseProduct(sol.x.conjugate()).sum().real() - con.b));
    sol.feas_residual = res;
    sol.dual_residual = dinf;
    return sol;
}

}  // namespace polarsec
