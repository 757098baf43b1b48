// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risdet {

namespace {

double log_barrier_arg(const EpigraphConstraint& c, double tau) {
    return std::sqrt(2.0 * c.power * tau) - c.beta;
}

}  // namespace

double EpigraphConstraint::value(const CMatrix& W) const {
    double aff = offset;
    for (Eigen::Index k = 0; k < D.size(); ++k)
        aff += D(k) * std::real(Z.col(k).dot(W * Z.col(k)));
    if (kind == Kind::Affine) return aff;
    const double tau = std::real(h.dot(W * h));
    if (tau <= 0.0)
        throw std::domain_error("EpigraphConstraint: nonpositive LoS power");
    const double arg = log_barrier_arg(*this, tau);
    if (arg <= 0.0)
        throw std::domain_error("EpigraphConstraint: log argument nonpositive");
    return -std::log(arg) + aff;
}

bool EpigraphConstraint::in_domain(const CMatrix& W) const {
    if (kind == Kind::Affine) return true;
    const double tau = std::real(h.dot(W * h));
    return tau > 0.0 && log_barrier_arg(*this, tau) > 0.0;
}

MinMaxSdpSolver::MinMaxSdpSolver(CMatrix penalty,
                                 std::vector<EpigraphConstraint> constraints,
                                 SolverOptions options)
    : penalty_(std::move(penalty)), constraints_(std::move(constraints)),
      options_(options) {
    if (constraints_.empty())
        throw std::invalid_argument("MinMaxSdpSolver: no constraints");
}

namespace {

// All constraint factors flattened column-wise into one U x R matrix, so
// every Newton-step quantity reduces to a handful of medium matrix
// products instead of per-constraint small ones.
struct Flattened {
    CMatrix zall;                      // U x R
    std::vector<Eigen::Index> off;     // per constraint, into zall
    std::vector<Eigen::Index> width;
    std::vector<bool> logform;
    std::vector<std::size_t> log_idx;
};

Flattened flatten(const std::vector<EpigraphConstraint>& constraints,
                  Eigen::Index U) {
    Flattened f;
    const std::size_t Q = constraints.size();
    f.off.resize(Q);
    f.width.resize(Q);
    f.logform.resize(Q);
    Eigen::Index total = 0;
    for (std::size_t q = 0; q < Q; ++q) {
        const auto& c = constraints[q];
        f.logform[q] = c.kind == EpigraphConstraint::Kind::LogForm;
        f.off[q] = total;
        f.width[q] = c.D.size() + (f.logform[q] ? 1 : 0);
        total += f.width[q];
        if (f.logform[q]) f.log_idx.push_back(q);
    }
    f.zall.resize(U, total);
    for (std::size_t q = 0; q < Q; ++q) {
        const auto& c = constraints[q];
        Eigen::Index col = f.off[q];
        if (f.logform[q]) f.zall.col(col++) = c.h;
        if (c.D.size() > 0) f.zall.middleCols(col, c.D.size()) = c.Z;
    }
    return f;
}

struct SlackState {
    std::vector<double> slack, phi1, phi2;
    std::vector<Eigen::VectorXd> dvec;  // gradient coefficients, per block
    double mu_m = 0.0;
    bool ok = true;
};

/// Slacks and the log-form derivatives at (W, m), given the per-column
/// quadratic forms z_c^H W z_c.
SlackState slack_state(const std::vector<EpigraphConstraint>& constraints,
                       const Flattened& f, const Eigen::VectorXd& qforms,
                       double m, bool with_derivatives) {
    const std::size_t Q = constraints.size();
    SlackState s;
    s.slack.resize(Q);
    if (with_derivatives) {
        s.phi1.assign(Q, 0.0);
        s.phi2.assign(Q, 0.0);
        s.dvec.resize(Q);
    }
    for (std::size_t q = 0; q < Q; ++q) {
        const auto& c = constraints[q];
        Eigen::Index col = f.off[q];
        double g = c.offset;
        if (f.logform[q]) {
            const double tau = qforms(col++);
            if (tau <= 0.0) {
                s.ok = false;
                return s;
            }
            const double r = std::sqrt(2.0 * c.power * tau);
            const double arg = r - c.beta;
            if (arg <= 0.0) {
                s.ok = false;
                return s;
            }
            g -= std::log(arg);
            if (with_derivatives) {
                s.phi1[q] = -c.power / (r * arg);
                s.phi2[q] = c.power * c.power * (2.0 * r - c.beta) /
                            (r * (r * arg) * (r * arg));
            }
        }
        for (Eigen::Index k = 0; k < c.D.size(); ++k)
            g += c.D(k) * qforms(col + k);
        s.slack[q] = m - g;
        if (s.slack[q] <= 0.0) {
            s.ok = false;
            return s;
        }
        s.mu_m += 1.0 / (s.slack[q] * s.slack[q]);
        if (with_derivatives) {
            Eigen::VectorXd d(f.width[q]);
            if (f.logform[q]) {
                d(0) = s.phi1[q];
                d.tail(c.D.size()) = c.D;
            } else {
                d = c.D;
            }
            s.dvec[q] = std::move(d);
        }
    }
    return s;
}

Eigen::VectorXd column_qforms(const CMatrix& zall, const CMatrix& p) {
    Eigen::VectorXd qf(zall.cols());
    for (Eigen::Index c = 0; c < zall.cols(); ++c)
        qf(c) = std::real(zall.col(c).dot(p.col(c)));
    return qf;
}

}  // namespace

SolverResult MinMaxSdpSolver::solve(const CMatrix& W0) const {
    const Eigen::Index U = W0.rows();
    const std::size_t Q = constraints_.size();

    {
        std::vector<std::size_t> bad;
        for (std::size_t q = 0; q < Q; ++q)
            if (!constraints_[q].in_domain(W0)) bad.push_back(q);
        if (!bad.empty())
            throw SolverInfeasible("solver: starting point outside constraint domain",
                                   bad);
        Eigen::LLT<CMatrix> llt(W0);
        if (llt.info() != Eigen::Success)
            throw std::invalid_argument("solver: starting W not positive definite");
    }

    const Flattened flat = flatten(constraints_, U);
    const std::size_t n_log = flat.log_idx.size();
    const std::size_t n_v = Q + n_log + 1;  // grad + curvature + scalar

    CMatrix W = W0;
    double m;
    {
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < Q; ++q) {
            const double g = constraints_[q].value(W);
            g_max = std::max(g_max, g);
            g_min = std::min(g_min, g);
        }
        m = g_max + std::max(1.0, 0.1 * (g_max - g_min));
    }

    const double n_barrier = static_cast<double>(U) + static_cast<double>(Q);
    const double t_final = n_barrier / options_.gap_tol;
    int newton_total = 0;
    SolverResult result;

    // Barrier value at a candidate point; ok reports strict feasibility.
    auto barrier_value = [&](const CMatrix& Wc, double mc, double tc,
                             bool& ok) -> double {
        Eigen::LLT<CMatrix> llt(Wc);
        ok = llt.info() == Eigen::Success;
        if (!ok) return 0.0;
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < U; ++i)
            logdet += 2.0 * std::log(std::real(llt.matrixLLT()(i, i)));
        const CMatrix pc = Wc * flat.zall;
        const SlackState s = slack_state(constraints_, flat,
                                         column_qforms(flat.zall, pc), mc,
                                         false);
        if (!s.ok) {
            ok = false;
            return 0.0;
        }
        double value =
            tc * (mc + std::real((penalty_.conjugate().cwiseProduct(Wc))
                                     .sum())) -
            logdet;
        for (double sq : s.slack) value -= std::log(sq);
        return value;
    };

    for (double t = std::max(1.0, options_.t0);; t *= options_.mu) {
        const bool final_stage = t >= t_final;
        const double stage_tol =
            final_stage ? options_.newton_tol : options_.center_tol;
        for (int inner = 0; inner < 200; ++inner) {
            if (newton_total >= options_.max_newton) {
                result.W = W;
                result.m = m;
                result.newton_iters = newton_total;
                result.converged = false;
                result.status = "newton-limit";
                return result;
            }
            ++newton_total;

            Eigen::LLT<CMatrix> llt(W);
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("solver: iterate lost positive definiteness");
            const CMatrix winv = llt.solve(CMatrix::Identity(U, U));

            const CMatrix p = W * flat.zall;
            const CMatrix mfull = flat.zall.adjoint() * p;
            const SlackState ss =
                slack_state(constraints_, flat, mfull.diagonal().real(), m,
                            true);
            if (!ss.ok)
                throw std::runtime_error("solver: iterate lost strict feasibility");

            // Gradient of the centering objective.
            Eigen::VectorXd cgrad(flat.zall.cols());
            double grad_m = t;
            for (std::size_t q = 0; q < Q; ++q) {
                cgrad.segment(flat.off[q], flat.width[q]) =
                    ss.dvec[q] / ss.slack[q];
                grad_m -= 1.0 / ss.slack[q];
            }
            CMatrix grad_w = t * penalty_ - winv;
            grad_w.noalias() +=
                flat.zall * cgrad.asDiagonal() * flat.zall.adjoint();
            grad_w = 0.5 * (grad_w + grad_w.adjoint()).eval();

            // Low-rank Hessian columns: per-constraint gradient outer
            // products, log-form curvature terms, and one scalar column
            // correcting the m-curvature of the operator part.
            Eigen::VectorXd lam(n_v), beta(n_v), scale(n_v);
            for (std::size_t q = 0; q < Q; ++q) {
                lam(q) = 1.0 / (ss.slack[q] * ss.slack[q]);
                beta(q) = -1.0;
            }
            for (std::size_t j = 0; j < n_log; ++j) {
                const std::size_t q = flat.log_idx[j];
                lam(Q + j) = ss.phi2[q] / ss.slack[q];
                beta(Q + j) = 0.0;
            }
            lam(n_v - 1) = -ss.mu_m;
            beta(n_v - 1) = 1.0;
            for (std::size_t i = 0; i < n_v; ++i)
                scale(i) = std::sqrt(std::abs(lam(i)));

            auto block_of = [&](std::size_t i) -> std::pair<Eigen::Index,
                                                            Eigen::Index> {
                if (i < Q) return {flat.off[i], flat.width[i]};
                if (i < Q + n_log) return {flat.off[flat.log_idx[i - Q]], 1};
                return {0, 0};
            };
            auto coeff_of = [&](std::size_t i, Eigen::Index k) -> double {
                return i < Q ? ss.dvec[i](k) : 1.0;
            };

            Eigen::MatrixXd gram(n_v, n_v);
            for (std::size_t i = 0; i < n_v; ++i) {
                const auto [oi, wi] = block_of(i);
                for (std::size_t j = i; j < n_v; ++j) {
                    const auto [oj, wj] = block_of(j);
                    double value = beta(i) * beta(j) / ss.mu_m;
                    for (Eigen::Index k = 0; k < wi; ++k)
                        for (Eigen::Index l = 0; l < wj; ++l)
                            value += coeff_of(i, k) * coeff_of(j, l) *
                                     std::norm(mfull(oi + k, oj + l));
                    value *= scale(i) * scale(j);
                    if (i == j) value += lam(i) >= 0.0 ? 1.0 : -1.0;
                    gram(i, j) = value;
                    gram(j, i) = value;
                }
            }
            Eigen::PartialPivLU<Eigen::MatrixXd> gram_lu(gram);

            Eigen::MatrixXd xhat = Eigen::MatrixXd::Zero(n_v, U);
            for (std::size_t i = 0; i + 1 < n_v; ++i) {
                const auto [oi, wi] = block_of(i);
                for (Eigen::Index u = 0; u < U; ++u) {
                    double v = 0.0;
                    for (Eigen::Index k = 0; k < wi; ++k)
                        v += coeff_of(i, k) * std::norm(p(u, oi + k));
                    xhat(i, u) = scale(i) * v;
                }
            }

            auto apply_hinv = [&](const CMatrix& rmat,
                                  double r_m) -> std::pair<CMatrix, double> {
                CMatrix tm = W * rmat * W;
                const CMatrix tz = tm * flat.zall;
                const Eigen::VectorXd tdiag = column_qforms(flat.zall, tz);
                Eigen::VectorXd y(n_v);
                for (std::size_t i = 0; i < n_v; ++i) {
                    const auto [oi, wi] = block_of(i);
                    double yi = beta(i) * r_m / ss.mu_m;
                    for (Eigen::Index k = 0; k < wi; ++k)
                        yi += coeff_of(i, k) * tdiag(oi + k);
                    y(i) = scale(i) * yi;
                }
                const Eigen::VectorXd z = gram_lu.solve(y);
                Eigen::VectorXd agg =
                    Eigen::VectorXd::Zero(flat.zall.cols());
                double beta_sum = 0.0;
                for (std::size_t i = 0; i < n_v; ++i) {
                    const double zf = scale(i) * z(i);
                    beta_sum += zf * beta(i);
                    const auto [oi, wi] = block_of(i);
                    for (Eigen::Index k = 0; k < wi; ++k)
                        agg(oi + k) += zf * coeff_of(i, k);
                }
                tm.noalias() -= p * agg.asDiagonal() * p.adjoint();
                tm = 0.5 * (tm + tm.adjoint()).eval();
                return {std::move(tm), (r_m - beta_sum) / ss.mu_m};
            };

            // Newton step with diag(W) kept exactly feasible via the
            // equality-constrained KKT system.
            auto [d1w, d1m] = apply_hinv(grad_w, grad_m);
            const Eigen::MatrixXd zsol = gram_lu.solve(xhat);
            Eigen::MatrixXd aha = W.cwiseAbs2().real();
            aha.noalias() -= xhat.transpose() * zsol;
            aha = 0.5 * (aha + aha.transpose()).eval();
            const Eigen::VectorXd rhs = d1w.diagonal().real();
            const Eigen::VectorXd lambda = -aha.ldlt().solve(rhs);

            CMatrix diag_l = CMatrix::Zero(U, U);
            diag_l.diagonal() = lambda.cast<Complex>();
            auto [d2w, d2m] = apply_hinv(diag_l, 0.0);

            CMatrix dw = -(d1w + d2w);
            double dm = -(d1m + d2m);
            dw.diagonal().setZero();

            const double dec2 =
                -(std::real((grad_w.conjugate().cwiseProduct(dw)).sum()) +
                  grad_m * dm);
            if (dec2 < 2.0 * stage_tol) break;

            bool ok = false;
            const double f0 = barrier_value(W, m, t, ok);
            if (!ok)
                throw std::runtime_error("solver: current point not evaluable");
            double alpha = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < options_.max_backtracks; ++bt) {
                const CMatrix Wc = W + alpha * dw;
                const double mc = m + alpha * dm;
                bool feasible = false;
                const double fc = barrier_value(Wc, mc, t, feasible);
                if (feasible && fc <= f0 - 0.01 * alpha * dec2) {
                    W = Wc;
                    m = mc;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) break;  // stalled; treat as centered
        }
        if (final_stage) break;
    }

    result.W = W;
    result.m = m;
    result.newton_iters = newton_total;
    result.converged = true;
    return result;
}

}  // namespace risdet
