// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/mm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace risdet {

namespace {

struct CovFactors {
    CMatrix vecs;          // U x r
    Eigen::VectorXd vals;  // r positive eigenvalues
};

CovFactors factorize_cov(const CMatrix& cov) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double cutoff = 1e-14 * std::max(0.0, ev.maxCoeff());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > cutoff && ev(k) > 0.0) keep.push_back(k);
    CovFactors f;
    f.vecs.resize(cov.rows(), static_cast<Eigen::Index>(keep.size()));
    f.vals.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        f.vecs.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors().col(keep[i]);
        f.vals(static_cast<Eigen::Index>(i)) = ev(keep[i]);
    }
    return f;
}

/// Assembles the per-location epigraph constraints of one convex
/// subproblem; covariance factorizations and the normalization of the
/// k in {2, 3} traces are cached across outer iterations.
struct SubproblemBuilder {
    ObjectiveKind kind;
    const Scenario* scenario;
    double scale = 1.0;
    std::vector<CovFactors> cov_factors;

    SubproblemBuilder(ObjectiveKind k, const Scenario& s)
        : kind(k), scenario(&s) {
        const std::size_t Q = s.sample_count();
        if (Q == 0)
            throw std::invalid_argument("SubproblemBuilder: empty sample set");
        if (kind != ObjectiveKind::J2) {
            cov_factors.reserve(Q);
            for (std::size_t q = 0; q < Q; ++q)
                cov_factors.push_back(factorize_cov(s.stats(q).cov));
        }
        if (kind == ObjectiveKind::J2 || kind == ObjectiveKind::J3) {
            scale = 0.0;
            for (std::size_t q = 0; q < Q; ++q) {
                double tr = s.stats(q).los.squaredNorm();
                if (kind == ObjectiveKind::J3)
                    tr += std::real(s.stats(q).cov.trace());
                scale = std::max(scale, tr);
            }
            if (scale <= 0.0)
                throw std::invalid_argument("SubproblemBuilder: zero channel traces");
        }
    }

    std::vector<EpigraphConstraint> build(const CMatrix& w_prev) const {
        const std::size_t Q = scenario->sample_count();
        const SystemParams& params = scenario->params();
        const double power = params.effective_power();
        const double sigma2 = params.noise_w();
        std::vector<EpigraphConstraint> constraints(Q);
        for (std::size_t q = 0; q < Q; ++q) {
            const CVector& h = scenario->stats(q).los;
            EpigraphConstraint& c = constraints[q];
            switch (kind) {
                case ObjectiveKind::J2:
                    c.kind = EpigraphConstraint::Kind::Affine;
                    c.Z = h;
                    c.D = Eigen::VectorXd::Constant(1, -1.0 / scale);
                    break;
                case ObjectiveKind::J3: {
                    const CovFactors& f = cov_factors[q];
                    c.kind = EpigraphConstraint::Kind::Affine;
                    c.Z.resize(h.size(), 1 + f.vals.size());
                    c.Z.col(0) = h;
                    c.Z.rightCols(f.vals.size()) = f.vecs;
                    c.D.resize(1 + f.vals.size());
                    c.D(0) = -1.0 / scale;
                    c.D.tail(f.vals.size()) = -f.vals / scale;
                    break;
                }
                case ObjectiveKind::J1: {
                    const CovFactors& f = cov_factors[q];
                    double twc = 0.0;
                    for (Eigen::Index k = 0; k < f.vals.size(); ++k)
                        twc += f.vals(k) *
                               std::real(f.vecs.col(k).dot(w_prev * f.vecs.col(k)));
                    twc = std::max(0.0, twc);
                    const double denom = twc * power + sigma2;
                    c.kind = EpigraphConstraint::Kind::LogForm;
                    c.Z = f.vecs;
                    c.D = f.vals * (0.5 * power / denom);
                    c.offset = 0.5 * std::log(denom) -
                               0.5 * twc * power / denom;
                    c.h = h;
                    c.power = power;
                    c.beta = std::sqrt(-2.0 * sigma2 * std::log(params.pfa));
                    break;
                }
                default:
                    throw std::invalid_argument("SubproblemBuilder: kind has no subproblem");
            }
        }
        return constraints;
    }

    double omega(const LiftedDesign& lifted) const {
        return worst_case_objective(lifted, kind, *scenario).value / scale;
    }
};

/// Strictly PD, strictly in-domain starting point near w_prev: blend with
/// the identity, shrinking the blend weight if the log domain is tight.
CMatrix blend_start(const CMatrix& w_prev,
                    const std::vector<EpigraphConstraint>& constraints) {
    const Eigen::Index U = w_prev.rows();
    // The lower bound keeps W comfortably invertible; the Newton
    // elimination degrades when the start is too close to rank one.
    for (double tau : {1e-3, 0.01, 0.05}) {
        CMatrix W = (1.0 - tau) * w_prev + tau * CMatrix::Identity(U, U);
        W = 0.5 * (W + W.adjoint()).eval();
        bool ok = true;
        for (const auto& c : constraints)
            if (!c.in_domain(W)) {
                ok = false;
                break;
            }
        if (ok) return W;
    }
    const CMatrix W = 0.9999 * w_prev + 1e-4 * CMatrix::Identity(U, U);
    std::vector<std::size_t> bad;
    for (std::size_t q = 0; q < constraints.size(); ++q)
        if (!constraints[q].in_domain(W)) bad.push_back(q);
    throw SolverInfeasible("mm: no feasible starting point near the current iterate",
                           bad);
}

SolverOptions subproblem_options(const MmConfig& config) {
    SolverOptions opts;
    // Solve the inner problem one notch tighter than the outer tolerance so
    // the descent guarantee survives the subproblem suboptimality.
    opts.gap_tol = 0.01 * config.solver_tol;
    opts.max_newton = config.max_newton;
    return opts;
}

double rank_ratio(const CMatrix& W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W, Eigen::EigenvaluesOnly);
    const double tr = std::real(W.trace());
    return tr > 0.0 ? eig.eigenvalues().maxCoeff() / tr : 0.0;
}

MmResult mm_run(const SubproblemBuilder& builder, const Scenario& scenario,
                const PhaseDesign& w_init, double rho,
                const MmConfig& config) {
    const Eigen::Index U = scenario.geometry().cell_count();
    if (w_init.size() != U)
        throw std::invalid_argument("mm_optimize: initial design size mismatch");

    MmResult result;
    result.rho = rho;
    result.status = "max-iters";

    CMatrix W = w_init.w() * w_init.w().adjoint();
    double omega = builder.omega(LiftedDesign{W});
    result.trace.iterates.push_back(
        {omega, std::numeric_limits<double>::quiet_NaN(), penalty_value(W),
         rank_ratio(W), 0, "init"});

    const SolverOptions opts = subproblem_options(config);
    const double n_barrier =
        static_cast<double>(U) + static_cast<double>(scenario.sample_count());
    int iters_used = 0;
    double prev_opt = std::numeric_limits<double>::quiet_NaN();
    bool done = false;

    while (iters_used < config.max_iters) {
        ++iters_used;
        const auto constraints = builder.build(W);
        const CVector v = principal_eigvec(W);
        CMatrix pen = -rho * (v * v.adjoint());
        pen.diagonal().array() += rho;
        const CMatrix w_start = blend_start(W, constraints);

        // Warm start: consecutive subproblems differ little, so the
        // previous optimum bounds the duality gap at w_start and the early
        // barrier stages can be skipped.
        SolverOptions it_opts = opts;
        if (std::isfinite(prev_opt)) {
            double start_val = -std::numeric_limits<double>::infinity();
            for (const auto& c : constraints)
                start_val = std::max(start_val, c.value(w_start));
            start_val +=
                std::real((pen.conjugate().cwiseProduct(w_start)).sum());
            const double est_gap =
                std::max(3.0 * (start_val - prev_opt), 100.0 * opts.gap_tol);
            it_opts.t0 = n_barrier / est_gap;
        }
        const SolverResult sub =
            MinMaxSdpSolver(pen, constraints, it_opts).solve(w_start);
        prev_opt =
            sub.m + std::real((pen.conjugate().cwiseProduct(sub.W)).sum());
        const double omega_new = builder.omega(LiftedDesign{sub.W});

        // Monotone safeguard: the descent guarantee covers the penalized
        // objective, so keep the previous iterate on the rare upward step.
        if (omega_new > omega + 1e-10) {
            result.status = "monotone-stop";
            done = true;
            break;
        }
        W = sub.W;
        result.trace.iterates.push_back({omega_new, sub.m, penalty_value(W),
                                         rank_ratio(W), sub.newton_iters,
                                         sub.status});
        const double delta = std::abs(omega_new - omega);
        const double denom = std::max(1.0, std::abs(omega));
        omega = omega_new;
        if (delta <= config.convergence_nu * denom) {
            result.status = "ok";
            done = true;
            break;
        }
    }
    result.converged = done;
    if (!done) result.status = "max-iters";

    result.iters = iters_used;
    result.lifted = LiftedDesign{W};
    result.design = extract_phase_vector(W);
    return result;
}

MmResult mm_auto_rho(const SubproblemBuilder& builder,
                     const Scenario& scenario, const PhaseDesign& w_init,
                     const MmConfig& config) {
    if (config.penalty_rho > 0.0)
        return mm_run(builder, scenario, w_init, config.penalty_rho, config);
    MmResult last;
    for (double rho : kRhoSet) {
        last = mm_run(builder, scenario, w_init, rho, config);
        const double ratio =
            last.trace.iterates.back().rank_ratio;
        if (1.0 - ratio <= config.rank_one_tol) return last;
    }
    last.status = "rho-exhausted";
    return last;
}

}  // namespace

double penalty_surrogate(const CMatrix& W, const CVector& v_prev) {
    return std::real(W.trace()) - std::real(v_prev.dot(W * v_prev));
}

double penalty_value(const CMatrix& W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W, Eigen::EigenvaluesOnly);
    return std::real(W.trace()) - eig.eigenvalues().maxCoeff();
}

CVector principal_eigvec(const CMatrix& W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W);
    CVector v = eig.eigenvectors().col(W.rows() - 1);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const double mag = std::abs(v(imax));
    if (mag > 0.0) v *= std::conj(v(imax)) / mag;
    return v;
}

PhaseDesign extract_phase_vector(const CMatrix& W) {
    const CVector v = principal_eigvec(W);
    Eigen::VectorXd phases(v.size());
    for (Eigen::Index u = 0; u < v.size(); ++u)
        phases(u) = std::abs(v(u)) > 0.0 ? std::arg(v(u)) : 0.0;
    return PhaseDesign(phases);
}

SolverResult solve_subproblem(ObjectiveKind kind, const Scenario& scenario,
                              const CMatrix& w_prev, double rho,
                              const MmConfig& config) {
    const SubproblemBuilder builder(kind, scenario);
    const auto constraints = builder.build(w_prev);
    CMatrix pen = CMatrix::Zero(w_prev.rows(), w_prev.cols());
    if (rho > 0.0) {
        const CVector v = principal_eigvec(w_prev);
        pen = -rho * (v * v.adjoint());
        pen.diagonal().array() += rho;
    }
    const CMatrix w_start = blend_start(w_prev, constraints);
    return MinMaxSdpSolver(pen, constraints, subproblem_options(config))
        .solve(w_start);
}

MmResult mm_optimize(ObjectiveKind kind, const Scenario& scenario,
                     const PhaseDesign& w_init, const MmConfig& config) {
    const SubproblemBuilder builder(kind, scenario);
    try {
        return mm_auto_rho(builder, scenario, w_init, config);
    } catch (const SolverInfeasible&) {
        if (kind != ObjectiveKind::J1) throw;
        // The initial design leaves some location below the log-domain
        // floor; boost the worst-case LoS power first.
        const PhaseDesign boosted =
            mm_optimize(ObjectiveKind::J2, scenario, w_init, config).design;
        return mm_auto_rho(builder, scenario, boosted, config);
    }
}

double select_rho(ObjectiveKind kind, const Scenario& scenario,
                  const PhaseDesign& w_init, const MmConfig& config,
                  MmResult* result) {
    MmConfig auto_config = config;
    auto_config.penalty_rho = 0.0;
    MmResult r = mm_optimize(kind, scenario, w_init, auto_config);
    const double rho = r.rho;
    if (result) *result = std::move(r);
    return rho;
}

void MmTrace::write_csv(std::ostream& out) const {
    out << "iter,omega,m,penalty,rank_ratio,newton_iters,status\n";
    char buf[160];
    for (std::size_t i = 0; i < iterates.size(); ++i) {
        const MmIterate& it = iterates[i];
        std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.9g,%.9g,%d,", i,
                      it.omega, it.m, it.penalty, it.rank_ratio,
                      it.newton_iters);
        out << buf << it.solver_status << '\n';
    }
}

}  // namespace risdet
