// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_SOLVER_HPP
#define RISDET_SOLVER_HPP

#include <string>
#include <vector>

#include "risdet/ris.hpp"

namespace risdet {

/// One per-location epigraph constraint g(W) <= m of the min-max
/// subproblem, with the W-linear part kept in low-rank factored form
/// A = Z diag(D) Z^H:
///
///   Affine:  g(W) = tr(W A) + offset
///   LogForm: g(W) = -ln(sqrt(2 P tr(W h h^H)) - beta) + tr(W A) + offset
struct EpigraphConstraint {
    enum class Kind { Affine, LogForm };
    Kind kind = Kind::Affine;
    CMatrix Z;            // U x r factor
    Eigen::VectorXd D;    // r real coefficients
    double offset = 0.0;
    CVector h;            // LogForm only
    double power = 0.0;   // LogForm only
    double beta = 0.0;    // LogForm only

    /// Value of g at W; throws std::domain_error outside the log domain.
    double value(const CMatrix& W) const;
    /// True when W lies strictly inside the domain of g.
    bool in_domain(const CMatrix& W) const;
};

struct SolverOptions {
    double gap_tol = 1e-9;      // absolute duality-gap target
    double mu = 10.0;           // barrier parameter growth
    double t0 = 1.0;            // initial barrier parameter
    double newton_tol = 1e-11;  // half squared decrement, final stage
    double center_tol = 1e-5;   // half squared decrement, inner stages
    int max_newton = 2000;      // total Newton iterations
    int max_backtracks = 60;
};

struct SolverResult {
    CMatrix W;
    double m = 0.0;
    int newton_iters = 0;
    bool converged = false;
    std::string status = "ok";
};

struct SolverInfeasible : std::runtime_error {
    std::vector<std::size_t> locations;
    SolverInfeasible(const std::string& what, std::vector<std::size_t> locs)
        : std::runtime_error(what), locations(std::move(locs)) {}
};

/// Primal barrier interior-point solver for
///   min m + tr(W Pen)
///   s.t. W PSD (Hermitian), diag(W) = 1, g_q(W) <= m for all q.
/// Structure-exploiting: the Newton systems are solved with low-rank
/// updates of the log-det barrier Hessian, so cost per step is
/// O(U^3 + (Q + U) Q U) rather than O(U^6).
class MinMaxSdpSolver {
  public:
    MinMaxSdpSolver(CMatrix penalty,
                    std::vector<EpigraphConstraint> constraints,
                    SolverOptions options = {});

    /// W0 must be Hermitian PD with unit diagonal and inside every
    /// constraint domain; m is initialized strictly feasible internally.
    SolverResult solve(const CMatrix& W0) const;

  private:
    CMatrix penalty_;
    std::vector<EpigraphConstraint> constraints_;
    SolverOptions options_;
};

}  // namespace risdet

#endif  // RISDET_SOLVER_HPP
