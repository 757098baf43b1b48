// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_MM_HPP
#define RISDET_MM_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "risdet/objectives.hpp"
#include "risdet/solver.hpp"

namespace risdet {

/// Candidate penalty factors, smallest adequate one wins.
inline constexpr std::array<double, 4> kRhoSet{1.0, 10.0, 100.0, 1000.0};

struct MmConfig {
    double convergence_nu = 1e-7;  // relative objective-change threshold
    int max_iters = 100;
    double rank_one_tol = 1e-3;    // adequacy bound on 1 - lambda_max/tr
    double solver_tol = 1e-8;      // subproblem objective accuracy
    double penalty_rho = 0.0;      // 0: auto-select from kRhoSet
    int max_newton = 600;          // per subproblem
};

/// One accepted outer iterate. Objective values for k in {2, 3} are in
/// normalized solver units (per-location traces scaled by their maximum so
/// the penalty factors in kRhoSet are commensurate).
struct MmIterate {
    double omega = 0.0;       // worst-case objective at W_i
    double m = 0.0;           // subproblem epigraph optimum (NaN at i = 0)
    double penalty = 0.0;     // tr(W) - lambda_max(W)
    double rank_ratio = 0.0;  // lambda_max(W) / tr(W)
    int newton_iters = 0;
    std::string solver_status;
};

struct MmTrace {
    std::vector<MmIterate> iterates;
    void write_csv(std::ostream& out) const;
};

struct MmResult {
    PhaseDesign design{Eigen::VectorXd{}};
    LiftedDesign lifted;
    MmTrace trace;
    double rho = 0.0;
    int iters = 0;
    bool converged = false;
    std::string status = "ok";  // "ok", "max-iters", "monotone-stop"
};

/// tr((I - v v^H) W), the convex tangent surrogate of tr(W) - lambda_max(W)
/// at the point whose principal eigenvector is v.
double penalty_surrogate(const CMatrix& W, const CVector& v_prev);

/// tr(W) - lambda_max(W) for Hermitian PSD W (nuclear minus spectral norm).
double penalty_value(const CMatrix& W);

/// Unit principal eigenvector with a deterministic phase: the entry of
/// largest modulus is made real positive.
CVector principal_eigvec(const CMatrix& W);

/// Element-wise unit-modulus projection of the principal eigenvector;
/// zero entries map to phase 0.
PhaseDesign extract_phase_vector(const CMatrix& W);

/// One convex subproblem: majorize the worst-case objective at w_prev,
/// penalize rank with rho, and solve to config.solver_tol.
SolverResult solve_subproblem(ObjectiveKind kind, const Scenario& scenario,
                              const CMatrix& w_prev, double rho,
                              const MmConfig& config = {});

/// Full minorize-maximize loop. With config.penalty_rho == 0 the penalty
/// factor is auto-selected (smallest member of kRhoSet whose solution is
/// rank-one within rank_one_tol; the largest is kept otherwise and the
/// result status reports it).
MmResult mm_optimize(ObjectiveKind kind, const Scenario& scenario,
                     const PhaseDesign& w_init, const MmConfig& config = {});

/// Auto-selection result for a fixed instance; the winning run is returned
/// through `result` when non-null.
double select_rho(ObjectiveKind kind, const Scenario& scenario,
                  const PhaseDesign& w_init, const MmConfig& config = {},
                  MmResult* result = nullptr);

}  // namespace risdet

#endif  // RISDET_MM_HPP
