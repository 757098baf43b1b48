// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "risdet/baseline.hpp"
#include "risdet/channel.hpp"
#include "risdet/mm.hpp"

using namespace risdet;

namespace {

ScenarioConfig fast_config() {
    ScenarioConfig config;
    config.ux_count = 4;
    config.uy_count = 2;
    config.grid_ny = 3;
    config.grid_nz = 3;
    config.params.tx_power_dbm = 10.0;
    return config;
}

CMatrix random_psd(int n, std::mt19937_64& rng) {
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = standard_complex_normal(rng);
    return g * g.adjoint();
}

}  // namespace

TEST_CASE("rank penalty value and its tangent surrogate") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const CMatrix W = random_psd(5, rng);
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(W);
        const double expected =
            std::real(W.trace()) - eig.eigenvalues().maxCoeff();
        CHECK(penalty_value(W) == doctest::Approx(expected).epsilon(1e-12));

        // The surrogate touches at the expansion point...
        const CVector v = principal_eigvec(W);
        CHECK(penalty_surrogate(W, v) ==
              doctest::Approx(penalty_value(W)).epsilon(1e-10));
        // ... and upper-bounds the penalty elsewhere.
        const CMatrix other = random_psd(5, rng);
        CHECK(penalty_surrogate(other, v) >= penalty_value(other) - 1e-10);
    }

    // Exactly rank-one matrices have zero penalty.
    CVector w(4);
    w << Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1);
    CHECK(penalty_value(w * w.adjoint()) == doctest::Approx(0.0));
}

TEST_CASE("principal eigenvector has a deterministic phase") {
    std::mt19937_64 rng(37);
    const CMatrix W = random_psd(6, rng);
    const CVector v = principal_eigvec(W);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    CHECK(v(imax).imag() == doctest::Approx(0.0));
    CHECK(v(imax).real() > 0.0);

    // A global phase on W's factor must not change the output.
    const CVector vr = principal_eigvec(std::polar(1.0, 0.9) * W *
                                        std::polar(1.0, -0.9));
    CHECK((v - vr).norm() < 1e-10);
}

TEST_CASE("phase extraction recovers a planted rank-one design") {
    std::mt19937_64 rng(41);
    Eigen::VectorXd phases(8);
    for (int i = 0; i < 8; ++i) phases(i) = standard_normal(rng);
    const PhaseDesign planted(phases);
    const CMatrix W = planted.w() * planted.w().adjoint();
    const PhaseDesign extracted = extract_phase_vector(W);
    // Equal up to one global phase.
    CHECK(std::abs(extracted.w().dot(planted.w())) ==
          doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("MM on the small instance: descent, rank one, determinism") {
    const Scenario scenario(fast_config());
    const PhaseDesign init = quadratic_design(scenario);

    for (ObjectiveKind kind : {ObjectiveKind::J1, ObjectiveKind::J2,
                               ObjectiveKind::J3}) {
        CAPTURE(objective_name(kind));
        const MmResult result = mm_optimize(kind, scenario, init);
        REQUIRE(!result.trace.iterates.empty());
        for (std::size_t i = 1; i < result.trace.iterates.size(); ++i)
            CHECK(result.trace.iterates[i].omega <=
                  result.trace.iterates[i - 1].omega + 1e-9);
        CHECK(result.trace.iterates.back().rank_ratio >= 0.999);
        CHECK(std::find(kRhoSet.begin(), kRhoSet.end(), result.rho) !=
              kRhoSet.end());

        // Bitwise reproducibility.
        const MmResult again = mm_optimize(kind, scenario, init);
        CHECK(again.design.phases() == result.design.phases());
    }
}

TEST_CASE("subproblem solution stays in the relaxed feasible set") {
    const Scenario scenario(fast_config());
    const PhaseDesign init = quadratic_design(scenario);
    const CMatrix W0 = init.w() * init.w().adjoint();
    const SolverResult sub =
        solve_subproblem(ObjectiveKind::J2, scenario, W0, 10.0);
    CHECK(sub.converged);
    for (Eigen::Index i = 0; i < sub.W.rows(); ++i)
        CHECK(sub.W(i, i).real() == doctest::Approx(1.0).epsilon(1e-7));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(sub.W, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
}

TEST_CASE("rho selection returns a candidate with a rank-one solution") {
    const Scenario scenario(fast_config());
    const PhaseDesign init = quadratic_design(scenario);
    MmResult result;
    const double rho = select_rho(ObjectiveKind::J2, scenario, init, {},
                                  &result);
    CHECK(std::find(kRhoSet.begin(), kRhoSet.end(), rho) != kRhoSet.end());
    CHECK(result.rho == rho);
    CHECK(result.trace.iterates.back().rank_ratio >= 0.999);
}

TEST_CASE("trace CSV has the documented columns") {
    const Scenario scenario(fast_config());
    MmConfig config;
    config.max_iters = 3;
    const MmResult result = mm_optimize(ObjectiveKind::J2, scenario,
                                        quadratic_design(scenario), config);
    std::ostringstream out;
    result.trace.write_csv(out);
    const std::string text = out.str();
    CHECK(text.rfind("iter,omega,m,penalty,rank_ratio,newton_iters,status",
                     0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') ==
          static_cast<long>(result.trace.iterates.size()) + 1);
}
