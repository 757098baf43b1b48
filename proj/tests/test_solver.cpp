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

#include <cmath>
#include <random>

#include "risdet/channel.hpp"
#include "risdet/solver.hpp"

using namespace risdet;

namespace {

EpigraphConstraint affine_gain(const CVector& h, double scale = 1.0) {
    EpigraphConstraint c;
    c.kind = EpigraphConstraint::Kind::Affine;
    c.Z = h;
    c.D = Eigen::VectorXd::Constant(1, -scale);
    return c;
}

}  // namespace

TEST_CASE("constraint evaluation in factored form") {
    CVector h(2);
    h << Complex(1.0, 0.0), Complex(0.0, 2.0);
    EpigraphConstraint c = affine_gain(h);
    c.offset = 0.25;
    const CMatrix eye = CMatrix::Identity(2, 2);
    // tr(I h h^H) = ||h||^2 = 5.
    CHECK(c.value(eye) == doctest::Approx(-5.0 + 0.25).epsilon(1e-14));
    CHECK(c.in_domain(eye));

    EpigraphConstraint lf;
    lf.kind = EpigraphConstraint::Kind::LogForm;
    lf.Z = CMatrix::Zero(2, 0);
    lf.D = Eigen::VectorXd::Zero(0);
    lf.h = h;
    lf.power = 2.0;
    lf.beta = 1.0;
    // g = -ln(sqrt(2 P ||h||^2) - beta) = -ln(sqrt(20) - 1).
    CHECK(lf.in_domain(eye));
    CHECK(lf.value(eye) ==
          doctest::Approx(-std::log(std::sqrt(20.0) - 1.0)).epsilon(1e-12));
    lf.beta = 10.0;  // outside the log domain
    CHECK_FALSE(lf.in_domain(eye));
    CHECK_THROWS(lf.value(eye));
}

TEST_CASE("two-cell closed form: best gain is (|h1|+|h2|)^2") {
    CVector h(2);
    h << Complex(0.6, 0.8), Complex(-1.5, 0.5);
    const double best = std::pow(std::abs(h(0)) + std::abs(h(1)), 2.0);

    MinMaxSdpSolver solver(CMatrix::Zero(2, 2), {affine_gain(h)});
    const auto result = solver.solve(CMatrix::Identity(2, 2));
    CHECK(result.converged);
    CHECK(result.m == doctest::Approx(-best).epsilon(1e-7));
    CHECK(result.W(0, 0).real() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(result.W(1, 1).real() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("log-form constraint drives the same alignment") {
    CVector h(2);
    h << Complex(1.0, 0.0), Complex(0.0, 1.0);
    EpigraphConstraint lf;
    lf.kind = EpigraphConstraint::Kind::LogForm;
    lf.Z = CMatrix::Zero(2, 0);
    lf.D = Eigen::VectorXd::Zero(0);
    lf.h = h;
    lf.power = 3.0;
    lf.beta = 1.0;

    MinMaxSdpSolver solver(CMatrix::Zero(2, 2), {lf});
    const auto result = solver.solve(CMatrix::Identity(2, 2));
    CHECK(result.converged);
    const double best = -std::log(std::sqrt(2.0 * 3.0 * 4.0) - 1.0);
    CHECK(result.m == doctest::Approx(best).epsilon(1e-7));
}

TEST_CASE("min-max solution is feasible, centered, and hard to beat") {
    std::mt19937_64 rng(17);
    const int n = 6;
    std::vector<EpigraphConstraint> constraints;
    for (int q = 0; q < 5; ++q) {
        CVector h(n);
        for (int i = 0; i < n; ++i) h(i) = standard_complex_normal(rng);
        constraints.push_back(affine_gain(h, 1.0 / n));
    }
    MinMaxSdpSolver solver(CMatrix::Zero(n, n), constraints);
    const auto result = solver.solve(CMatrix::Identity(n, n));
    REQUIRE(result.converged);

    // Unit diagonal and PSD.
    for (int i = 0; i < n; ++i)
        CHECK(result.W(i, i).real() == doctest::Approx(1.0).epsilon(1e-8));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(result.W,
                                               Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-9);

    // m is the active maximum.
    double worst = -1e300;
    for (const auto& c : constraints) worst = std::max(worst, c.value(result.W));
    CHECK(worst <= result.m + 1e-8);
    CHECK(worst >= result.m - 1e-6);

    // No random rank-one candidate does better.
    for (int trial = 0; trial < 300; ++trial) {
        CVector w(n);
        for (int i = 0; i < n; ++i)
            w(i) = std::polar(1.0, 2.0 * std::numbers::pi *
                                       (static_cast<double>(rng() >> 11) *
                                        0x1p-53));
        const CMatrix W = w * w.adjoint();
        double cand = -1e300;
        for (const auto& c : constraints) cand = std::max(cand, c.value(W));
        CHECK(result.m <= cand + 1e-8);
    }
}

TEST_CASE("penalty term trades worst-case value for low rank") {
    std::mt19937_64 rng(23);
    const int n = 4;
    std::vector<EpigraphConstraint> constraints;
    for (int q = 0; q < 3; ++q) {
        CVector h(n);
        for (int i = 0; i < n; ++i) h(i) = standard_complex_normal(rng);
        constraints.push_back(affine_gain(h, 1.0 / n));
    }
    // Rank-one reference direction from the unpenalized solution.
    MinMaxSdpSolver plain(CMatrix::Zero(n, n), constraints);
    const auto base = plain.solve(CMatrix::Identity(n, n));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(base.W);
    const CVector v = eig.eigenvectors().col(n - 1);

    CMatrix pen = -50.0 * (v * v.adjoint());
    pen.diagonal().array() += 50.0;
    MinMaxSdpSolver penalized(pen, constraints);
    const auto result = penalized.solve(CMatrix::Identity(n, n));
    REQUIRE(result.converged);

    Eigen::SelfAdjointEigenSolver<CMatrix> eig2(result.W,
                                                Eigen::EigenvaluesOnly);
    const double ratio = eig2.eigenvalues().maxCoeff() /
                         std::real(result.W.trace());
    CHECK(ratio > 0.99);
    CHECK(result.m >= base.m - 1e-9);
}

TEST_CASE("infeasible start reports the failing locations") {
    CVector h(2);
    h << Complex(0.1, 0.0), Complex(0.0, 0.1);
    EpigraphConstraint lf;
    lf.kind = EpigraphConstraint::Kind::LogForm;
    lf.Z = CMatrix::Zero(2, 0);
    lf.D = Eigen::VectorXd::Zero(0);
    lf.h = h;
    lf.power = 1.0;
    lf.beta = 100.0;  // unreachable
    MinMaxSdpSolver solver(CMatrix::Zero(2, 2), {lf});
    CHECK_THROWS_AS(solver.solve(CMatrix::Identity(2, 2)), SolverInfeasible);
}
