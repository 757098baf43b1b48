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
#include <numbers>
#include <random>

#include "risdet/channel.hpp"
#include "risdet/scenario.hpp"

using namespace risdet;

namespace {

RisGeometry table_geometry() { return RisGeometry(4, 8, 0.05, 0.05, 0.1); }

Location ap_location() {
    return Location::from_sphere(25.0, 90.0 * std::numbers::pi / 180.0,
                                 37.0 * std::numbers::pi / 180.0);
}

Location center_location() { return Location::from_cart(-10.0, -30.0, 30.0); }

}  // namespace

TEST_CASE("power conversions") {
    CHECK(dbm_to_watt(0.0) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(db_to_linear(3.0) ==
          doctest::Approx(1.9952623149688795).epsilon(1e-14));
    SystemParams params{0.0, 4, 64, -100.0, 0.1, 0.1};
    CHECK(params.effective_power() ==
          doctest::Approx(4.0 * 1e-3 * 64.0).epsilon(1e-14));
}

TEST_CASE("free-space path loss magnitude") {
    CHECK(path_loss_magnitude(25.0, 0.1) ==
          doctest::Approx(0.00031830988618379069).epsilon(1e-14));
    CHECK_THROWS(path_loss_magnitude(0.0, 0.1));
}

TEST_CASE("LoS vector matches the reference implementation") {
    const CVector h = los_vector(center_location(), ap_location(),
                                 table_geometry(), 0.0);
    REQUIRE(h.size() == 32);
    // Independently computed entry and norm.
    CHECK(h(0).real() == doctest::Approx(1.1438256611766435e-07).epsilon(1e-10));
    CHECK(h(0).imag() == doctest::Approx(7.777464050048896e-08).epsilon(1e-10));
    CHECK(h.squaredNorm() ==
          doctest::Approx(6.12232516372549e-13).epsilon(1e-10));
    // All entries share the LoS magnitude.
    for (int u = 0; u < 32; ++u)
        CHECK(std::abs(h(u)) == doctest::Approx(std::abs(h(0))).epsilon(1e-12));
}

TEST_CASE("NLoS covariance matches the reference implementation") {
    const RisGeometry geom = table_geometry();
    const Location q = center_location();
    const auto dirs = scatterer_directions(q, 30.0 * std::numbers::pi / 180.0, 2);
    const ScattererSet set{dirs, scatterer_variances_from_k(q, 3.0, 2, 0.1)};
    const CMatrix cov = nlos_covariance(q, ap_location(), set, geom, 0.0);

    CHECK(std::real(cov.trace()) ==
          doctest::Approx(2.312616265112109e-13).epsilon(1e-10));
    CHECK(cov(0, 0).real() ==
          doctest::Approx(7.22692582847534e-15).epsilon(1e-10));
    CHECK(cov(3, 9).real() ==
          doctest::Approx(-3.032835346975089e-15).epsilon(1e-10));
    CHECK(cov(3, 9).imag() ==
          doctest::Approx(1.8966329551365823e-15).epsilon(1e-10));

    CHECK((cov - cov.adjoint()).norm() <= 1e-14 * cov.norm());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov, Eigen::EigenvaluesOnly);
    const auto& vals = eig.eigenvalues();
    CHECK(vals.minCoeff() >= -1e-15 * vals.maxCoeff());
    // Two clusters bound the rank by two.
    CHECK(vals(vals.size() - 3) <= 1e-12 * vals.maxCoeff());
}

TEST_CASE("equal-variance clusters follow the K-factor") {
    const Location q = center_location();
    const auto vars = scatterer_variances_from_k(q, 3.0, 2, 0.1);
    REQUIRE(vars.size() == 2);
    const double gain = path_loss_magnitude(q.distance(), 0.1);
    const double expected = gain * gain / (db_to_linear(3.0) * 2.0);
    CHECK(vars[0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(vars[1] == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS(scatterer_variances_from_k(q, 3.0, 0, 0.1));
}

TEST_CASE("portable normal generator has the right moments") {
    std::mt19937_64 rng(12345);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = standard_normal(rng);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));

    double cvar = 0.0;
    for (int i = 0; i < n; ++i) cvar += std::norm(standard_complex_normal(rng));
    CHECK(cvar / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("channel sampler reproduces the target mean and variance") {
    const Scenario scenario{ScenarioConfig{}};
    const ChannelStatistics& stats = scenario.stats(0);
    Eigen::VectorXd phases = Eigen::VectorXd::Zero(32);
    const PhaseDesign design(phases);
    const double gamma = 0.7;

    std::mt19937_64 rng(99);
    const int n = 200000;
    Complex sum = 0.0;
    double sum_dev = 0.0;
    const Complex mean_expected =
        std::polar(1.0, gamma) * design.w().dot(stats.los);
    for (int i = 0; i < n; ++i) {
        const Complex h = sample_channel(design, stats, gamma, rng);
        sum += h;
        sum_dev += std::norm(h - mean_expected);
    }
    const Complex mean = sum / static_cast<double>(n);
    const double var_expected =
        std::real(design.w().dot(stats.cov * design.w()));
    CHECK(std::abs(mean - mean_expected) < 4.0 * std::sqrt(var_expected / n));
    CHECK(sum_dev / n == doctest::Approx(var_expected).epsilon(0.02));
}
