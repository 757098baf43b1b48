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

#include "risdet/detection.hpp"
#include "risdet/scenario.hpp"

using namespace risdet;

TEST_CASE("scaled Bessel I0 against reference values") {
    // scipy.special.i0e reference values.
    CHECK(bessel_i0_scaled(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bessel_i0_scaled(0.5) == doctest::Approx(0.64503527044915).epsilon(1e-12));
    CHECK(bessel_i0_scaled(2.0) == doctest::Approx(0.308508322553671).epsilon(1e-12));
    CHECK(bessel_i0_scaled(10.0) == doctest::Approx(0.1278333371634286).epsilon(1e-12));
    // Both sides of the series/asymptotic switch.
    CHECK(bessel_i0_scaled(17.9) == doctest::Approx(0.09497437958965067).epsilon(1e-12));
    CHECK(bessel_i0_scaled(18.1) == doctest::Approx(0.09444046930133954).epsilon(1e-12));
    CHECK(bessel_i0_scaled(50.0) == doctest::Approx(0.056561626647454184).epsilon(1e-12));
    CHECK(bessel_i0_scaled(300.0) == doctest::Approx(0.02304255841508546).epsilon(1e-12));
}

TEST_CASE("Marcum Q1 against reference values") {
    // scipy.stats.ncx2.sf(b^2, 2, a^2) reference values.
    CHECK(marcum_q1(0.5, 0.5) == doctest::Approx(0.8955085810698598).epsilon(1e-10));
    CHECK(marcum_q1(1.0, 2.0) == doctest::Approx(0.26901206003591).epsilon(1e-10));
    CHECK(marcum_q1(3.0, 1.0) == doctest::Approx(0.989170550178452).epsilon(1e-10));
    CHECK(marcum_q1(2.5, 2.5) == doctest::Approx(0.5815612755664836).epsilon(1e-10));
    CHECK(marcum_q1(6.0, 7.0) == doctest::Approx(0.17810236487852954).epsilon(1e-9));
    CHECK(marcum_q1(10.0, 3.0) == doctest::Approx(0.9999999999993124).epsilon(1e-12));
    CHECK(std::abs(marcum_q1(0.1, 9.9) - 6.571972991383881e-22) < 1e-24);
}

TEST_CASE("Marcum Q1 boundary and monotonicity properties") {
    for (double b = 0.0; b <= 10.0; b += 0.25)
        CHECK(std::abs(marcum_q1(0.0, b) - std::exp(-0.5 * b * b)) < 1e-12);
    for (double a = 0.0; a <= 10.0; a += 0.5)
        CHECK(marcum_q1(a, 0.0) == 1.0);
    // Increasing in a, decreasing in b.
    for (double a = 0.0; a < 6.0; a += 0.5)
        CHECK(marcum_q1(a + 0.5, 2.0) > marcum_q1(a, 2.0));
    for (double b = 0.5; b < 6.0; b += 0.5)
        CHECK(marcum_q1(2.0, b + 0.5) < marcum_q1(2.0, b));
    CHECK_THROWS(marcum_q1(-1.0, 2.0));
    CHECK_THROWS(marcum_q1(1.0, -2.0));
}

TEST_CASE("Gaussian tail function") {
    CHECK(gaussian_q(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gaussian_q(1.2) == doctest::Approx(0.11506967022170822).epsilon(1e-13));
    CHECK(gaussian_q(-2.5) == doctest::Approx(0.9937903346742238).epsilon(1e-13));
}

TEST_CASE("detection threshold") {
    CHECK(threshold_for_pfa(0.1) ==
          doctest::Approx(2.302585092994046).epsilon(1e-14));
    CHECK(threshold_for_pfa(1.0) == 0.0);
    CHECK_THROWS(threshold_for_pfa(0.0));
    CHECK_THROWS(threshold_for_pfa(1.5));
}

TEST_CASE("detection metric on a hand-computed case") {
    CVector preamble(2);
    preamble << Complex(std::numbers::sqrt2 / 2.0, 0.0),
        Complex(std::numbers::sqrt2 / 2.0, 0.0);
    CVector x(2);
    x << Complex(1.0, 1.0), Complex(1.0, -1.0);
    // |s^H x|^2 = |sqrt(2)|^2 = 2.
    CHECK(detection_metric(x, preamble, 0.5) ==
          doctest::Approx(4.0).epsilon(1e-14));
    CVector bad = 2.0 * preamble;
    CHECK_THROWS(detection_metric(x, bad, 0.5));
}

TEST_CASE("gamma estimate recovers a planted value and maximizes the fit") {
    std::mt19937_64 rng(7);
    CVector y(5), noise(5);
    for (int i = 0; i < 5; ++i) {
        y(i) = standard_complex_normal(rng);
        noise(i) = 0.1 * standard_complex_normal(rng);
    }
    const Complex z(0.8, -0.3);
    const Complex gamma_true = std::polar(1.3, 0.4);
    const CVector x = y * z * gamma_true + noise;
    const Complex gamma_hat = estimate_gamma(x, y, z);

    auto residual = [&](Complex g) { return (x - y * z * g).squaredNorm(); };
    const double at_hat = residual(gamma_hat);
    // The estimate beats a dense sweep over phase at its own magnitude.
    for (int k = 0; k < 720; ++k) {
        const Complex g =
            std::polar(std::abs(gamma_hat), k * std::numbers::pi / 360.0);
        CHECK(at_hat <= residual(g) + 1e-12);
    }
    // Noise-free input recovers gamma exactly.
    const Complex exact = estimate_gamma(y * z * gamma_true, y, z);
    CHECK(std::abs(exact - gamma_true) < 1e-12);
}

TEST_CASE("closed-form detection probability on a frozen scenario point") {
    const Scenario scenario{ScenarioConfig{}};
    const PhaseDesign design(Eigen::VectorXd::Zero(32));
    // Location 40 is the area center of the default 9 x 9 grid.
    const auto probs =
        detection_probabilities(design, scenario.stats(40), scenario.params());
    // Independently computed chi-squared parameters and P_D.
    CHECK(std::sqrt(probs.noncentrality) ==
          doctest::Approx(1.080776078507595).epsilon(1e-9));
    CHECK(probs.pd == doctest::Approx(0.25452937123433816).epsilon(1e-8));
    CHECK(probs.pfa == 0.1);
}

TEST_CASE("simulated rates agree with the closed form") {
    const Scenario scenario{ScenarioConfig{}};
    const PhaseDesign design(Eigen::VectorXd::Zero(32));
    const auto& stats = scenario.stats(40);
    const double pd = prob_detection(design, stats, scenario.params());

    std::mt19937_64 rng(2024);
    const long trials = 20000;
    const auto rates = monte_carlo_rates(design, stats, scenario.params(),
                                         std::nullopt, trials, rng);
    const double sd_pd = std::sqrt(pd * (1.0 - pd) / trials);
    const double sd_pfa = std::sqrt(0.1 * 0.9 / trials);
    CHECK(std::abs(rates.empirical_pd - pd) < 4.0 * sd_pd);
    CHECK(std::abs(rates.empirical_pfa - 0.1) < 4.0 * sd_pfa);
}
