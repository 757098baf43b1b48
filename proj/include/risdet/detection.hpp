// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_DETECTION_HPP
#define RISDET_DETECTION_HPP

#include <optional>
#include <random>

#include "risdet/channel.hpp"

namespace risdet {

/// Exponentially scaled modified Bessel function e^{-|x|} I_0(x).
double bessel_i0_scaled(double x);

/// First-order Marcum Q function, absolute accuracy <= 1e-10.
double marcum_q1(double a, double b);

/// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt(2)).
double gaussian_q(double x);

/// Detection threshold t = -ln(P_F).
double threshold_for_pfa(double pfa);

/// Correlation detection metric |s^H x|^2 / sigma^2 for a normalized
/// preamble.
double detection_metric(const CVector& x, const CVector& preamble,
                        double noise_power);

/// MLE of the unknown LoS phase factor, (1/z) y^H x / (y^H y).
Complex estimate_gamma(const CVector& x, const CVector& y, Complex z);

struct DetectionOutcome {
    double metric = 0.0;
    double threshold = 0.0;
    bool decided_active = false;
};

struct DetectionProbabilities {
    double pfa = 0.0;
    double pd = 0.0;
    double noncentrality = 0.0;  // 2P |w^H h|^2 / (w^H C w P + sigma^2)
    double scale = 0.0;          // (w^H C w P + sigma^2) / (2 sigma^2)
};

/// Closed-form probability of detection for a design / channel / system
/// triple, with the chi-squared parameters it derives from.
DetectionProbabilities detection_probabilities(const PhaseDesign& design,
                                               const ChannelStatistics& stats,
                                               const SystemParams& params);

double prob_detection(const PhaseDesign& design,
                      const ChannelStatistics& stats,
                      const SystemParams& params);

struct MonteCarloRates {
    double empirical_pfa = 0.0;
    double empirical_pd = 0.0;
    long trials = 0;
};

/// Simulates the full hypothesis test: noise-only and active-device
/// receptions, detection metric against t = -ln(P_F). The LoS phase is
/// drawn uniformly per trial unless `gamma_phase` is fixed.
MonteCarloRates monte_carlo_rates(const PhaseDesign& design,
                                  const ChannelStatistics& stats,
                                  const SystemParams& params,
                                  std::optional<double> gamma_phase,
                                  long trials, std::mt19937_64& rng);

}  // namespace risdet

#endif  // RISDET_DETECTION_HPP
