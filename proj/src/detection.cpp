// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risdet {

namespace {

// Power series around 0; converges quickly for moderate arguments.
double i0_scaled_series(double x) {
    const double ax = std::abs(x);
    const double q = ax * ax / 4.0;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum * std::exp(-ax);
}

// Asymptotic expansion of e^{-x} I_0(x) for large x.
double i0_scaled_asymptotic(double x) {
    const double ax = std::abs(x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double num = (2.0 * k - 1.0);
        term *= num * num / (8.0 * ax * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * ax);
}

// Shifted integrand of the Marcum integral: t exp(-(t-a)^2/2) * e^{-at} I0(at)
// combined so the exponentials stay in range.
double marcum_integrand(double t, double a) {
    const double d = t - a;
    return t * std::exp(-0.5 * d * d) * bessel_i0_scaled(a * t);
}

double adaptive_simpson(double a_param, double lo, double hi, double f_lo,
                        double f_mid, double f_hi, double whole, double tol,
                        int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double f_lm = marcum_integrand(lm, a_param);
    const double f_rm = marcum_integrand(rm, a_param);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rm + f_hi);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(a_param, lo, mid, f_lo, f_lm, f_mid, left,
                            tol / 2.0, depth - 1) +
           adaptive_simpson(a_param, mid, hi, f_mid, f_rm, f_hi, right,
                            tol / 2.0, depth - 1);
}

double marcum_q1_quadrature(double a, double b) {
    const double hi = std::max(a, b) + 45.0;
    if (b >= hi) return 0.0;
    const double mid = 0.5 * (b + hi);
    const double f_lo = marcum_integrand(b, a);
    const double f_mid = marcum_integrand(mid, a);
    const double f_hi = marcum_integrand(hi, a);
    const double whole = (hi - b) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    const double value =
        adaptive_simpson(a, b, hi, f_lo, f_mid, f_hi, whole, 1e-13, 48);
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace

double bessel_i0_scaled(double x) {
    const double ax = std::abs(x);
    return ax < 18.0 ? i0_scaled_series(ax) : i0_scaled_asymptotic(ax);
}

double marcum_q1(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a < 0.0 || b < 0.0)
        throw std::invalid_argument("marcum_q1: arguments must be finite nonnegative");
    if (b == 0.0) return 1.0;
    // The canonical series underflows for very large parameters; integrate
    // the defining integral there instead.
    if (a > 30.0 || b > 30.0) return marcum_q1_quadrature(a, b);

    // Q1(a,b) = sum_k Pois(k; a^2/2) * Pr{Poisson(b^2/2) <= k}.
    const double x = 0.5 * a * a;
    const double y = 0.5 * b * b;
    double pa = std::exp(-x);   // Pois(k; x)
    double pb = std::exp(-y);   // Pois(k; y)
    double cdf_b = pb;
    double cum_a = pa;
    double sum = pa * cdf_b;
    for (int k = 1; k < 4000; ++k) {
        pa *= x / k;
        pb *= y / k;
        cdf_b += pb;
        cum_a += pa;
        sum += pa * cdf_b;
        if (1.0 - cum_a < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double gaussian_q(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double threshold_for_pfa(double pfa) {
    if (!(pfa > 0.0 && pfa <= 1.0))
        throw std::invalid_argument("threshold_for_pfa: P_F must be in (0, 1]");
    return -std::log(pfa);
}

double detection_metric(const CVector& x, const CVector& preamble,
                        double noise_power) {
    if (std::abs(preamble.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("detection_metric: preamble must be normalized");
    return std::norm(preamble.dot(x)) / noise_power;
}

Complex estimate_gamma(const CVector& x, const CVector& y, Complex z) {
    const double yy = y.squaredNorm();
    if (yy == 0.0 || z == Complex(0.0, 0.0))
        throw std::invalid_argument("estimate_gamma: y and z must be nonzero");
    return y.dot(x) / (yy * z);
}

DetectionProbabilities detection_probabilities(const PhaseDesign& design,
                                               const ChannelStatistics& stats,
                                               const SystemParams& params) {
    const CVector& w = design.w();
    const double power = params.effective_power();
    const double sigma2 = params.noise_w();
    const double los_gain = std::norm(w.dot(stats.los));
    const double nlos_var = std::max(0.0, std::real(w.dot(stats.cov * w)));
    const double denom = nlos_var * power + sigma2;

    DetectionProbabilities out;
    out.pfa = params.pfa;
    out.noncentrality = 2.0 * power * los_gain / denom;
    out.scale = denom / (2.0 * sigma2);
    const double b2 = -2.0 * sigma2 * std::log(params.pfa) / denom;
    out.pd = marcum_q1(std::sqrt(out.noncentrality), std::sqrt(b2));
    return out;
}

double prob_detection(const PhaseDesign& design,
                      const ChannelStatistics& stats,
                      const SystemParams& params) {
    return detection_probabilities(design, stats, params).pd;
}

MonteCarloRates monte_carlo_rates(const PhaseDesign& design,
                                  const ChannelStatistics& stats,
                                  const SystemParams& params,
                                  std::optional<double> gamma_phase,
                                  long trials, std::mt19937_64& rng) {
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_rates: trials must be >= 1");
    const int S = params.preamble_len;
    const double sigma = std::sqrt(params.noise_w());
    const double sigma2 = params.noise_w();
    const double sqrt_p = std::sqrt(params.effective_power());
    const double t = threshold_for_pfa(params.pfa);
    CVector preamble = CVector::Constant(S, Complex(1.0, 0.0));
    preamble /= preamble.norm();

    long hits_h0 = 0, hits_h1 = 0;
    CVector x(S);
    for (long trial = 0; trial < trials; ++trial) {
        // H0: noise only.
        for (int s = 0; s < S; ++s)
            x(s) = sigma * standard_complex_normal(rng);
        if (detection_metric(x, preamble, sigma2) > t) ++hits_h0;

        // H1: active device.
        const double gamma =
            gamma_phase ? *gamma_phase
                        : 2.0 * std::numbers::pi *
                              (static_cast<double>(rng() >> 11) *
                               (1.0 / 9007199254740992.0));
        const Complex h = sample_channel(design, stats, gamma, rng);
        for (int s = 0; s < S; ++s)
            x(s) = h * sqrt_p * preamble(s) + sigma * standard_complex_normal(rng);
        if (detection_metric(x, preamble, sigma2) > t) ++hits_h1;
    }
    return {static_cast<double>(hits_h0) / trials,
            static_cast<double>(hits_h1) / trials, trials};
}

}  // namespace risdet
