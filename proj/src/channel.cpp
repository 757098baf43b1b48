// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risdet {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kSqrt4Pi = 3.5449077018110320546;
}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double path_loss_magnitude(double distance, double wavelength) {
    if (distance <= 0.0)
        throw std::invalid_argument("path_loss_magnitude: distance must be positive");
    return wavelength / (kFourPi * distance);
}

CVector los_vector(const Location& device, const Location& ap,
                   const RisGeometry& geom, double polarization) {
    const double lambda = geom.wavelength();
    const double gain_r = path_loss_magnitude(ap.distance(), lambda);
    const double gain_t = path_loss_magnitude(device.distance(), lambda);
    const Complex c =
        unit_cell_factor(ap.direction(), device.direction(), polarization, geom);
    const CVector a = array_response(ap.direction(), device.direction(), geom);
    // The unknown LoS phase e^{j(phi(q_r)+phi(q_t))} is deliberately not
    // applied here; it enters only as a simulation input.
    return kSqrt4Pi / lambda * gain_r * gain_t * c * a;
}

CMatrix nlos_covariance(const Location& device, const Location& ap,
                        const ScattererSet& scatterers,
                        const RisGeometry& geom, double polarization) {
    (void)device;
    const int U = geom.cell_count();
    const double lambda = geom.wavelength();
    const double gain_r = path_loss_magnitude(ap.distance(), lambda);
    CMatrix cov = CMatrix::Zero(U, U);
    if (scatterers.directions.size() != scatterers.variances.size())
        throw std::invalid_argument("nlos_covariance: directions/variances size mismatch");
    for (std::size_t l = 0; l < scatterers.directions.size(); ++l) {
        const Complex c = unit_cell_factor(ap.direction(),
                                           scatterers.directions[l],
                                           polarization, geom);
        const CVector a =
            array_response(ap.direction(), scatterers.directions[l], geom);
        cov += scatterers.variances[l] * std::norm(c) * (a * a.adjoint());
    }
    cov *= kFourPi / (lambda * lambda) * gain_r * gain_r;
    return cov;
}

std::vector<double> scatterer_variances_from_k(const Location& device,
                                               double k_factor_db, int L,
                                               double wavelength) {
    if (L < 1)
        throw std::invalid_argument("scatterer_variances_from_k: L must be >= 1");
    const double k_lin = db_to_linear(k_factor_db);
    if (k_lin <= 0.0)
        throw std::invalid_argument("scatterer_variances_from_k: K must be positive");
    const double gain_t = path_loss_magnitude(device.distance(), wavelength);
    return std::vector<double>(L, gain_t * gain_t / (k_lin * L));
}

double standard_normal(std::mt19937_64& rng) {
    // Box-Muller; rejects u1 == 0 to keep log finite.
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    double u1;
    do {
        u1 = static_cast<double>(rng() >> 11) * kScale;
    } while (u1 <= 0.0);
    const double u2 = static_cast<double>(rng() >> 11) * kScale;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

Complex standard_complex_normal(std::mt19937_64& rng) {
    constexpr double kScale = 1.0 / 9007199254740992.0;
    double u1;
    do {
        u1 = static_cast<double>(rng() >> 11) * kScale;
    } while (u1 <= 0.0);
    const double u2 = static_cast<double>(rng() >> 11) * kScale;
    const double r = std::sqrt(-std::log(u1));  // variance 1/2 per component
    return std::polar(r, 2.0 * std::numbers::pi * u2);
}

Complex sample_channel(const PhaseDesign& design,
                       const ChannelStatistics& stats, double gamma_phase,
                       std::mt19937_64& rng, long* clamp_warnings) {
    const CVector& w = design.w();
    const Complex mean = std::polar(1.0, gamma_phase) * w.dot(stats.los);
    double var = std::real(w.dot(stats.cov * w));
    if (var < 0.0) {
        if (clamp_warnings) ++(*clamp_warnings);
        var = 0.0;
    }
    return mean + std::sqrt(var) * standard_complex_normal(rng);
}

}  // namespace risdet
