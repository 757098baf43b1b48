// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_CHANNEL_HPP
#define RISDET_CHANNEL_HPP

#include <random>
#include <vector>

#include "risdet/geometry.hpp"
#include "risdet/ris.hpp"

namespace risdet {

double dbm_to_watt(double dbm);
double db_to_linear(double db);

/// Scatterer clusters of the device-RIS link: incident directions are fixed
/// across the coverage area, per-location variances are set separately.
struct ScattererSet {
    std::vector<Direction> directions;       // size L
    std::vector<double> variances;           // size L, per device location
};

/// Receiver-side system parameters; powers stored in dBm, converted to
/// linear watts on access.
struct SystemParams {
    double tx_power_dbm = 0.0;
    int antennas = 1;       // M
    int preamble_len = 1;   // S
    double noise_power_dbm = -100.0;
    double pfa = 0.1;
    double wavelength = 0.1;

    double tx_power_w() const { return dbm_to_watt(tx_power_dbm); }
    double noise_w() const { return dbm_to_watt(noise_power_dbm); }
    /// Effective power P = M * P_tx * S after coherent combining.
    double effective_power() const {
        return antennas * tx_power_w() * preamble_len;
    }
};

/// Statistical description of the end-to-end channel for one device
/// location: LoS mean vector (without the unknown global phase) and the
/// NLoS covariance of the cascaded link.
struct ChannelStatistics {
    CVector los;   // h^LoS
    CMatrix cov;   // C, Hermitian PSD, rank <= L
    CMatrix los_outer() const { return los * los.adjoint(); }
};

/// Free-space path-loss magnitude lambda / (4 pi d).
double path_loss_magnitude(double distance, double wavelength);

CVector los_vector(const Location& device, const Location& ap,
                   const RisGeometry& geom, double polarization);

CMatrix nlos_covariance(const Location& device, const Location& ap,
                        const ScattererSet& scatterers,
                        const RisGeometry& geom, double polarization);

/// Equal-variance scheme: every cluster carries |hbar(q_t)|^2 / (K * L).
std::vector<double> scatterer_variances_from_k(const Location& device,
                                               double k_factor_db, int L,
                                               double wavelength);

/// Draws h = e^{j gamma} w^H h^LoS + CN(0, w^H C w). The count of variance
/// clamps (numerically negative w^H C w) is accumulated in `clamp_warnings`.
Complex sample_channel(const PhaseDesign& design,
                       const ChannelStatistics& stats, double gamma_phase,
                       std::mt19937_64& rng, long* clamp_warnings = nullptr);

/// Portable standard-normal draw (Box-Muller on mt19937_64 uniforms);
/// avoids distribution implementations that differ across toolchains.
double standard_normal(std::mt19937_64& rng);
Complex standard_complex_normal(std::mt19937_64& rng);

}  // namespace risdet

#endif  // RISDET_CHANNEL_HPP
