// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/scenario.hpp"

#include <limits>
#include <stdexcept>

#include "risdet/detection.hpp"

namespace risdet {

std::vector<Direction> scatterer_directions(const Location& area_center,
                                            double alpha_rad, int L) {
    if (L == 0) return {};
    if (L != 2)
        throw std::invalid_argument("scatterer_directions: the +/- alpha scheme needs L = 2");
    const Direction center = area_center.direction();
    return {Direction{center.theta - alpha_rad, center.phi},
            Direction{center.theta + alpha_rad, center.phi}};
}

Scenario::Scenario(const ScenarioConfig& config)
    : config_(config),
      geom_(config.ux_count, config.uy_count,
            config.spacing_factor * config.wavelength,
            config.spacing_factor * config.wavelength, config.wavelength) {
    if (config_.params.wavelength != config_.wavelength)
        throw std::invalid_argument("Scenario: inconsistent wavelengths");
    CoverageArea area{config_.area_center, config_.area_width_y,
                      config_.area_length_z, config_.grid_ny, config_.grid_nz};
    samples_ = sample_area(area);
    scatterer_dirs_ = scatterer_directions(config_.area_center,
                                           config_.alpha_rad,
                                           config_.num_scatterers);
    stats_.reserve(samples_.size());
    for (const auto& q : samples_) stats_.push_back(stats_for(q));
}

ChannelStatistics Scenario::stats_for(const Location& device) const {
    ChannelStatistics st;
    st.los = los_vector(device, config_.ap, geom_, config_.polarization);
    if (scatterer_dirs_.empty()) {
        st.cov = CMatrix::Zero(geom_.cell_count(), geom_.cell_count());
        return st;
    }
    ScattererSet set{scatterer_dirs_,
                     scatterer_variances_from_k(
                         device, config_.k_factor_db,
                         static_cast<int>(scatterer_dirs_.size()),
                         config_.wavelength)};
    st.cov = nlos_covariance(device, config_.ap, set, geom_,
                             config_.polarization);
    return st;
}

std::pair<double, std::size_t> Scenario::min_prob_detection(
    const PhaseDesign& design) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < stats_.size(); ++i) {
        const double pd = prob_detection(design, stats_[i], config_.params);
        if (pd < best) {
            best = pd;
            argmin = i;
        }
    }
    return {best, argmin};
}

}  // namespace risdet
