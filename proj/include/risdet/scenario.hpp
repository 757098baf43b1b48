// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_SCENARIO_HPP
#define RISDET_SCENARIO_HPP

#include <numbers>
#include <vector>

#include "risdet/channel.hpp"
#include "risdet/geometry.hpp"
#include "risdet/ris.hpp"

namespace risdet {

/// Scatterer incident directions: the area-center direction tilted by
/// +/- alpha within the plane spanned by the RIS normal and the
/// area-center direction (polar-angle offsets at fixed azimuth).
std::vector<Direction> scatterer_directions(const Location& area_center,
                                            double alpha_rad, int L);

struct ScenarioConfig {
    Location area_center = Location::from_cart(-10.0, -30.0, 30.0);
    double area_width_y = 20.0;   // D_y
    double area_length_z = 20.0;  // D_z
    int grid_ny = 9;
    int grid_nz = 9;
    Location ap = Location::from_sphere(25.0, 90.0 * std::numbers::pi / 180.0,
                                        37.0 * std::numbers::pi / 180.0);
    int ux_count = 4;
    int uy_count = 8;
    double spacing_factor = 0.5;  // cell spacing in wavelengths
    double wavelength = 0.1;
    double polarization = 0.0;
    double k_factor_db = 3.0;
    double alpha_rad = 30.0 * std::numbers::pi / 180.0;
    int num_scatterers = 2;
    SystemParams params{0.0, 4, 64, -100.0, 0.1, 0.1};
};

/// One fully resolved system instance: sampled coverage area, per-location
/// channel statistics, and receiver parameters. Immutable after
/// construction.
class Scenario {
  public:
    explicit Scenario(const ScenarioConfig& config);

    const ScenarioConfig& config() const { return config_; }
    const RisGeometry& geometry() const { return geom_; }
    const Location& ap() const { return config_.ap; }
    const SystemParams& params() const { return config_.params; }
    const std::vector<Location>& samples() const { return samples_; }
    const std::vector<Direction>& scatterers() const { return scatterer_dirs_; }
    std::size_t sample_count() const { return samples_.size(); }

    const ChannelStatistics& stats(std::size_t i) const { return stats_[i]; }
    ChannelStatistics stats_for(const Location& device) const;

    /// Smallest closed-form P_D over the sampled area and its argmin index.
    std::pair<double, std::size_t> min_prob_detection(
        const PhaseDesign& design) const;

  private:
    ScenarioConfig config_;
    RisGeometry geom_;
    std::vector<Location> samples_;
    std::vector<Direction> scatterer_dirs_;
    std::vector<ChannelStatistics> stats_;
};

}  // namespace risdet

#endif  // RISDET_SCENARIO_HPP
