// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_BASELINE_HPP
#define RISDET_BASELINE_HPP

#include <utility>

#include "risdet/scenario.hpp"

namespace risdet {

/// Analytical wide-beam baseline: linear steering to the area center plus a
/// separable quadratic phase. Negative curvature fields request the
/// auto-fit over a coarse candidate grid.
struct QuadraticDesignParams {
    double curvature_y = -1.0;  // broadening along the cell x axis
    double curvature_z = -1.0;  // broadening along the cell y axis
};

/// Curvature pair from a fixed octave-spaced candidate set that maximizes
/// the worst-case closed-form detection probability over the area samples.
std::pair<double, double> fit_curvatures(const Scenario& scenario);

PhaseDesign quadratic_design(const Scenario& scenario,
                             QuadraticDesignParams params = {});

}  // namespace risdet

#endif  // RISDET_BASELINE_HPP
