// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/geometry.hpp"

#include <algorithm>

namespace risdet {

void sphere_to_cart(double d, double theta, double phi,
                    double& x, double& y, double& z) {
    x = d * std::sin(theta) * std::cos(phi);
    y = d * std::sin(theta) * std::sin(phi);
    z = d * std::cos(theta);
}

void cart_to_sphere(double x, double y, double z,
                    double& d, double& theta, double& phi) {
    d = std::sqrt(x * x + y * y + z * z);
    if (d == 0.0) {
        theta = 0.0;
        phi = 0.0;
        return;
    }
    theta = std::acos(std::clamp(z / d, -1.0, 1.0));
    // On-axis points have no meaningful azimuth; fix phi = 0.
    phi = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
}

Location Location::from_cart(double x, double y, double z) {
    Location q;
    q.x_ = x;
    q.y_ = y;
    q.z_ = z;
    cart_to_sphere(x, y, z, q.d_, q.theta_, q.phi_);
    return q;
}

Location Location::from_sphere(double d, double theta, double phi) {
    if (d < 0.0) throw std::invalid_argument("Location: negative distance");
    Location q;
    q.d_ = d;
    q.theta_ = theta;
    q.phi_ = phi;
    sphere_to_cart(d, theta, phi, q.x_, q.y_, q.z_);
    return q;
}

std::vector<Location> sample_area(const CoverageArea& area) {
    if (area.n_y < 1 || area.n_z < 1)
        throw std::invalid_argument("sample_area: grid resolution must be >= 1");
    const double cx = area.center.x();
    const double cy = area.center.y();
    const double cz = area.center.z();
    std::vector<Location> samples;
    samples.reserve(static_cast<std::size_t>(area.n_y) * area.n_z);
    for (int iz = 0; iz < area.n_z; ++iz) {
        const double z = (area.n_z == 1)
                             ? cz
                             : cz - area.length_z / 2.0 +
                                   area.length_z * iz / (area.n_z - 1);
        for (int iy = 0; iy < area.n_y; ++iy) {
            const double y = (area.n_y == 1)
                                 ? cy
                                 : cy - area.width_y / 2.0 +
                                       area.width_y * iy / (area.n_y - 1);
            samples.push_back(Location::from_cart(cx, y, z));
        }
    }
    return samples;
}

}  // namespace risdet
