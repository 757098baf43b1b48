// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_GEOMETRY_HPP
#define RISDET_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace risdet {

/// Direction of a point seen from the RIS center: elevation measured from
/// the +z axis (the RIS normal), azimuth from +x in the x-y plane.
struct Direction {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // (-pi, pi]
};

void sphere_to_cart(double d, double theta, double phi,
                    double& x, double& y, double& z);
void cart_to_sphere(double x, double y, double z,
                    double& d, double& theta, double& phi);

/// A point in 3-D space, kept consistent in both Cartesian and spherical
/// views (origin at the RIS center).
class Location {
  public:
    static Location from_cart(double x, double y, double z);
    static Location from_sphere(double d, double theta, double phi);

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    double distance() const { return d_; }
    double theta() const { return theta_; }
    double phi() const { return phi_; }
    Direction direction() const { return {theta_, phi_}; }

  private:
    Location() = default;
    double x_ = 0.0, y_ = 0.0, z_ = 0.0;
    double d_ = 0.0, theta_ = 0.0, phi_ = 0.0;
};

/// Rectangular coverage area in the plane x = center.x(), sampled on a
/// uniform grid that includes the rectangle boundary for n > 1.
struct CoverageArea {
    Location center = Location::from_cart(0.0, 0.0, 0.0);
    double width_y = 0.0;   // D_y
    double length_z = 0.0;  // D_z
    int n_y = 1;
    int n_z = 1;
};

/// Row-major grid of sample locations (z outer, y inner); n = 1 collapses
/// an axis to the center line.
std::vector<Location> sample_area(const CoverageArea& area);

}  // namespace risdet

#endif  // RISDET_GEOMETRY_HPP
