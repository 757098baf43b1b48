// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_RIS_HPP
#define RISDET_RIS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "risdet/geometry.hpp"

namespace risdet {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector3 = Eigen::Vector3d;

/// Uniform planar array of unit cells in the x-y plane, centered at the
/// origin. Cell counts along each axis must be even.
class RisGeometry {
  public:
    RisGeometry(int ux_count, int uy_count, double spacing_x,
                double spacing_y, double wavelength);

    int ux_count() const { return ux_; }
    int uy_count() const { return uy_; }
    int cell_count() const { return ux_ * uy_; }
    double spacing_x() const { return dx_; }
    double spacing_y() const { return dy_; }
    double wavelength() const { return lambda_; }

    /// Integer grid offsets (u_x, u_y) of cell u.
    std::pair<int, int> cell_index(int u) const;
    RVector3 cell_coords(int u) const;

  private:
    int ux_, uy_;
    double dx_, dy_, lambda_;
};

/// Unit-modulus phase-shift vector w, one entry per unit cell.
class PhaseDesign {
  public:
    explicit PhaseDesign(const Eigen::VectorXd& phases);
    static PhaseDesign from_vector(const CVector& w, double tol = 1e-9);

    const CVector& w() const { return w_; }
    const Eigen::VectorXd& phases() const { return phases_; }
    Eigen::Index size() const { return w_.size(); }

  private:
    Eigen::VectorXd phases_;
    CVector w_;
};

/// Wave vector of a plane wave arriving from (departing to) `dir`.
RVector3 wave_vector(const Direction& dir, double wavelength);

/// Per-cell phase terms for the direction pair (receive side, transmit side).
CVector array_response(const Direction& dir_r, const Direction& dir_t,
                       const RisGeometry& geom);

/// Angle- and polarization-dependent complex reflection amplitude of a
/// single unit cell. Throws when the direction pair is degenerate.
Complex unit_cell_factor(const Direction& dir_r, const Direction& dir_t,
                         double polarization, const RisGeometry& geom);

/// End-to-end RIS response g for a phase design and direction pair.
Complex response_gain(const PhaseDesign& design, const Direction& dir_r,
                      const Direction& dir_t, double polarization,
                      const RisGeometry& geom);

/// 10*log10 |g|^2 evaluated per grid point, input ordering preserved.
std::vector<double> reflection_pattern(const PhaseDesign& design,
                                       const Direction& ap_dir,
                                       const std::vector<Location>& grid,
                                       double polarization,
                                       const RisGeometry& geom);

}  // namespace risdet

#endif  // RISDET_RIS_HPP
