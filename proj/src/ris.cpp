// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/ris.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risdet {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt4Pi = 3.5449077018110320546;  // sqrt(4*pi)
// Below this the direction pair is treated as degenerate for the unit cell.
constexpr double kDenominatorFloor = 1e-12;
}  // namespace

RisGeometry::RisGeometry(int ux_count, int uy_count, double spacing_x,
                         double spacing_y, double wavelength)
    : ux_(ux_count), uy_(uy_count), dx_(spacing_x), dy_(spacing_y),
      lambda_(wavelength) {
    if (ux_ <= 0 || uy_ <= 0 || ux_ % 2 != 0 || uy_ % 2 != 0)
        throw std::invalid_argument("RisGeometry: cell counts must be positive even");
    if (dx_ <= 0.0 || dy_ <= 0.0 || lambda_ <= 0.0)
        throw std::invalid_argument("RisGeometry: spacings and wavelength must be positive");
}

std::pair<int, int> RisGeometry::cell_index(int u) const {
    if (u < 0 || u >= cell_count())
        throw std::out_of_range("RisGeometry::cell_index: index out of range");
    const int ux = u % ux_ - ux_ / 2 + 1;
    const int uy = u / ux_ - uy_ / 2 + 1;
    return {ux, uy};
}

RVector3 RisGeometry::cell_coords(int u) const {
    const auto [ux, uy] = cell_index(u);
    return {dx_ * ux, dy_ * uy, 0.0};
}

PhaseDesign::PhaseDesign(const Eigen::VectorXd& phases) : phases_(phases) {
    w_.resize(phases.size());
    for (Eigen::Index u = 0; u < phases.size(); ++u)
        w_(u) = std::polar(1.0, phases(u));
}

PhaseDesign PhaseDesign::from_vector(const CVector& w, double tol) {
    Eigen::VectorXd phases(w.size());
    for (Eigen::Index u = 0; u < w.size(); ++u) {
        if (std::abs(std::abs(w(u)) - 1.0) > tol)
            throw std::invalid_argument("PhaseDesign: entry is not unit modulus");
        phases(u) = std::arg(w(u));
    }
    return PhaseDesign(phases);
}

RVector3 wave_vector(const Direction& dir, double wavelength) {
    const double k = kTwoPi / wavelength;
    return {k * std::sin(dir.theta) * std::cos(dir.phi),
            k * std::sin(dir.theta) * std::sin(dir.phi),
            k * std::cos(dir.theta)};
}

CVector array_response(const Direction& dir_r, const Direction& dir_t,
                       const RisGeometry& geom) {
    const RVector3 k = wave_vector(dir_r, geom.wavelength()) +
                       wave_vector(dir_t, geom.wavelength());
    CVector a(geom.cell_count());
    for (int u = 0; u < geom.cell_count(); ++u)
        a(u) = std::polar(1.0, k.dot(geom.cell_coords(u)));
    return a;
}

Complex unit_cell_factor(const Direction& dir_r, const Direction& dir_t,
                         double polarization, const RisGeometry& geom) {
    const double ct = std::cos(dir_t.theta);
    const double st = std::sin(dir_t.theta);
    const double cr = std::cos(dir_r.theta);
    const double cpol = std::cos(polarization);
    const double spol = std::sin(polarization);

    const double n1 = cpol * cr * std::sin(dir_r.phi) -
                      spol * cr * std::cos(dir_r.phi);
    const double n2 = spol * std::sin(dir_r.phi) + cpol * std::cos(dir_r.phi);
    const double numerator = std::sqrt(n1 * n1 + n2 * n2);

    const double d1 = cpol * st * std::cos(dir_t.phi) +
                      spol * st * std::sin(dir_t.phi);
    const double denominator = std::sqrt(d1 * d1 + ct * ct);
    if (denominator < kDenominatorFloor)
        throw std::domain_error("unit_cell_factor: degenerate direction pair");

    const double amplitude = kSqrt4Pi * geom.spacing_x() * geom.spacing_y() /
                             geom.wavelength() * ct * numerator / denominator;
    return Complex(0.0, amplitude);
}

Complex response_gain(const PhaseDesign& design, const Direction& dir_r,
                      const Direction& dir_t, double polarization,
                      const RisGeometry& geom) {
    if (design.size() != geom.cell_count())
        throw std::invalid_argument("response_gain: design does not match geometry");
    const Complex c = unit_cell_factor(dir_r, dir_t, polarization, geom);
    const CVector a = array_response(dir_r, dir_t, geom);
    return kSqrt4Pi / geom.wavelength() * c * design.w().dot(a);
}

std::vector<double> reflection_pattern(const PhaseDesign& design,
                                       const Direction& ap_dir,
                                       const std::vector<Location>& grid,
                                       double polarization,
                                       const RisGeometry& geom) {
    if (grid.empty())
        throw std::invalid_argument("reflection_pattern: empty grid");
    std::vector<double> gains_db;
    gains_db.reserve(grid.size());
    for (const auto& q : grid) {
        const Complex g =
            response_gain(design, ap_dir, q.direction(), polarization, geom);
        gains_db.push_back(10.0 * std::log10(std::norm(g)));
    }
    return gains_db;
}

}  // namespace risdet
