// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_OBJECTIVES_HPP
#define RISDET_OBJECTIVES_HPP

#include <cstddef>
#include <utility>

#include "risdet/scenario.hpp"

namespace risdet {

enum class ObjectiveKind { J1, J2, J3, QuadraticBaseline };

const char* objective_name(ObjectiveKind kind);

/// Lifted Hermitian matrix variable W = w w^H (relaxed to PSD with unit
/// diagonal during optimization).
struct LiftedDesign {
    CMatrix W;

    static LiftedDesign from_design(const PhaseDesign& design) {
        return {design.w() * design.w().adjoint()};
    }
    /// Throws unless W is PSD with unit diagonal within tolerance.
    void validate(double tol = 1e-6) const;
};

/// Real part of tr(A B) for Hermitian factors; throws when the imaginary
/// residue is not negligible.
double hermitian_trace_product(const CMatrix& a, const CMatrix& b);

/// Marcum arguments (a, b) in lifted form.
std::pair<double, double> ab_params(const LiftedDesign& lifted,
                                    const ChannelStatistics& stats,
                                    const SystemParams& params);

/// Thrown when the LoS power at a location is too small for the J1 log
/// argument; such a design point is dominated.
struct J1DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

double j1(const LiftedDesign& lifted, const ChannelStatistics& stats,
          const SystemParams& params);
double j2(const LiftedDesign& lifted, const ChannelStatistics& stats);
double j3(const LiftedDesign& lifted, const ChannelStatistics& stats);

/// Convex-in-W majorizer of J1 linearized at `prev` (first-order touch).
double j1_majorizer(const LiftedDesign& lifted, const LiftedDesign& prev,
                    const ChannelStatistics& stats,
                    const SystemParams& params);

struct WorstCase {
    double value = 0.0;
    std::size_t argmax = 0;
};

/// Max of J_k over the sampled coverage area; J1-infeasible locations count
/// as +infinity. Ties resolve to the lowest index.
WorstCase worst_case_objective(const LiftedDesign& lifted, ObjectiveKind kind,
                               const Scenario& scenario);

struct ApproximationErrors {
    double eps_j1 = 0.0;  // signed, at the worst |eps| location
    double eps_j2 = 0.0;
    std::size_t argmax_j1 = 0;
    std::size_t argmax_j2 = 0;
};

/// Relative errors of the two Marcum approximations, evaluated at the
/// designs they produce.
ApproximationErrors approximation_errors(const PhaseDesign& design_j1,
                                         const PhaseDesign& design_j2,
                                         const Scenario& scenario);

}  // namespace risdet

#endif  // RISDET_OBJECTIVES_HPP
