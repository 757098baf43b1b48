// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/objectives.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "risdet/detection.hpp"

namespace risdet {

const char* objective_name(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::J1: return "J1";
        case ObjectiveKind::J2: return "J2";
        case ObjectiveKind::J3: return "J3";
        case ObjectiveKind::QuadraticBaseline: return "quadratic";
    }
    return "unknown";
}

void LiftedDesign::validate(double tol) const {
    const double scale = std::max(1e-300, W.norm());
    for (Eigen::Index u = 0; u < W.rows(); ++u)
        if (std::abs(W(u, u) - Complex(1.0, 0.0)) > tol)
            throw std::invalid_argument("LiftedDesign: diagonal entry is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(W,
                                               Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol * scale)
        throw std::invalid_argument("LiftedDesign: W is not PSD");
}

double hermitian_trace_product(const CMatrix& a, const CMatrix& b) {
    // tr(AB) = <A, B^H>_F = sum conj(A_ij) B_ij for Hermitian A.
    const Complex t = (a.conjugate().cwiseProduct(b)).sum();
    const double scale = std::max(1e-300, std::abs(t));
    if (std::abs(t.imag()) > 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument("hermitian_trace_product: imaginary residue too large");
    return t.real();
}

namespace {

struct TraceTerms {
    double wm = 0.0;  // tr(W M)
    double wc = 0.0;  // tr(W C)
};

TraceTerms trace_terms(const LiftedDesign& lifted,
                       const ChannelStatistics& stats) {
    TraceTerms t;
    t.wm = std::real(stats.los.dot(lifted.W * stats.los));
    t.wc = hermitian_trace_product(lifted.W, stats.cov);
    if (t.wm < -1e-12 || t.wc < -1e-12)
        throw std::invalid_argument("trace_terms: negative trace value");
    t.wm = std::max(0.0, t.wm);
    t.wc = std::max(0.0, t.wc);
    return t;
}

}  // namespace

std::pair<double, double> ab_params(const LiftedDesign& lifted,
                                    const ChannelStatistics& stats,
                                    const SystemParams& params) {
    const TraceTerms t = trace_terms(lifted, stats);
    const double power = params.effective_power();
    const double sigma2 = params.noise_w();
    const double denom = t.wc * power + sigma2;
    if (denom <= 0.0)
        throw std::invalid_argument("ab_params: nonpositive denominator");
    const double a = std::sqrt(2.0 * power * t.wm / denom);
    const double b = std::sqrt(-2.0 * sigma2 * std::log(params.pfa) / denom);
    return {a, b};
}

double j1(const LiftedDesign& lifted, const ChannelStatistics& stats,
          const SystemParams& params) {
    const TraceTerms t = trace_terms(lifted, stats);
    const double power = params.effective_power();
    const double sigma2 = params.noise_w();
    const double los_term = std::sqrt(2.0 * power * t.wm) -
                            std::sqrt(-2.0 * sigma2 * std::log(params.pfa));
    if (los_term <= 0.0)
        throw J1DomainError("j1: LoS power too small for the log argument");
    return std::log(std::sqrt(t.wc * power + sigma2)) - std::log(los_term);
}

double j2(const LiftedDesign& lifted, const ChannelStatistics& stats) {
    return -std::max(0.0, std::real(stats.los.dot(lifted.W * stats.los)));
}

double j3(const LiftedDesign& lifted, const ChannelStatistics& stats) {
    return j2(lifted, stats) - hermitian_trace_product(lifted.W, stats.cov);
}

double j1_majorizer(const LiftedDesign& lifted, const LiftedDesign& prev,
                    const ChannelStatistics& stats,
                    const SystemParams& params) {
    const TraceTerms t = trace_terms(lifted, stats);
    const TraceTerms tp = trace_terms(prev, stats);
    const double power = params.effective_power();
    const double sigma2 = params.noise_w();
    const double los_term = std::sqrt(2.0 * power * t.wm) -
                            std::sqrt(-2.0 * sigma2 * std::log(params.pfa));
    if (los_term <= 0.0)
        throw J1DomainError("j1_majorizer: LoS power too small for the log argument");
    const double prev_denom = tp.wc * power + sigma2;
    return -std::log(los_term) + std::log(std::sqrt(prev_denom)) +
           0.5 * (t.wc - tp.wc) * power / prev_denom;
}

WorstCase worst_case_objective(const LiftedDesign& lifted, ObjectiveKind kind,
                               const Scenario& scenario) {
    if (scenario.sample_count() == 0)
        throw std::invalid_argument("worst_case_objective: empty sample set");
    WorstCase wc;
    wc.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scenario.sample_count(); ++i) {
        double value;
        switch (kind) {
            case ObjectiveKind::J1:
                try {
                    value = j1(lifted, scenario.stats(i), scenario.params());
                } catch (const J1DomainError&) {
                    value = std::numeric_limits<double>::infinity();
                }
                break;
            case ObjectiveKind::J2:
                value = j2(lifted, scenario.stats(i));
                break;
            case ObjectiveKind::J3:
                value = j3(lifted, scenario.stats(i));
                break;
            default:
                throw std::invalid_argument("worst_case_objective: kind has no objective");
        }
        if (value > wc.value) {
            wc.value = value;
            wc.argmax = i;
        }
    }
    return wc;
}

ApproximationErrors approximation_errors(const PhaseDesign& design_j1,
                                         const PhaseDesign& design_j2,
                                         const Scenario& scenario) {
    const LiftedDesign w1 = LiftedDesign::from_design(design_j1);
    const LiftedDesign w2 = LiftedDesign::from_design(design_j2);
    ApproximationErrors out;
    double worst1 = -1.0, worst2 = -1.0;
    for (std::size_t i = 0; i < scenario.sample_count(); ++i) {
        const auto& stats = scenario.stats(i);
        const auto [a1, b1] = ab_params(w1, stats, scenario.params());
        const double eps1 =
            gaussian_q(b1 - a1) / marcum_q1(a1, b1) - 1.0;
        if (std::abs(eps1) > worst1) {
            worst1 = std::abs(eps1);
            out.eps_j1 = eps1;
            out.argmax_j1 = i;
        }

        const auto [a2, b2] = ab_params(w2, stats, scenario.params());
        ChannelStatistics los_only{stats.los,
                                   CMatrix::Zero(stats.cov.rows(),
                                                 stats.cov.cols())};
        const auto [a2t, b2t] = ab_params(w2, los_only, scenario.params());
        const double eps2 =
            marcum_q1(a2t, b2t) / marcum_q1(a2, b2) - 1.0;
        if (std::abs(eps2) > worst2) {
            worst2 = std::abs(eps2);
            out.eps_j2 = eps2;
            out.argmax_j2 = i;
        }
    }
    return out;
}

}  // namespace risdet
