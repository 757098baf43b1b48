// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef RISDET_EXPERIMENTS_HPP
#define RISDET_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "risdet/baseline.hpp"
#include "risdet/mm.hpp"

namespace risdet {

enum class SweepVariable { Ptx, KDb, Alpha, Dy, UCells };

const char* sweep_variable_name(SweepVariable v);
SweepVariable sweep_variable_from_name(const std::string& name);
ObjectiveKind objective_from_name(const std::string& name);

/// Fully resolved experiment description; JSON round-trips losslessly so
/// every output can carry the exact configuration that produced it.
struct ExperimentConfig {
    ScenarioConfig scenario;
    SweepVariable variable = SweepVariable::Ptx;
    std::vector<double> values{-4, -3, -2, -1, 0, 1, 2, 3, 4};
    std::vector<ObjectiveKind> objectives{
        ObjectiveKind::J1, ObjectiveKind::J2, ObjectiveKind::J3,
        ObjectiveKind::QuadraticBaseline};
    MmConfig mm;
    std::uint64_t seed = 1;
    bool emit_timing = false;  // keeps default CSVs reproducible

    /// "full": full-scale defaults (U = 32, 9 x 9 grid).
    /// "fast": CI-scale instance (U = 8, 3 x 3 grid).
    static ExperimentConfig profile(const std::string& name);
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Copy of `base` with one sweep variable overridden. Angles are given in
/// degrees, cell counts as total U (mapped to a 4 x U/4 panel).
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable v,
                                 double value);

/// Optimizes (or constructs) the design for one objective; `info` receives
/// the MM run details when non-null and the kind is an MM objective.
PhaseDesign design_for(const Scenario& scenario, ObjectiveKind kind,
                       const MmConfig& mm, MmResult* info = nullptr);

struct SweepRow {
    double sweep_value = 0.0;
    ObjectiveKind objective = ObjectiveKind::J1;
    double min_pd = 0.0;
    std::size_t argmin_location = 0;
    double rho = 0.0;
    int iters = 0;
    double rank_ratio = 1.0;
    double wall_time = 0.0;  // seconds
    std::string status = "ok";
};

/// Runs value x objective points in deterministic order; per-point failures
/// become rows with status != ok.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);
void write_sweep_csv(const std::vector<SweepRow>& rows, SweepVariable v,
                     bool emit_timing, std::ostream& out);

/// Reflection-pattern grid in the x = area-center plane:
/// y in (-60, 20) m, z in (0, 60) m, `cols` cells per axis, cell centers.
void export_pattern(const Scenario& scenario, const PhaseDesign& design,
                    int cols, std::ostream& out);

struct AccuracyRow {
    double sweep_value = 0.0;
    double eps_j1 = 0.0;
    double eps_j2 = 0.0;
    std::size_t argmax_j1 = 0;
    std::size_t argmax_j2 = 0;
    std::string status = "ok";
};

/// Worst-case relative errors of the two detection-probability
/// approximations, at the designs they produce, per sweep value.
std::vector<AccuracyRow> run_accuracy(const ExperimentConfig& config);
void write_accuracy_csv(const std::vector<AccuracyRow>& rows,
                        SweepVariable v, std::ostream& out);

struct MonteCarloRow {
    std::size_t location = 0;
    double analytic_pd = 0.0;
    double empirical_pd = 0.0;
    double empirical_pfa = 0.0;
    long trials = 0;
};

/// Simulated detector rates per sampled location for one design.
std::vector<MonteCarloRow> run_montecarlo(const Scenario& scenario,
                                          const PhaseDesign& design,
                                          long trials, std::uint64_t seed);
void write_montecarlo_csv(const std::vector<MonteCarloRow>& rows,
                          std::ostream& out);

/// Phase vectors as two-column CSV (cell index, phase in radians).
void write_phases_csv(const PhaseDesign& design, std::ostream& out);
PhaseDesign read_phases_csv(std::istream& in);

}  // namespace risdet

#endif  // RISDET_EXPERIMENTS_HPP
