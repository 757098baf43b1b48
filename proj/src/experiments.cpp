// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "risdet/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "risdet/detection.hpp"

namespace risdet {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

}  // namespace

const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::Ptx: return "ptx";
        case SweepVariable::KDb: return "k_db";
        case SweepVariable::Alpha: return "alpha";
        case SweepVariable::Dy: return "dy";
        case SweepVariable::UCells: return "u_cells";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_name(const std::string& name) {
    if (name == "ptx") return SweepVariable::Ptx;
    if (name == "k_db") return SweepVariable::KDb;
    if (name == "alpha") return SweepVariable::Alpha;
    if (name == "dy") return SweepVariable::Dy;
    if (name == "u_cells") return SweepVariable::UCells;
    throw std::invalid_argument("unknown sweep variable: " + name);
}

ObjectiveKind objective_from_name(const std::string& name) {
    if (name == "J1") return ObjectiveKind::J1;
    if (name == "J2") return ObjectiveKind::J2;
    if (name == "J3") return ObjectiveKind::J3;
    if (name == "quadratic") return ObjectiveKind::QuadraticBaseline;
    throw std::invalid_argument("unknown objective: " + name);
}

ExperimentConfig ExperimentConfig::profile(const std::string& name) {
    ExperimentConfig config;
    if (name == "full") return config;
    if (name == "fast") {
        config.scenario.ux_count = 4;
        config.scenario.uy_count = 2;
        config.scenario.grid_ny = 3;
        config.scenario.grid_nz = 3;
        // The 8-cell panel needs ~12 dB more transmit power for the same
        // received LoS power, so the CI sweep shifts up accordingly.
        config.scenario.params.tx_power_dbm = 10.0;
        config.values = {6.0, 8.0, 10.0};
        return config;
    }
    throw std::invalid_argument("unknown profile: " + name);
}

namespace {

/// Radians back to degrees, snapped to 12 decimals so round-tripped
/// whole-degree inputs export as whole degrees again.
double to_deg(double rad) {
    return std::round(rad / kDegToRad * 1e12) / 1e12;
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    const ScenarioConfig& s = scenario;
    j["scenario"] = {
        {"area_center", {s.area_center.x(), s.area_center.y(), s.area_center.z()}},
        {"area_width_y", s.area_width_y},
        {"area_length_z", s.area_length_z},
        {"grid_ny", s.grid_ny},
        {"grid_nz", s.grid_nz},
        {"ap", {{"distance", s.ap.distance()},
                {"theta_deg", to_deg(s.ap.theta())},
                {"phi_deg", to_deg(s.ap.phi())}}},
        {"ux_count", s.ux_count},
        {"uy_count", s.uy_count},
        {"spacing_factor", s.spacing_factor},
        {"wavelength", s.wavelength},
        {"polarization_deg", to_deg(s.polarization)},
        {"k_factor_db", s.k_factor_db},
        {"alpha_deg", to_deg(s.alpha_rad)},
        {"num_scatterers", s.num_scatterers},
        {"tx_power_dbm", s.params.tx_power_dbm},
        {"antennas", s.params.antennas},
        {"preamble_len", s.params.preamble_len},
        {"noise_power_dbm", s.params.noise_power_dbm},
        {"pfa", s.params.pfa},
    };
    j["sweep"] = {{"variable", sweep_variable_name(variable)},
                  {"values", values}};
    nlohmann::json objs = nlohmann::json::array();
    for (ObjectiveKind k : objectives) objs.push_back(objective_name(k));
    j["objectives"] = objs;
    j["mm"] = {{"convergence_nu", mm.convergence_nu},
               {"max_iters", mm.max_iters},
               {"rank_one_tol", mm.rank_one_tol},
               {"solver_tol", mm.solver_tol},
               {"penalty_rho", mm.penalty_rho},
               {"max_newton", mm.max_newton}};
    j["seed"] = seed;
    j["emit_timing"] = emit_timing;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    if (j.contains("scenario")) {
        const auto& js = j["scenario"];
        ScenarioConfig& s = config.scenario;
        if (js.contains("area_center")) {
            const auto& c = js["area_center"];
            s.area_center = Location::from_cart(c.at(0), c.at(1), c.at(2));
        }
        s.area_width_y = js.value("area_width_y", s.area_width_y);
        s.area_length_z = js.value("area_length_z", s.area_length_z);
        s.grid_ny = js.value("grid_ny", s.grid_ny);
        s.grid_nz = js.value("grid_nz", s.grid_nz);
        if (js.contains("ap")) {
            const auto& ja = js["ap"];
            s.ap = Location::from_sphere(
                ja.value("distance", s.ap.distance()),
                ja.value("theta_deg", s.ap.theta() / kDegToRad) * kDegToRad,
                ja.value("phi_deg", s.ap.phi() / kDegToRad) * kDegToRad);
        }
        s.ux_count = js.value("ux_count", s.ux_count);
        s.uy_count = js.value("uy_count", s.uy_count);
        s.spacing_factor = js.value("spacing_factor", s.spacing_factor);
        s.wavelength = js.value("wavelength", s.wavelength);
        s.polarization =
            js.value("polarization_deg", s.polarization / kDegToRad) *
            kDegToRad;
        s.k_factor_db = js.value("k_factor_db", s.k_factor_db);
        s.alpha_rad = js.value("alpha_deg", s.alpha_rad / kDegToRad) * kDegToRad;
        s.num_scatterers = js.value("num_scatterers", s.num_scatterers);
        s.params.tx_power_dbm = js.value("tx_power_dbm", s.params.tx_power_dbm);
        s.params.antennas = js.value("antennas", s.params.antennas);
        s.params.preamble_len = js.value("preamble_len", s.params.preamble_len);
        s.params.noise_power_dbm =
            js.value("noise_power_dbm", s.params.noise_power_dbm);
        s.params.pfa = js.value("pfa", s.params.pfa);
        s.params.wavelength = s.wavelength;
    }
    if (j.contains("sweep")) {
        const auto& jw = j["sweep"];
        if (jw.contains("variable"))
            config.variable =
                sweep_variable_from_name(jw["variable"].get<std::string>());
        if (jw.contains("values"))
            config.values = jw["values"].get<std::vector<double>>();
    }
    if (j.contains("objectives")) {
        config.objectives.clear();
        for (const auto& name : j["objectives"])
            config.objectives.push_back(
                objective_from_name(name.get<std::string>()));
    }
    if (j.contains("mm")) {
        const auto& jm = j["mm"];
        config.mm.convergence_nu =
            jm.value("convergence_nu", config.mm.convergence_nu);
        config.mm.max_iters = jm.value("max_iters", config.mm.max_iters);
        config.mm.rank_one_tol =
            jm.value("rank_one_tol", config.mm.rank_one_tol);
        config.mm.solver_tol = jm.value("solver_tol", config.mm.solver_tol);
        config.mm.penalty_rho = jm.value("penalty_rho", config.mm.penalty_rho);
        config.mm.max_newton = jm.value("max_newton", config.mm.max_newton);
    }
    config.seed = j.value("seed", config.seed);
    config.emit_timing = j.value("emit_timing", config.emit_timing);
    return config;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable v,
                                 double value) {
    ScenarioConfig cfg = base;
    switch (v) {
        case SweepVariable::Ptx:
            cfg.params.tx_power_dbm = value;
            break;
        case SweepVariable::KDb:
            cfg.k_factor_db = value;
            break;
        case SweepVariable::Alpha:
            cfg.alpha_rad = value * kDegToRad;
            break;
        case SweepVariable::Dy:
            cfg.area_width_y = value;
            break;
        case SweepVariable::UCells: {
            const int total = static_cast<int>(value);
            if (total <= 0 || total % 4 != 0)
                throw std::invalid_argument("u_cells sweep: U must be a positive multiple of 4");
            cfg.ux_count = 4;
            cfg.uy_count = total / 4;
            break;
        }
    }
    return cfg;
}

PhaseDesign design_for(const Scenario& scenario, ObjectiveKind kind,
                       const MmConfig& mm, MmResult* info) {
    const PhaseDesign init = quadratic_design(scenario);
    if (kind == ObjectiveKind::QuadraticBaseline) return init;
    MmResult result = mm_optimize(kind, scenario, init, mm);
    PhaseDesign design = result.design;
    if (info) *info = std::move(result);
    return design;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
    std::vector<SweepRow> rows;
    rows.reserve(config.values.size() * config.objectives.size());
    for (double value : config.values) {
        const ScenarioConfig cfg =
            apply_sweep_value(config.scenario, config.variable, value);
        const Scenario scenario(cfg);
        for (ObjectiveKind kind : config.objectives) {
            SweepRow row;
            row.sweep_value = value;
            row.objective = kind;
            const auto start = std::chrono::steady_clock::now();
            try {
                MmResult info;
                const PhaseDesign design =
                    design_for(scenario, kind, config.mm,
                               kind == ObjectiveKind::QuadraticBaseline
                                   ? nullptr
                                   : &info);
                if (kind != ObjectiveKind::QuadraticBaseline) {
                    row.rho = info.rho;
                    row.iters = info.iters;
                    row.rank_ratio = info.trace.iterates.back().rank_ratio;
                    if (info.status != "ok") row.status = info.status;
                }
                const auto [pd, argmin] = scenario.min_prob_detection(design);
                row.min_pd = pd;
                row.argmin_location = argmin;
            } catch (const std::exception& e) {
                row.min_pd = std::numeric_limits<double>::quiet_NaN();
                row.status = std::string("error: ") + e.what();
            }
            row.wall_time = seconds_since(start);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, SweepVariable v,
                     bool emit_timing, std::ostream& out) {
    out << "sweep_variable,sweep_value,objective,min_pd,argmin_location,"
           "rho,iters,rank_ratio,wall_time,status\n";
    for (const SweepRow& r : rows) {
        out << sweep_variable_name(v) << ',' << fmt9(r.sweep_value) << ','
            << objective_name(r.objective) << ',' << fmt9(r.min_pd) << ','
            << r.argmin_location << ',' << fmt9(r.rho) << ',' << r.iters << ','
            << fmt9(r.rank_ratio) << ','
            << fmt9(emit_timing ? r.wall_time : 0.0) << ',' << r.status
            << '\n';
    }
}

void export_pattern(const Scenario& scenario, const PhaseDesign& design,
                    int cols, std::ostream& out) {
    if (cols < 2) throw std::invalid_argument("export_pattern: cols < 2");
    const double x = scenario.config().area_center.x();
    const double y_lo = -60.0, y_hi = 20.0, z_lo = 0.0, z_hi = 60.0;
    std::vector<Location> grid;
    grid.reserve(static_cast<std::size_t>(cols) * cols);
    for (int j = 0; j < cols; ++j) {
        const double z = z_lo + (j + 0.5) * (z_hi - z_lo) / cols;
        for (int i = 0; i < cols; ++i) {
            const double y = y_lo + (i + 0.5) * (y_hi - y_lo) / cols;
            grid.push_back(Location::from_cart(x, y, z));
        }
    }
    const std::vector<double> gains =
        reflection_pattern(design, scenario.ap().direction(), grid,
                           scenario.config().polarization,
                           scenario.geometry());
    out << "y,z,gain_db\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << fmt9(grid[i].y()) << ',' << fmt9(grid[i].z()) << ','
            << fmt9(gains[i]) << '\n';
}

std::vector<AccuracyRow> run_accuracy(const ExperimentConfig& config) {
    std::vector<AccuracyRow> rows;
    for (double value : config.values) {
        const ScenarioConfig cfg =
            apply_sweep_value(config.scenario, config.variable, value);
        const Scenario scenario(cfg);
        AccuracyRow row;
        row.sweep_value = value;
        try {
            const PhaseDesign d1 =
                design_for(scenario, ObjectiveKind::J1, config.mm);
            const PhaseDesign d2 =
                design_for(scenario, ObjectiveKind::J2, config.mm);
            const ApproximationErrors err =
                approximation_errors(d1, d2, scenario);
            row.eps_j1 = err.eps_j1;
            row.eps_j2 = err.eps_j2;
            row.argmax_j1 = err.argmax_j1;
            row.argmax_j2 = err.argmax_j2;
        } catch (const std::exception& e) {
            row.eps_j1 = std::numeric_limits<double>::quiet_NaN();
            row.eps_j2 = std::numeric_limits<double>::quiet_NaN();
            row.status = std::string("error: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_accuracy_csv(const std::vector<AccuracyRow>& rows, SweepVariable v,
                        std::ostream& out) {
    out << "sweep_variable,sweep_value,eps_j1,eps_j2,argmax_j1,argmax_j2,"
           "status\n";
    for (const AccuracyRow& r : rows)
        out << sweep_variable_name(v) << ',' << fmt9(r.sweep_value) << ','
            << fmt9(r.eps_j1) << ',' << fmt9(r.eps_j2) << ',' << r.argmax_j1
            << ',' << r.argmax_j2 << ',' << r.status << '\n';
}

std::vector<MonteCarloRow> run_montecarlo(const Scenario& scenario,
                                          const PhaseDesign& design,
                                          long trials, std::uint64_t seed) {
    std::vector<MonteCarloRow> rows;
    rows.reserve(scenario.sample_count());
    for (std::size_t i = 0; i < scenario.sample_count(); ++i) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
        const MonteCarloRates rates =
            monte_carlo_rates(design, scenario.stats(i), scenario.params(),
                              std::nullopt, trials, rng);
        MonteCarloRow row;
        row.location = i;
        row.analytic_pd =
            prob_detection(design, scenario.stats(i), scenario.params());
        row.empirical_pd = rates.empirical_pd;
        row.empirical_pfa = rates.empirical_pfa;
        row.trials = rates.trials;
        rows.push_back(row);
    }
    return rows;
}

void write_montecarlo_csv(const std::vector<MonteCarloRow>& rows,
                          std::ostream& out) {
    out << "location,analytic_pd,empirical_pd,empirical_pfa,trials\n";
    for (const MonteCarloRow& r : rows)
        out << r.location << ',' << fmt9(r.analytic_pd) << ','
            << fmt9(r.empirical_pd) << ',' << fmt9(r.empirical_pfa) << ','
            << r.trials << '\n';
}

void write_phases_csv(const PhaseDesign& design, std::ostream& out) {
    out << "cell,phase\n";
    for (Eigen::Index u = 0; u < design.size(); ++u)
        out << u << ',' << fmt9(design.phases()(u)) << '\n';
}

PhaseDesign read_phases_csv(std::istream& in) {
    std::string line;
    std::vector<double> phases;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("cell", 0) == 0) continue;
        long cell = 0;
        double phase = 0.0;
        if (std::sscanf(line.c_str(), "%ld,%lf", &cell, &phase) != 2)
            throw std::invalid_argument("read_phases_csv: malformed line: " + line);
        if (cell != static_cast<long>(phases.size()))
            throw std::invalid_argument("read_phases_csv: cells out of order");
        phases.push_back(phase);
    }
    Eigen::VectorXd v =
        Eigen::Map<Eigen::VectorXd>(phases.data(),
                                    static_cast<Eigen::Index>(phases.size()));
    return PhaseDesign(v);
}

}  // namespace risdet
