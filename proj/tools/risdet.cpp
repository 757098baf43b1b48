// SPDX-License-Identifier: Apache-2.0
//
// risdet: RIS-assisted device activity detection and phase-shift design
// Copyright (C) 2026 The risdet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "risdet/experiments.hpp"

namespace {

using risdet::ExperimentConfig;

struct CommonArgs {
    std::string profile = "full";
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    std::optional<double> ptx, k_db, alpha_deg, dy;
    std::optional<int> u_cells;
    std::optional<double> rho;

    void attach(CLI::App* cmd) {
        cmd->add_option("--profile", profile, "Config profile: full or fast")
            ->check(CLI::IsMember({"full", "fast"}));
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_path, "Output path (default: stdout)");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--ptx", ptx, "Transmit power [dBm]");
        cmd->add_option("--k-db", k_db, "Rician K-factor [dB]");
        cmd->add_option("--alpha-deg", alpha_deg, "Scatterer tilt [deg]");
        cmd->add_option("--dy", dy, "Coverage area width [m]");
        cmd->add_option("--u-cells", u_cells, "Total unit cells (4 x U/4)");
        cmd->add_option("--rho", rho, "Fixed penalty factor (default: auto)");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig config = ExperimentConfig::profile(profile);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw CLI::ValidationError("--config",
                                           "cannot open " + config_path);
            nlohmann::json j;
            in >> j;
            config = ExperimentConfig::from_json(j);
        }
        config.seed = seed;
        if (ptx) config.scenario.params.tx_power_dbm = *ptx;
        if (k_db) config.scenario.k_factor_db = *k_db;
        if (alpha_deg)
            config.scenario.alpha_rad = *alpha_deg * std::numbers::pi / 180.0;
        if (dy) config.scenario.area_width_y = *dy;
        if (u_cells) {
            config.scenario = risdet::apply_sweep_value(
                config.scenario, risdet::SweepVariable::UCells, *u_cells);
        }
        if (rho) config.mm.penalty_rho = *rho;
        return config;
    }
};

/// Stdout by default, a file when --out was given.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw CLI::ValidationError("--out", "cannot open " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("--out", "cannot open " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted device activity detection toolkit"};
    app.require_subcommand(1);

    CommonArgs optimize_args, evaluate_args, pattern_args, sweep_args,
        montecarlo_args, accuracy_args;

    auto* optimize = app.add_subcommand(
        "optimize", "Optimize one phase design, write phases and MM trace");
    optimize_args.attach(optimize);
    std::string optimize_objective = "J1";
    optimize->add_option("--objective", optimize_objective,
                         "J1, J2, J3 or quadratic");

    auto* evaluate = app.add_subcommand(
        "evaluate", "Minimum detection probability of a stored design");
    evaluate_args.attach(evaluate);
    std::string phases_path;
    evaluate->add_option("--phases", phases_path, "Phases CSV")->required();

    auto* pattern =
        app.add_subcommand("pattern", "Reflection-pattern grid CSV");
    pattern_args.attach(pattern);
    std::string pattern_objective = "quadratic";
    int pattern_cols = 80;
    pattern->add_option("--objective", pattern_objective,
                        "Design to plot: J1, J2, J3 or quadratic");
    pattern->add_option("--cols", pattern_cols, "Grid cells per axis");

    auto* sweep = app.add_subcommand(
        "sweep", "Optimize every objective across a parameter sweep");
    sweep_args.attach(sweep);
    std::string sweep_variable;
    std::vector<double> sweep_values;
    bool sweep_timing = false;
    sweep->add_option("--variable", sweep_variable,
                      "ptx, k_db, alpha, dy or u_cells");
    sweep->add_option("--values", sweep_values, "Sweep values")->delimiter(',');
    sweep->add_flag("--timing", sweep_timing,
                    "Emit wall times (breaks byte-reproducibility)");

    auto* montecarlo = app.add_subcommand(
        "montecarlo", "Empirical detector rates per sampled location");
    montecarlo_args.attach(montecarlo);
    std::string montecarlo_objective = "quadratic";
    long montecarlo_trials = 20000;
    montecarlo->add_option("--objective", montecarlo_objective,
                           "Design to simulate");
    montecarlo->add_option("--trials", montecarlo_trials, "Trials per location");

    auto* accuracy = app.add_subcommand(
        "accuracy", "Approximation-error study across the sweep values");
    accuracy_args.attach(accuracy);
    std::string accuracy_variable;
    std::vector<double> accuracy_values;
    accuracy->add_option("--variable", accuracy_variable,
                         "ptx, k_db, alpha, dy or u_cells");
    accuracy->add_option("--values", accuracy_values, "Sweep values")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (*optimize) {
            const ExperimentConfig config = optimize_args.resolve();
            const risdet::Scenario scenario(config.scenario);
            const risdet::ObjectiveKind kind =
                risdet::objective_from_name(optimize_objective);
            risdet::MmResult info;
            const risdet::PhaseDesign design = risdet::design_for(
                scenario, kind, config.mm,
                kind == risdet::ObjectiveKind::QuadraticBaseline ? nullptr
                                                                 : &info);
            std::ostringstream phases;
            risdet::write_phases_csv(design, phases);
            const auto [pd, argmin] = scenario.min_prob_detection(design);
            if (optimize_args.out_path.empty()) {
                std::cout << phases.str();
            } else {
                write_file(optimize_args.out_path + ".phases.csv",
                           phases.str());
                if (kind != risdet::ObjectiveKind::QuadraticBaseline) {
                    std::ostringstream trace;
                    info.trace.write_csv(trace);
                    write_file(optimize_args.out_path + ".trace.csv",
                               trace.str());
                }
            }
            std::cerr << "objective=" << risdet::objective_name(kind)
                      << " min_pd=" << pd << " argmin=" << argmin;
            if (kind != risdet::ObjectiveKind::QuadraticBaseline)
                std::cerr << " rho=" << info.rho << " iters=" << info.iters
                          << " status=" << info.status;
            std::cerr << '\n';
        } else if (*evaluate) {
            const ExperimentConfig config = evaluate_args.resolve();
            const risdet::Scenario scenario(config.scenario);
            std::ifstream in(phases_path);
            if (!in)
                throw CLI::ValidationError("--phases",
                                           "cannot open " + phases_path);
            const risdet::PhaseDesign design = risdet::read_phases_csv(in);
            const auto [pd, argmin] = scenario.min_prob_detection(design);
            Output out(evaluate_args.out_path);
            out.stream() << "min_pd,argmin_location\n"
                         << pd << ',' << argmin << '\n';
        } else if (*pattern) {
            const ExperimentConfig config = pattern_args.resolve();
            const risdet::Scenario scenario(config.scenario);
            const risdet::PhaseDesign design = risdet::design_for(
                scenario, risdet::objective_from_name(pattern_objective),
                config.mm);
            Output out(pattern_args.out_path);
            risdet::export_pattern(scenario, design, pattern_cols,
                                   out.stream());
        } else if (*sweep) {
            ExperimentConfig config = sweep_args.resolve();
            if (!sweep_variable.empty())
                config.variable =
                    risdet::sweep_variable_from_name(sweep_variable);
            if (!sweep_values.empty()) config.values = sweep_values;
            config.emit_timing = sweep_timing;
            const auto rows = risdet::run_sweep(config);
            Output out(sweep_args.out_path);
            risdet::write_sweep_csv(rows, config.variable, config.emit_timing,
                                    out.stream());
            // Each dataset ships with the fully resolved configuration so a
            // row can always be traced back to its exact inputs.
            if (!sweep_args.out_path.empty())
                write_file(sweep_args.out_path + ".config.json",
                           config.to_json().dump(2) + "\n");
        } else if (*montecarlo) {
            const ExperimentConfig config = montecarlo_args.resolve();
            const risdet::Scenario scenario(config.scenario);
            const risdet::PhaseDesign design = risdet::design_for(
                scenario, risdet::objective_from_name(montecarlo_objective),
                config.mm);
            const auto rows = risdet::run_montecarlo(
                scenario, design, montecarlo_trials, config.seed);
            Output out(montecarlo_args.out_path);
            risdet::write_montecarlo_csv(rows, out.stream());
        } else if (*accuracy) {
            ExperimentConfig config = accuracy_args.resolve();
            if (!accuracy_variable.empty())
                config.variable =
                    risdet::sweep_variable_from_name(accuracy_variable);
            if (!accuracy_values.empty()) config.values = accuracy_values;
            const auto rows = risdet::run_accuracy(config);
            Output out(accuracy_args.out_path);
            risdet::write_accuracy_csv(rows, config.variable, out.stream());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
