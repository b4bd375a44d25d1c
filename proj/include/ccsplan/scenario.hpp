#pragma once

#include "ccsplan/model_builder.hpp"
#include "ccsplan/simplex.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ccsplan {

struct SolveStats {
    std::size_t num_vars = 0;
    std::size_t num_rows = 0;
    std::size_t iterations = 0;         // all stages
    std::size_t stage1_iterations = 0;  // lexicographic mode only
    double max_primal_infeasibility = 0.0;
    std::optional<double> stage1_offset_t;
    double seconds = 0.0;
};

struct ScenarioResult {
    ScenarioConfig config;
    SolveStatus status = SolveStatus::Infeasible;
    DeploymentPlan plan;
    // [i][t], t = 0 is the baseline C_i(0); t = 1..T follow the horizon years.
    std::vector<std::vector<double>> emissions_t;
    double objective_value = 0.0;
    double reduction_pct = 0.0;
    SolveStats stats;
    // Infeasible: names of rows that could not be satisfied.
    // Unbounded: names of variables along the improving ray.
    std::vector<std::string> diagnostics;
    // Set when the scenario could not be built or solved at all.
    std::string error;

    bool optimal() const { return status == SolveStatus::Optimal; }
    double national_emissions(std::size_t t) const;
};

// offset[i][t] = sum_k g_{i,k}(t) RE(i,k,t) + CCS_i(t)
std::vector<std::vector<double>> yearly_offsets(const ModelInstance& instance, const DeploymentPlan& plan);

// C_i(t) = C_i(t-1) - offset_i(t), with C_i(0) the regional baseline.
std::vector<std::vector<double>> emission_trajectories(const ModelInstance& instance,
                                                       const DeploymentPlan& plan);

ScenarioResult run_scenario(const ModelInstance& instance, const ScenarioConfig& config,
                            const SolverSettings& settings = {});

// Scenarios 1..4 on one instance, keyed by scenario id. Failures stay
// confined to their own entry.
std::map<int, ScenarioResult> run_all(const ModelInstance& instance,
                                      ObjectiveMode mode = ObjectiveMode::MaxReductionLex,
                                      std::size_t jobs = 1, const SolverSettings& settings = {});

enum class SweepParameter { CarbonPrice, CcsUnitCost, TransportCost };

std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view s);

struct SweepPoint {
    double value = 0.0;
    ScenarioResult result;
    std::string error;  // set when the point could not be run at all
    bool any_trading = false;
    double traded_t = 0.0;
};

struct SweepOptions {
    double jump_pp = 1.0;   // threshold detection: reduction jump in percentage points
    std::size_t jobs = 1;
    SolverSettings settings;
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::CarbonPrice;
    std::vector<double> grid;
    std::vector<SweepPoint> points;
    bool monotone_reduction = true;
    std::vector<std::string> warnings;
    std::optional<double> threshold;

    std::size_t succeeded() const;
};

// Replaces the swept price with a constant series per grid value. The grid
// must be strictly increasing and non-negative (std::invalid_argument
// otherwise).
SweepResult sweep(const ModelInstance& instance, const ScenarioConfig& config, SweepParameter parameter,
                  const std::vector<double>& grid, const SweepOptions& options = {});

std::vector<double> linear_grid(double from, double to, std::size_t steps);

// Runs fn(0..count-1) on at most `jobs` worker threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace ccsplan
