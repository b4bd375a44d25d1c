#include "ccsplan/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ccsplan {

namespace {

// Relative slack granted to the second lexicographic stage.
constexpr double kLexEpsilon = 1e-6;

double traded_total(const DeploymentPlan& plan) {
    double v = 0.0;
    for (const auto& per_seller : plan.ccs_traded_t)
        for (const auto& series : per_seller)
            for (double x : series) v += x;
    return v;
}

}  // namespace

double ScenarioResult::national_emissions(std::size_t t) const {
    double v = 0.0;
    for (const auto& e : emissions_t) v += e[t];
    return v;
}

std::vector<std::vector<double>> yearly_offsets(const ModelInstance& instance, const DeploymentPlan& plan) {
    const std::size_t T = instance.num_years();
    std::vector<std::vector<double>> off(instance.num_regions(), std::vector<double>(T, 0.0));
    for (std::size_t i = 0; i < instance.num_regions(); ++i) {
        const Region& reg = instance.regions[i];
        for (std::size_t t = 0; t < T; ++t) {
            double v = 0.0;
            for (TechKind k : kAllTechs) v += reg.of(k).g[t] * plan.re_gw[i][index_of(k)][t];
            off[i][t] = v + plan.ccs_total(i, t);
        }
    }
    return off;
}

std::vector<std::vector<double>> emission_trajectories(const ModelInstance& instance,
                                                       const DeploymentPlan& plan) {
    const auto off = yearly_offsets(instance, plan);
    const std::size_t T = instance.num_years();
    std::vector<std::vector<double>> c(instance.num_regions(), std::vector<double>(T + 1, 0.0));
    for (std::size_t i = 0; i < instance.num_regions(); ++i) {
        c[i][0] = instance.regions[i].baseline_emissions_t;
        for (std::size_t t = 0; t < T; ++t) c[i][t + 1] = c[i][t] - off[i][t];
    }
    return c;
}

namespace {

void record_failure(ScenarioResult& res, const LpSolution& sol, const LinearProgram& lp) {
    res.status = sol.status;
    if (sol.status == SolveStatus::Infeasible) {
        for (std::size_t r : sol.infeasible_rows) res.diagnostics.push_back(lp.rows()[r].name);
    } else if (sol.status == SolveStatus::Unbounded) {
        for (std::size_t v : sol.ray_vars) res.diagnostics.push_back(lp.var_names()[v]);
    }
}

}  // namespace

ScenarioResult run_scenario(const ModelInstance& instance, const ScenarioConfig& config,
                            const SolverSettings& settings) {
    const auto started = std::chrono::steady_clock::now();
    ScenarioResult res;
    res.config = config;
    ScenarioConfig cfg = config;

    if (config.objective == ObjectiveMode::MaxReductionLex) {
        // Stage 1: maximize the total offset (minimize sum_i C_i(T)).
        AssembledModel stage1 = assemble(instance, config);
        std::fill(stage1.lp.objective().begin(), stage1.lp.objective().end(), 0.0);
        for (const Term& t : total_offset_terms(instance, stage1.index)) stage1.lp.objective()[t.var] -= t.coef;
        const LpSolution s1 = solve(stage1.lp, settings);
        res.stats.stage1_iterations = s1.iterations;
        res.stats.iterations += s1.iterations;
        if (s1.status != SolveStatus::Optimal) {
            record_failure(res, s1, stage1.lp);
            res.stats.num_vars = stage1.lp.num_vars();
            res.stats.num_rows = stage1.lp.num_rows();
            return res;
        }
        const double best = -s1.objective_value;
        res.stats.stage1_offset_t = best;
        const double floor = best - kLexEpsilon * std::abs(best);
        cfg.min_total_offset_t = config.min_total_offset_t ? std::max(*config.min_total_offset_t, floor) : floor;
    }

    AssembledModel model = assemble(instance, cfg);
    res.stats.num_vars = model.lp.num_vars();
    res.stats.num_rows = model.lp.num_rows();
    const LpSolution sol = solve(model.lp, settings);
    res.stats.iterations += sol.iterations;
    res.stats.max_primal_infeasibility = sol.max_primal_infeasibility;
    if (sol.status != SolveStatus::Optimal) {
        record_failure(res, sol, model.lp);
    } else {
        res.status = SolveStatus::Optimal;
        res.plan = extract_plan(sol, model.index);
        res.objective_value = sol.objective_value;
        res.emissions_t = emission_trajectories(instance, res.plan);
        const double base = instance.national_baseline_t();
        const double final_total = res.national_emissions(instance.num_years());
        res.reduction_pct = base > 0.0 ? 100.0 * (base - final_total) / base : 0.0;
    }
    res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return res;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    const std::size_t n = std::min(jobs, count);
    for (std::size_t w = 0; w < n; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::map<int, ScenarioResult> run_all(const ModelInstance& instance, ObjectiveMode mode, std::size_t jobs,
                                      const SolverSettings& settings) {
    std::vector<ScenarioResult> slots(4);
    parallel_for(4, jobs, [&](std::size_t k) {
        const ScenarioConfig cfg = ScenarioConfig::standard(static_cast<int>(k) + 1, mode);
        try {
            slots[k] = run_scenario(instance, cfg, settings);
        } catch (const std::exception& e) {
            slots[k] = ScenarioResult{};
            slots[k].config = cfg;
            slots[k].error = e.what();
        }
    });
    std::map<int, ScenarioResult> out;
    for (std::size_t k = 0; k < slots.size(); ++k) out.emplace(static_cast<int>(k) + 1, std::move(slots[k]));
    return out;
}

std::string_view to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::CarbonPrice: return "carbon-price";
        case SweepParameter::CcsUnitCost: return "ccs-cost";
        case SweepParameter::TransportCost: return "transport-cost";
    }
    return "?";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view s) {
    if (s == "carbon-price" || s == "carbon_price") return SweepParameter::CarbonPrice;
    if (s == "ccs-cost" || s == "ccs_unit_cost") return SweepParameter::CcsUnitCost;
    if (s == "transport-cost" || s == "transport_cost") return SweepParameter::TransportCost;
    return std::nullopt;
}

std::size_t SweepResult::succeeded() const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const SweepPoint& p) { return p.result.optimal(); }));
}

std::vector<double> linear_grid(double from, double to, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("linear_grid: steps must be >= 1");
    if (steps == 1) return {from};
    std::vector<double> g(steps);
    for (std::size_t k = 0; k < steps; ++k)
        g[k] = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1);
    g.back() = to;
    return g;
}

SweepResult sweep(const ModelInstance& instance, const ScenarioConfig& config, SweepParameter parameter,
                  const std::vector<double>& grid, const SweepOptions& options) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k]) || grid[k] < 0.0)
            throw std::invalid_argument("sweep: grid values must be finite and >= 0");
        if (k > 0 && !(grid[k] > grid[k - 1])) throw std::invalid_argument("sweep: grid must be strictly increasing");
    }

    SweepResult out;
    out.parameter = parameter;
    out.grid = grid;
    out.points.resize(grid.size());
    const std::size_t T = instance.num_years();

    parallel_for(grid.size(), options.jobs, [&](std::size_t k) {
        SweepPoint& pt = out.points[k];
        pt.value = grid[k];
        ScenarioConfig cfg = config;
        TimeSeries series = TimeSeries::constant(T, grid[k]);
        switch (parameter) {
            case SweepParameter::CarbonPrice: cfg.overrides.carbon_price = series; break;
            case SweepParameter::CcsUnitCost: cfg.overrides.ccs_price = series; break;
            case SweepParameter::TransportCost: cfg.overrides.transport_cost = series; break;
        }
        try {
            pt.result = run_scenario(instance, cfg, options.settings);
            if (pt.result.optimal()) {
                pt.traded_t = traded_total(pt.result.plan);
                pt.any_trading = pt.traded_t > kClampTonnes;
            }
        } catch (const std::exception& e) {
            pt.result.config = cfg;
            pt.error = e.what();
        }
    });

    // Carbon price is expected to raise the reduction, the two CCS costs to
    // lower it. Checked per run, never assumed.
    const double expected_sign = parameter == SweepParameter::CarbonPrice ? 1.0 : -1.0;
    const SweepPoint* prev = nullptr;
    for (const SweepPoint& pt : out.points) {
        if (!pt.result.optimal()) {
            std::ostringstream os;
            os << to_string(parameter) << " = " << pt.value << ": "
               << (pt.error.empty() ? std::string(to_string(pt.result.status)) : pt.error);
            out.warnings.push_back(os.str());
            continue;
        }
        if (prev) {
            const double delta = pt.result.reduction_pct - prev->result.reduction_pct;
            if (expected_sign * delta < -1e-6) {
                out.monotone_reduction = false;
                std::ostringstream os;
                os << "reduction moved against the expected direction between " << prev->value << " ("
                   << prev->result.reduction_pct << "%) and " << pt.value << " (" << pt.result.reduction_pct
                   << "%)";
                out.warnings.push_back(os.str());
            }
            if (!out.threshold && std::abs(delta) > options.jump_pp) out.threshold = pt.value;
        }
        prev = &pt;
    }
    return out;
}

}  // namespace ccsplan
