#pragma once

// Translation of a validated ModelInstance into a LinearProgram.
//
// Decision variables, all >= 0:
//   RE(i,k,t)      GW of technology k installed in region i in year t
//   CCS_s(i,t)     tonnes stored locally by storage region i      (i in V_s)
//   CCS_b(j,i,t)   tonnes bought by region j from storage region i (j in V_b, i in V_s)
//
// Layout: the RE block ordered (t, i, k), then CCS_s ordered (t, i), then
// CCS_b ordered (t, j, i).

#include "ccsplan/domain.hpp"
#include "ccsplan/lp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccsplan {

enum class CcsLimitMode { EqualYearly, TotalOnly };
enum class ObjectiveMode { CostOnly, MaxReductionLex };

std::string_view to_string(ObjectiveMode m);

// Replacement schedules for the uncertain prices (sensitivity sweeps).
struct PriceOverrides {
    std::optional<TimeSeries> carbon_price;
    std::optional<TimeSeries> ccs_price;
    std::optional<TimeSeries> transport_cost;
};

struct ScenarioConfig {
    int scenario_id = 0;  // 1..4 for the standard regimes, 0 for custom
    CcsLimitMode ccs_limit = CcsLimitMode::EqualYearly;
    bool resilience = false;
    ObjectiveMode objective = ObjectiveMode::CostOnly;
    PriceOverrides overrides;
    // Adds C_i(t) >= 0 rows for every region-year.
    bool nonneg_emissions = false;
    // Adds "total offset >= floor" (used by the lexicographic second stage).
    std::optional<double> min_total_offset_t;

    // Scenario 1: equal yearly CCS, no mix rule; 2: + mix rule;
    // 3: total-only CCS, no mix rule; 4: + mix rule.
    static ScenarioConfig standard(int id, ObjectiveMode mode = ObjectiveMode::CostOnly);
};

// Instance prices with the config's overrides applied.
GlobalParams effective_globals(const ModelInstance& instance, const ScenarioConfig& config);

enum class VarKind { Re, CcsLocal, CcsTraded };

struct VarTag {
    VarKind kind = VarKind::Re;
    std::size_t t = 0;
    std::size_t region = 0;  // RE / CCS_s: region i; CCS_b: buyer j
    TechKind tech = TechKind::Solar;
    std::size_t seller = 0;  // CCS_b only: storage region i
};

class VariableIndex {
public:
    explicit VariableIndex(const ModelInstance& instance);

    std::size_t size() const { return traded_offset_ + years_ * buyers_.size() * sellers_.size(); }
    std::size_t num_regions() const { return regions_; }
    std::size_t num_years() const { return years_; }
    const std::vector<std::size_t>& sellers() const { return sellers_; }
    const std::vector<std::size_t>& buyers() const { return buyers_; }

    std::size_t re(std::size_t region, TechKind k, std::size_t t) const;
    std::size_t ccs_local(std::size_t seller_region, std::size_t t) const;
    std::size_t ccs_traded(std::size_t buyer_region, std::size_t seller_region, std::size_t t) const;

    VarTag decode(std::size_t var) const;
    std::string name(std::size_t var) const;

private:
    std::size_t regions_, years_;
    int start_year_;
    std::vector<std::string> ids_;
    std::vector<std::size_t> sellers_, buyers_;
    std::vector<std::size_t> seller_pos_, buyer_pos_;  // region -> position, npos if absent
    std::size_t local_offset_, traded_offset_;
};

std::vector<double> build_objective(const ModelInstance& instance, const ScenarioConfig& config,
                                    const VariableIndex& index);

// Coefficients of the total offset sum_t sum_i [sum_k g RE + CCS_i(t)], which
// equals sum_i C_i(0) - sum_i C_i(T).
std::vector<Term> total_offset_terms(const ModelInstance& instance, const VariableIndex& index);

std::vector<Row> build_constraints(const ModelInstance& instance, const ScenarioConfig& config,
                                   const VariableIndex& index);

// Per-variable bounds implied by the potentials and storage limits. Zero
// potential pins the RE variables of that region-tech to 0 (and no potential
// row is emitted for it).
std::vector<Bounds> build_bounds(const ModelInstance& instance, const ScenarioConfig& config,
                                 const VariableIndex& index);

struct AssembledModel {
    LinearProgram lp;
    VariableIndex index;
};

AssembledModel assemble(const ModelInstance& instance, const ScenarioConfig& config);

struct DeploymentPlan {
    std::size_t num_regions = 0;
    std::size_t num_years = 0;
    std::vector<std::array<std::vector<double>, kNumTechs>> re_gw;   // [i][k][t]
    std::vector<std::vector<double>> ccs_local_t;                    // [i][t], 0 for buyers
    std::vector<std::vector<std::vector<double>>> ccs_traded_t;      // [j][i][t]
    std::vector<std::string> clamp_events;

    static DeploymentPlan zeros(std::size_t regions, std::size_t years);

    // CCS_i(t): local storage for sellers, total purchases for buyers.
    double ccs_total(std::size_t region, std::size_t t) const;
    double re_total(std::size_t region, TechKind k) const;
};

inline constexpr double kClampGw = 1e-9;
inline constexpr double kClampTonnes = 1e-6;

// Maps an optimal LP solution back to domain terms. Throws
// std::invalid_argument for a non-optimal solution.
DeploymentPlan extract_plan(const LpSolution& solution, const VariableIndex& index);

}  // namespace ccsplan
