#pragma once

// Environmental and economic accounting of a solved scenario.

#include "ccsplan/scenario.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ccsplan {

struct ContributionShares {
    // Cumulative tonnes offset by year index t (through the end of year t).
    std::vector<double> solar_t;
    std::vector<double> wind_t;
    std::vector<double> ccs_t;
    double total_t = 0.0;
    // Shares at the end of the horizon; empty when nothing was offset.
    std::optional<double> solar_pct;
    std::optional<double> wind_pct;
    std::optional<double> ccs_pct;
};

ContributionShares contribution_shares(const ScenarioResult& result, const ModelInstance& instance);

// 100 * offset / baseline. Throws std::invalid_argument for baseline <= 0.
double reduction_percentage(double total_offset_t, double baseline_t);

struct CashflowOptions {
    // Adds rp(t + life) * RE(t) as replacement capex in year t + life.
    bool equipment_replacement = false;
    int equipment_life_years = 20;
};

// All entries in JPY, indexed by year index t.
struct RegionCashflow {
    std::vector<double> invest_re;
    std::vector<double> invest_ccs;
    std::vector<double> transport_cost;
    std::vector<double> storage_fee_paid;
    std::vector<double> fit_revenue;
    std::vector<double> ets_revenue;
    std::vector<double> storage_fee_received;
    std::vector<double> replacement_capex;

    explicit RegionCashflow(std::size_t years = 0);
    // Revenue minus costs, excluding storage fees received from buyers.
    double net(std::size_t t) const;
    double net_with_transfers(std::size_t t) const { return net(t) + storage_fee_received[t]; }
};

// National per-technology split. CCS carries every storage-side cost.
struct TechnologyCashflow {
    std::array<std::vector<double>, kNumTechs> invest;
    std::array<std::vector<double>, kNumTechs> revenue;   // FIT + ETS earned by the technology
    std::vector<double> ccs_cost;                          // capture + transport + storage fee
};

struct CashflowSeries {
    int start_year = 0;
    std::vector<RegionCashflow> regions;
    RegionCashflow national;
    TechnologyCashflow by_technology;
    std::vector<double> cumulative_net;                  // national, excluding transfer receipts
    std::vector<double> cumulative_net_with_transfers;   // national, including them
};

CashflowSeries cashflow(const ScenarioResult& result, const ModelInstance& instance,
                        const CashflowOptions& options = {});

// First calendar year whose cumulative net is >= 0, if any.
std::optional<int> payback_year(std::span<const double> cumulative_net, int start_year);
std::optional<int> payback_year(const CashflowSeries& series);

struct TradeFlow {
    std::size_t t = 0;
    std::size_t from = 0;  // buyer region (emits)
    std::size_t to = 0;    // storage region
    double tonnes = 0.0;
};

struct TradeMatrix {
    std::vector<TradeFlow> flows;  // non-zero entries only, ordered (t, from, to)
    double total_t = 0.0;
    bool any_trading = false;
};

TradeMatrix trade_matrix(const ScenarioResult& result);

}  // namespace ccsplan
