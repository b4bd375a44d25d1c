#include "ccsplan/analytics.hpp"

#include <stdexcept>

namespace ccsplan {

ContributionShares contribution_shares(const ScenarioResult& result, const ModelInstance& instance) {
    const std::size_t T = instance.num_years();
    ContributionShares s;
    s.solar_t.assign(T, 0.0);
    s.wind_t.assign(T, 0.0);
    s.ccs_t.assign(T, 0.0);
    if (!result.optimal()) return s;

    const DeploymentPlan& plan = result.plan;
    double solar = 0.0, wind = 0.0, ccs = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < instance.num_regions(); ++i) {
            const Region& reg = instance.regions[i];
            solar += reg.of(TechKind::Solar).g[t] * plan.re_gw[i][index_of(TechKind::Solar)][t];
            wind += reg.of(TechKind::Wind).g[t] * plan.re_gw[i][index_of(TechKind::Wind)][t];
            ccs += plan.ccs_total(i, t);
        }
        s.solar_t[t] = solar;
        s.wind_t[t] = wind;
        s.ccs_t[t] = ccs;
    }
    s.total_t = solar + wind + ccs;
    if (s.total_t > 0.0) {
        s.solar_pct = 100.0 * solar / s.total_t;
        s.wind_pct = 100.0 * wind / s.total_t;
        s.ccs_pct = 100.0 * ccs / s.total_t;
    }
    return s;
}

double reduction_percentage(double total_offset_t, double baseline_t) {
    if (!(baseline_t > 0.0)) throw std::invalid_argument("reduction_percentage: baseline must be > 0");
    return 100.0 * total_offset_t / baseline_t;
}

RegionCashflow::RegionCashflow(std::size_t years)
    : invest_re(years, 0.0),
      invest_ccs(years, 0.0),
      transport_cost(years, 0.0),
      storage_fee_paid(years, 0.0),
      fit_revenue(years, 0.0),
      ets_revenue(years, 0.0),
      storage_fee_received(years, 0.0),
      replacement_capex(years, 0.0) {}

double RegionCashflow::net(std::size_t t) const {
    return fit_revenue[t] + ets_revenue[t] - invest_re[t] - invest_ccs[t] - transport_cost[t] -
           storage_fee_paid[t] - replacement_capex[t];
}

CashflowSeries cashflow(const ScenarioResult& result, const ModelInstance& instance,
                        const CashflowOptions& options) {
    const std::size_t T = instance.num_years();
    const std::size_t n = instance.num_regions();
    CashflowSeries cf;
    cf.start_year = instance.horizon.start_year;
    cf.regions.assign(n, RegionCashflow(T));
    cf.national = RegionCashflow(T);
    for (auto& v : cf.by_technology.invest) v.assign(T, 0.0);
    for (auto& v : cf.by_technology.revenue) v.assign(T, 0.0);
    cf.by_technology.ccs_cost.assign(T, 0.0);
    cf.cumulative_net.assign(T, 0.0);
    cf.cumulative_net_with_transfers.assign(T, 0.0);
    if (!result.optimal()) return cf;

    const GlobalParams g = effective_globals(instance, result.config);
    const DeploymentPlan& plan = result.plan;

    for (std::size_t i = 0; i < n; ++i) {
        const Region& reg = instance.regions[i];
        RegionCashflow& rc = cf.regions[i];
        for (TechKind k : kAllTechs) {
            const std::size_t ki = index_of(k);
            const RegionTech& rt = reg.of(k);
            double installed = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                const double re = plan.re_gw[i][ki][t];
                installed += re;
                const double invest = rt.rp[t] * re;
                const double ets = g.carbon_price[t] * rt.g[t] * re;
                const double fit = g.fit(k)[t] * rt.h * installed;
                rc.invest_re[t] += invest;
                rc.ets_revenue[t] += ets;
                rc.fit_revenue[t] += fit;
                cf.by_technology.invest[ki][t] += invest;
                cf.by_technology.revenue[ki][t] += ets + fit;
                if (options.equipment_replacement) {
                    const std::size_t due = t + static_cast<std::size_t>(options.equipment_life_years);
                    if (due < T) {
                        rc.replacement_capex[due] += rt.rp[due] * re;
                        cf.by_technology.invest[ki][due] += rt.rp[due] * re;
                    }
                }
            }
        }
        for (std::size_t t = 0; t < T; ++t) {
            if (reg.has_storage()) {
                rc.invest_ccs[t] += g.ccs_price[t] * plan.ccs_local_t[i][t];
                continue;
            }
            for (std::size_t s : instance.sellers) {
                const double tonnes = plan.ccs_traded_t[i][s][t];
                if (tonnes == 0.0) continue;
                rc.invest_ccs[t] += g.ccs_price[t] * tonnes;
                rc.transport_cost[t] += g.transport_cost[t] * tonnes * distance(i, s, instance);
                const double fee = g.carbon_price[t] * tonnes;
                rc.storage_fee_paid[t] += fee;
                cf.regions[s].storage_fee_received[t] += fee;
            }
        }
    }

    double cum = 0.0, cum_transfers = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        RegionCashflow& nat = cf.national;
        for (const RegionCashflow& rc : cf.regions) {
            nat.invest_re[t] += rc.invest_re[t];
            nat.invest_ccs[t] += rc.invest_ccs[t];
            nat.transport_cost[t] += rc.transport_cost[t];
            nat.storage_fee_paid[t] += rc.storage_fee_paid[t];
            nat.fit_revenue[t] += rc.fit_revenue[t];
            nat.ets_revenue[t] += rc.ets_revenue[t];
            nat.storage_fee_received[t] += rc.storage_fee_received[t];
            nat.replacement_capex[t] += rc.replacement_capex[t];
        }
        cf.by_technology.ccs_cost[t] = nat.invest_ccs[t] + nat.transport_cost[t] + nat.storage_fee_paid[t];
        cum += nat.net(t);
        cum_transfers += nat.net_with_transfers(t);
        cf.cumulative_net[t] = cum;
        cf.cumulative_net_with_transfers[t] = cum_transfers;
    }
    return cf;
}

std::optional<int> payback_year(std::span<const double> cumulative_net, int start_year) {
    for (std::size_t t = 0; t < cumulative_net.size(); ++t)
        if (cumulative_net[t] >= 0.0) return start_year + static_cast<int>(t);
    return std::nullopt;
}

std::optional<int> payback_year(const CashflowSeries& series) {
    return payback_year(series.cumulative_net, series.start_year);
}

TradeMatrix trade_matrix(const ScenarioResult& result) {
    TradeMatrix tm;
    if (!result.optimal()) return tm;
    const DeploymentPlan& plan = result.plan;
    for (std::size_t t = 0; t < plan.num_years; ++t)
        for (std::size_t j = 0; j < plan.num_regions; ++j)
            for (std::size_t i = 0; i < plan.num_regions; ++i) {
                const double v = plan.ccs_traded_t[j][i][t];
                if (v == 0.0) continue;
                tm.flows.push_back({t, j, i, v});
                tm.total_t += v;
            }
    tm.any_trading = tm.total_t > kClampTonnes;
    return tm;
}

}  // namespace ccsplan
