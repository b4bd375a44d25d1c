#include "ccsplan/results.hpp"

#include "csv.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace ccsplan {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    std::string s(buf);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

namespace {

constexpr const char* kNational = "NATIONAL";

json num(double v) { return json(std::strtod(format_number(v).c_str(), nullptr)); }

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + p.string());
}

class CsvWriter {
public:
    explicit CsvWriter(std::initializer_list<std::string> header) {
        bool first = true;
        for (const auto& h : header) {
            if (!first) text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }
    explicit CsvWriter(const std::vector<std::string>& header) {
        for (std::size_t c = 0; c < header.size(); ++c) text_ += (c ? "," : "") + header[c];
        text_ += '\n';
    }

    CsvWriter& cell(const std::string& s) {
        if (!row_start_) text_ += ',';
        text_ += s;
        row_start_ = false;
        return *this;
    }
    CsvWriter& cell(double v) { return cell(format_number(v)); }
    CsvWriter& cell(int v) { return cell(std::to_string(v)); }
    void end() {
        text_ += '\n';
        row_start_ = true;
    }
    const std::string& text() const { return text_; }

private:
    std::string text_;
    bool row_start_ = true;
};

std::string limit_name(CcsLimitMode m) { return m == CcsLimitMode::EqualYearly ? "equal-yearly" : "total-only"; }

json summary_json(const ScenarioResult& r, const ModelInstance& instance, const BundleOptions& options) {
    json s = json::object();
    s["scenario_id"] = r.config.scenario_id;
    s["ccs_limit"] = limit_name(r.config.ccs_limit);
    s["resilience"] = r.config.resilience;
    s["objective_mode"] = std::string(to_string(r.config.objective));
    s["nonneg_emissions"] = r.config.nonneg_emissions;
    s["equipment_replacement"] = options.cashflow.equipment_replacement;
    s["status"] = r.error.empty() ? std::string(to_string(r.status)) : "error";
    s["error"] = r.error.empty() ? json(nullptr) : json(r.error);
    s["diagnostics"] = r.diagnostics;
    s["baseline_t"] = num(instance.national_baseline_t());

    json overrides = json::object();
    const auto& o = r.config.overrides;
    if (o.carbon_price && o.carbon_price->size()) overrides["carbon_price"] = num((*o.carbon_price)[0]);
    if (o.ccs_price && o.ccs_price->size()) overrides["ccs_price"] = num((*o.ccs_price)[0]);
    if (o.transport_cost && o.transport_cost->size()) overrides["transport_cost"] = num((*o.transport_cost)[0]);
    s["overrides"] = overrides;

    s["solver"] = {{"iterations", r.stats.iterations},
                   {"num_vars", r.stats.num_vars},
                   {"num_rows", r.stats.num_rows},
                   {"stage1_offset_t", opt_num(r.stats.stage1_offset_t)}};

    if (!r.optimal()) {
        for (const char* key : {"objective_jpy", "reduction_pct", "final_emissions_t", "total_offset_t",
                                "payback_year", "cumulative_net_jpy", "cumulative_net_with_transfers_jpy",
                                "any_trading", "traded_t", "shares", "offset_by_tech_t"})
            s[key] = nullptr;
        return s;
    }

    const std::size_t T = instance.num_years();
    const ContributionShares sh = contribution_shares(r, instance);
    const CashflowSeries cf = cashflow(r, instance, options.cashflow);
    const TradeMatrix tm = trade_matrix(r);
    const auto payback = payback_year(cf);

    s["objective_jpy"] = num(r.objective_value);
    s["reduction_pct"] = num(r.reduction_pct);
    s["final_emissions_t"] = num(r.national_emissions(T));
    s["total_offset_t"] = num(instance.national_baseline_t() - r.national_emissions(T));
    s["payback_year"] = payback ? json(*payback) : json(nullptr);
    s["cumulative_net_jpy"] = num(cf.cumulative_net.empty() ? 0.0 : cf.cumulative_net.back());
    s["cumulative_net_with_transfers_jpy"] =
        num(cf.cumulative_net_with_transfers.empty() ? 0.0 : cf.cumulative_net_with_transfers.back());
    s["any_trading"] = tm.any_trading;
    s["traded_t"] = num(tm.total_t);
    s["shares"] = {{"solar_pct", opt_num(sh.solar_pct)},
                   {"wind_pct", opt_num(sh.wind_pct)},
                   {"ccs_pct", opt_num(sh.ccs_pct)}};
    s["offset_by_tech_t"] = {{"solar", num(T ? sh.solar_t.back() : 0.0)},
                             {"wind", num(T ? sh.wind_t.back() : 0.0)},
                             {"ccs", num(T ? sh.ccs_t.back() : 0.0)}};
    s["clamp_events"] = r.plan.clamp_events.size();
    return s;
}

void cashflow_row(CsvWriter& w, const std::string& region, int year, const RegionCashflow& rc, std::size_t t,
                  double cum, double cum_transfers) {
    w.cell(region).cell(year);
    for (double v : {rc.invest_re[t], rc.invest_ccs[t], rc.transport_cost[t], rc.storage_fee_paid[t],
                     rc.fit_revenue[t], rc.ets_revenue[t], rc.storage_fee_received[t], rc.replacement_capex[t],
                     rc.net(t), cum, rc.net_with_transfers(t), cum_transfers})
        w.cell(v);
    w.end();
}

}  // namespace

void write_results(const ScenarioResult& r, const ModelInstance& instance, const fs::path& out,
                   const BundleOptions& options) {
    fs::create_directories(out);
    write_text(out / "summary.json", summary_json(r, instance, options).dump(2) + "\n");
    if (!r.optimal()) return;

    const std::size_t T = instance.num_years();
    const std::size_t n = instance.num_regions();
    const int y0 = instance.horizon.start_year;
    const DeploymentPlan& plan = r.plan;

    CsvWriter pl({"region", "item", "year", "amount", "unit"});
    for (std::size_t i = 0; i < n; ++i) {
        for (TechKind k : kAllTechs)
            for (std::size_t t = 0; t < T; ++t)
                if (plan.re_gw[i][index_of(k)][t] != 0.0) {
                    pl.cell(instance.regions[i].id).cell(std::string(to_string(k))).cell(y0 + static_cast<int>(t));
                    pl.cell(plan.re_gw[i][index_of(k)][t]).cell("GW");
                    pl.end();
                }
        for (std::size_t t = 0; t < T; ++t)
            if (plan.ccs_total(i, t) != 0.0) {
                pl.cell(instance.regions[i].id).cell("CCS").cell(y0 + static_cast<int>(t));
                pl.cell(plan.ccs_total(i, t)).cell("t");
                pl.end();
            }
    }
    write_text(out / "plan.csv", pl.text());

    CsvWriter em({"region", "year", "tonnes"});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t <= T; ++t) {
            em.cell(instance.regions[i].id).cell(y0 - 1 + static_cast<int>(t)).cell(r.emissions_t[i][t]);
            em.end();
        }
    write_text(out / "emissions.csv", em.text());

    CsvWriter tr({"year", "from", "to", "tonnes"});
    for (const TradeFlow& f : trade_matrix(r).flows) {
        tr.cell(y0 + static_cast<int>(f.t)).cell(instance.regions[f.from].id).cell(instance.regions[f.to].id);
        tr.cell(f.tonnes);
        tr.end();
    }
    write_text(out / "trades.csv", tr.text());

    const CashflowSeries cf = cashflow(r, instance, options.cashflow);
    CsvWriter cw({"region", "year", "invest_re", "invest_ccs", "transport_cost", "storage_fee_paid", "fit_revenue",
                  "ets_revenue", "storage_fee_received", "replacement_capex", "net", "cumulative_net",
                  "net_with_transfers", "cumulative_net_with_transfers"});
    for (std::size_t i = 0; i < n; ++i) {
        double cum = 0.0, cum_tr = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            cum += cf.regions[i].net(t);
            cum_tr += cf.regions[i].net_with_transfers(t);
            cashflow_row(cw, instance.regions[i].id, y0 + static_cast<int>(t), cf.regions[i], t, cum, cum_tr);
        }
    }
    for (std::size_t t = 0; t < T; ++t)
        cashflow_row(cw, kNational, y0 + static_cast<int>(t), cf.national, t, cf.cumulative_net[t],
                     cf.cumulative_net_with_transfers[t]);
    write_text(out / "cashflow.csv", cw.text());

    const fs::path pd = out / "plotdata";
    fs::create_directories(pd);
    std::vector<std::string> wide{"year"};
    for (const Region& reg : instance.regions) wide.push_back(reg.id);
    auto write_wide = [&](const char* file, auto&& value) {
        CsvWriter w(wide);
        for (std::size_t t = 0; t < T; ++t) {
            w.cell(y0 + static_cast<int>(t));
            for (std::size_t i = 0; i < n; ++i) w.cell(value(i, t));
            w.end();
        }
        write_text(pd / file, w.text());
    };
    write_wide("deploy_solar_gw.csv", [&](std::size_t i, std::size_t t) { return plan.re_gw[i][0][t]; });
    write_wide("deploy_wind_gw.csv", [&](std::size_t i, std::size_t t) { return plan.re_gw[i][1][t]; });
    write_wide("deploy_ccs_t.csv", [&](std::size_t i, std::size_t t) { return plan.ccs_total(i, t); });

    CsvWriter ne({"year", "tonnes"});
    for (std::size_t t = 0; t <= T; ++t) {
        ne.cell(y0 - 1 + static_cast<int>(t)).cell(r.national_emissions(t));
        ne.end();
    }
    write_text(pd / "emissions_national.csv", ne.text());

    const ContributionShares sh = contribution_shares(r, instance);
    CsvWriter f13({"year", "solar_t", "wind_t", "ccs_t"});
    for (std::size_t t = 0; t < T; ++t) {
        f13.cell(y0 + static_cast<int>(t)).cell(sh.solar_t[t]).cell(sh.wind_t[t]).cell(sh.ccs_t[t]);
        f13.end();
    }
    write_text(pd / "fig13.csv", f13.text());

    const TechnologyCashflow& bt = cf.by_technology;
    CsvWriter f14({"year", "invest_solar", "invest_wind", "ccs_cost", "revenue_solar", "revenue_wind",
                   "cumulative_net", "cumulative_net_with_transfers"});
    for (std::size_t t = 0; t < T; ++t) {
        f14.cell(y0 + static_cast<int>(t)).cell(bt.invest[0][t]).cell(bt.invest[1][t]).cell(bt.ccs_cost[t]);
        f14.cell(bt.revenue[0][t]).cell(bt.revenue[1][t]).cell(cf.cumulative_net[t]);
        f14.cell(cf.cumulative_net_with_transfers[t]);
        f14.end();
    }
    write_text(pd / "fig14.csv", f14.text());
}

void write_sweep(const SweepResult& sw, const ModelInstance& instance, const fs::path& out) {
    fs::create_directories(out / "points");
    CsvWriter w({"param_value", "reduction_pct", "objective", "any_trading", "status"});
    json points = json::array();
    const int width = std::max<int>(2, static_cast<int>(std::to_string(sw.points.size()).size()));
    for (std::size_t k = 0; k < sw.points.size(); ++k) {
        const SweepPoint& p = sw.points[k];
        const bool ok = p.result.optimal();
        const std::string status = p.error.empty() ? std::string(to_string(p.result.status)) : "error";
        w.cell(p.value);
        w.cell(ok ? format_number(p.result.reduction_pct) : "");
        w.cell(ok ? format_number(p.result.objective_value) : "");
        w.cell(ok ? (p.any_trading ? "true" : "false") : "");
        w.cell(status);
        w.end();
        points.push_back({{"value", num(p.value)},
                          {"status", status},
                          {"reduction_pct", ok ? num(p.result.reduction_pct) : json(nullptr)},
                          {"objective_jpy", ok ? num(p.result.objective_value) : json(nullptr)},
                          {"any_trading", ok ? json(p.any_trading) : json(nullptr)},
                          {"traded_t", ok ? num(p.traded_t) : json(nullptr)}});

        std::string dir = std::to_string(k);
        dir.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(dir.size()))), '0');
        fs::create_directories(out / "points" / dir);
        ScenarioResult copy = p.result;
        if (!p.error.empty()) copy.error = p.error;
        write_text(out / "points" / dir / "summary.json", summary_json(copy, instance, {}).dump(2) + "\n");
    }
    write_text(out / "sweep.csv", w.text());

    json s = json::object();
    s["parameter"] = std::string(to_string(sw.parameter));
    json grid = json::array();
    for (double v : sw.grid) grid.push_back(num(v));
    s["grid"] = grid;
    s["monotone_reduction"] = sw.monotone_reduction;
    s["warnings"] = sw.warnings;
    s["threshold"] = opt_num(sw.threshold);
    s["succeeded"] = sw.succeeded();
    s["points"] = points;
    write_text(out / "sweep.json", s.dump(2) + "\n");
}

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

std::vector<std::string> verify_bundle(const fs::path& dir) {
    std::vector<std::string> problems;
    json s;
    {
        std::ifstream in(dir / "summary.json");
        if (!in) return {"missing summary.json"};
        try {
            s = json::parse(in);
        } catch (const json::parse_error& e) {
            return {std::string("summary.json: ") + e.what()};
        }
    }
    if (s.value("status", "") != "optimal") return problems;

    auto check = [&](const char* key, double recomputed) {
        if (!s.contains(key) || !s[key].is_number()) {
            problems.push_back(std::string("summary.json: ") + key + " missing");
            return;
        }
        const double stated = s[key].get<double>();
        if (!close(stated, recomputed))
            problems.push_back(std::string(key) + ": summary " + format_number(stated) + " vs recomputed " +
                               format_number(recomputed));
    };
    auto number_at = [&](const csv::Table& t, const csv::Record& r, const char* col) {
        auto c = t.column(col);
        auto v = c ? csv::parse_double(r.fields[*c]) : std::nullopt;
        if (!v) problems.push_back(t.file + " line " + std::to_string(r.line) + ": bad " + col);
        return v.value_or(0.0);
    };

    if (auto em = csv::read(dir / "emissions.csv", problems)) {
        std::map<int, double> by_year;
        for (const auto& r : em->records) {
            auto year = csv::parse_int(r.fields[*em->column("year")]);
            if (year) by_year[*year] += number_at(*em, r, "tonnes");
        }
        if (!by_year.empty()) {
            const double base = by_year.begin()->second;
            const double fin = by_year.rbegin()->second;
            check("total_offset_t", base - fin);
            if (base > 0.0) check("reduction_pct", 100.0 * (base - fin) / base);
        }
    }

    if (auto cf = csv::read(dir / "cashflow.csv", problems)) {
        std::optional<int> payback;
        double cum = 0.0, cum_tr = 0.0;
        for (const auto& r : cf->records) {
            if (r.fields[0] != kNational) continue;
            cum = number_at(*cf, r, "cumulative_net");
            cum_tr = number_at(*cf, r, "cumulative_net_with_transfers");
            if (!payback && cum >= 0.0) payback = csv::parse_int(r.fields[1]);
        }
        check("cumulative_net_jpy", cum);
        check("cumulative_net_with_transfers_jpy", cum_tr);
        if (!s.value("equipment_replacement", false)) check("objective_jpy", -cum);
        const json& pb = s["payback_year"];
        const std::optional<int> stated = pb.is_number_integer() ? std::optional(pb.get<int>()) : std::nullopt;
        if (stated != payback)
            problems.push_back("payback_year: summary " + (stated ? std::to_string(*stated) : "null") +
                               " vs recomputed " + (payback ? std::to_string(*payback) : "null"));
    }

    if (auto tr = csv::read(dir / "trades.csv", problems)) {
        double total = 0.0;
        for (const auto& r : tr->records) total += number_at(*tr, r, "tonnes");
        check("traded_t", total);
    }

    if (auto f13 = csv::read(dir / "plotdata" / "fig13.csv", problems); f13 && !f13->records.empty()) {
        const auto& last = f13->records.back();
        const double solar = number_at(*f13, last, "solar_t");
        const double wind = number_at(*f13, last, "wind_t");
        const double ccs = number_at(*f13, last, "ccs_t");
        const double total = solar + wind + ccs;
        const json& shares = s["shares"];
        if (total > 0.0 && shares.is_object()) {
            for (auto [key, v] : {std::pair{"solar_pct", solar}, {"wind_pct", wind}, {"ccs_pct", ccs}}) {
                if (!shares[key].is_number() || !close(shares[key].get<double>(), 100.0 * v / total))
                    problems.push_back(std::string("shares.") + key + " does not match fig13.csv");
            }
        }
    }
    return problems;
}

}  // namespace ccsplan
