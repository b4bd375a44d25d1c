#include "ccsplan/model_builder.hpp"

#include <cmath>
#include <stdexcept>

namespace ccsplan {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}

std::string_view to_string(ObjectiveMode m) {
    return m == ObjectiveMode::CostOnly ? "cost" : "max-reduction";
}

ScenarioConfig ScenarioConfig::standard(int id, ObjectiveMode mode) {
    if (id < 1 || id > 4) throw std::invalid_argument("scenario id must be 1..4, got " + std::to_string(id));
    ScenarioConfig c;
    c.scenario_id = id;
    c.ccs_limit = id <= 2 ? CcsLimitMode::EqualYearly : CcsLimitMode::TotalOnly;
    c.resilience = id == 2 || id == 4;
    c.objective = mode;
    return c;
}

GlobalParams effective_globals(const ModelInstance& instance, const ScenarioConfig& config) {
    GlobalParams g = instance.globals;
    const std::size_t T = instance.num_years();
    auto apply = [T](TimeSeries& target, const std::optional<TimeSeries>& o, const char* what) {
        if (!o) return;
        if (o->size() != T)
            throw std::invalid_argument(std::string("override for ") + what + " has length " +
                                        std::to_string(o->size()) + ", horizon is " + std::to_string(T));
        target.values = o->values;
    };
    apply(g.carbon_price, config.overrides.carbon_price, "carbon price");
    apply(g.ccs_price, config.overrides.ccs_price, "CCS unit cost");
    apply(g.transport_cost, config.overrides.transport_cost, "transport cost");
    return g;
}

VariableIndex::VariableIndex(const ModelInstance& instance)
    : regions_(instance.num_regions()),
      years_(instance.num_years()),
      start_year_(instance.horizon.start_year),
      sellers_(instance.sellers),
      buyers_(instance.buyers),
      seller_pos_(instance.num_regions(), npos),
      buyer_pos_(instance.num_regions(), npos) {
    for (const auto& r : instance.regions) ids_.push_back(r.id);
    for (std::size_t s = 0; s < sellers_.size(); ++s) seller_pos_[sellers_[s]] = s;
    for (std::size_t b = 0; b < buyers_.size(); ++b) buyer_pos_[buyers_[b]] = b;
    local_offset_ = regions_ * kNumTechs * years_;
    traded_offset_ = local_offset_ + sellers_.size() * years_;
}

std::size_t VariableIndex::re(std::size_t region, TechKind k, std::size_t t) const {
    if (region >= regions_ || t >= years_) throw std::out_of_range("VariableIndex::re");
    return (t * regions_ + region) * kNumTechs + index_of(k);
}

std::size_t VariableIndex::ccs_local(std::size_t seller_region, std::size_t t) const {
    if (seller_region >= regions_ || seller_pos_[seller_region] == npos || t >= years_)
        throw std::out_of_range("VariableIndex::ccs_local: not a storage region");
    return local_offset_ + t * sellers_.size() + seller_pos_[seller_region];
}

std::size_t VariableIndex::ccs_traded(std::size_t buyer_region, std::size_t seller_region,
                                      std::size_t t) const {
    if (buyer_region >= regions_ || seller_region >= regions_ || t >= years_ ||
        buyer_pos_[buyer_region] == npos || seller_pos_[seller_region] == npos)
        throw std::out_of_range("VariableIndex::ccs_traded");
    return traded_offset_ + (t * buyers_.size() + buyer_pos_[buyer_region]) * sellers_.size() +
           seller_pos_[seller_region];
}

VarTag VariableIndex::decode(std::size_t var) const {
    if (var >= size()) throw std::out_of_range("VariableIndex::decode");
    VarTag tag;
    if (var < local_offset_) {
        tag.kind = VarKind::Re;
        tag.tech = kAllTechs[var % kNumTechs];
        tag.region = (var / kNumTechs) % regions_;
        tag.t = var / (kNumTechs * regions_);
    } else if (var < traded_offset_) {
        const std::size_t v = var - local_offset_;
        tag.kind = VarKind::CcsLocal;
        tag.region = sellers_[v % sellers_.size()];
        tag.t = v / sellers_.size();
    } else {
        const std::size_t v = var - traded_offset_;
        tag.kind = VarKind::CcsTraded;
        tag.seller = sellers_[v % sellers_.size()];
        tag.region = buyers_[(v / sellers_.size()) % buyers_.size()];
        tag.t = v / (sellers_.size() * buyers_.size());
    }
    return tag;
}

std::string VariableIndex::name(std::size_t var) const {
    const VarTag tag = decode(var);
    const std::string year = std::to_string(start_year_ + static_cast<int>(tag.t));
    switch (tag.kind) {
        case VarKind::Re:
            return "RE[" + ids_[tag.region] + "][" + std::string(to_string(tag.tech)) + "][" + year + "]";
        case VarKind::CcsLocal:
            return "CCS_s[" + ids_[tag.region] + "][" + year + "]";
        case VarKind::CcsTraded:
            return "CCS_b[" + ids_[tag.region] + "][" + ids_[tag.seller] + "][" + year + "]";
    }
    return {};
}

std::vector<double> build_objective(const ModelInstance& instance, const ScenarioConfig& config,
                                    const VariableIndex& index) {
    const GlobalParams g = effective_globals(instance, config);
    const std::size_t T = instance.num_years();
    std::vector<double> c(index.size(), 0.0);

    for (std::size_t i = 0; i < instance.num_regions(); ++i) {
        const Region& reg = instance.regions[i];
        for (TechKind k : kAllTechs) {
            const RegionTech& rt = reg.of(k);
            // Capacity installed in year t earns the feed-in tariff in every
            // year from t to the end of the horizon.
            double fit_tail = 0.0;
            for (std::size_t t = T; t-- > 0;) {
                fit_tail += g.fit(k)[t] * rt.h;
                c[index.re(i, k, t)] = rt.rp[t] - g.carbon_price[t] * rt.g[t] - fit_tail;
            }
        }
    }
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t s : instance.sellers) c[index.ccs_local(s, t)] = g.ccs_price[t];
        for (std::size_t b : instance.buyers)
            for (std::size_t s : instance.sellers)
                c[index.ccs_traded(b, s, t)] =
                    g.ccs_price[t] + g.transport_cost[t] * distance(b, s, instance) + g.carbon_price[t];
    }
    return c;
}

namespace {

// Offset terms of region i in year t: sum_k g RE(i,k,t) + CCS_i(t).
void append_offset_terms(const ModelInstance& instance, const VariableIndex& index, std::size_t i,
                         std::size_t t, std::vector<Term>& out) {
    const Region& reg = instance.regions[i];
    for (TechKind k : kAllTechs) {
        const double g = reg.of(k).g[t];
        if (g != 0.0) out.push_back({index.re(i, k, t), g});
    }
    if (reg.has_storage()) {
        out.push_back({index.ccs_local(i, t), 1.0});
    } else {
        for (std::size_t s : instance.sellers) out.push_back({index.ccs_traded(i, s, t), 1.0});
    }
}

}  // namespace

std::vector<Term> total_offset_terms(const ModelInstance& instance, const VariableIndex& index) {
    std::vector<Term> terms;
    for (std::size_t t = 0; t < instance.num_years(); ++t)
        for (std::size_t i = 0; i < instance.num_regions(); ++i)
            append_offset_terms(instance, index, i, t, terms);
    return terms;
}

std::vector<Row> build_constraints(const ModelInstance& instance, const ScenarioConfig& config,
                                   const VariableIndex& index) {
    const std::size_t T = instance.num_years();
    const std::size_t n = instance.num_regions();
    const int y0 = instance.horizon.start_year;
    auto year = [y0](std::size_t t) { return std::to_string(y0 + static_cast<int>(t)); };
    std::vector<Row> rows;

    // Yearly national cap with C_i(t) telescoped back to C_i(0):
    //   sum_{tau<=t} sum_i offset_i(tau) >= sum_i C_i(0) - cap(t)
    const double baseline = instance.national_baseline_t();
    std::vector<Term> cumulative;
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < n; ++i) append_offset_terms(instance, index, i, t, cumulative);
        if (!instance.globals.cap[t]) continue;
        rows.push_back({"cap[" + year(t) + "]", cumulative, Sense::GreaterEqual,
                        baseline - *instance.globals.cap[t]});
    }

    // Storage limits per storage region.
    for (std::size_t s : instance.sellers) {
        const Region& reg = instance.regions[s];
        auto stored = [&](std::size_t t, std::vector<Term>& terms) {
            terms.push_back({index.ccs_local(s, t), 1.0});
            for (std::size_t b : instance.buyers) terms.push_back({index.ccs_traded(b, s, t), 1.0});
        };
        if (config.ccs_limit == CcsLimitMode::EqualYearly) {
            for (std::size_t t = 0; t < T; ++t) {
                Row row{"storage[" + reg.id + "][" + year(t) + "]", {}, Sense::LessEqual,
                        reg.ccs_capacity_t / static_cast<double>(T)};
                stored(t, row.terms);
                rows.push_back(std::move(row));
            }
        } else {
            Row row{"storage[" + reg.id + "]", {}, Sense::LessEqual, reg.ccs_capacity_t};
            for (std::size_t t = 0; t < T; ++t) stored(t, row.terms);
            rows.push_back(std::move(row));
        }
    }

    // Cumulative renewable potential.
    for (std::size_t i = 0; i < n; ++i) {
        for (TechKind k : kAllTechs) {
            const double p = instance.regions[i].of(k).potential_gw;
            if (p <= 0.0) continue;
            Row row{"potential[" + instance.regions[i].id + "][" + std::string(to_string(k)) + "]", {},
                    Sense::LessEqual, p};
            for (std::size_t t = 0; t < T; ++t) row.terms.push_back({index.re(i, k, t), 1.0});
            rows.push_back(std::move(row));
        }
    }

    // Yearly technology mix: sum_i RE(i,k,t) <= alpha_k sum_k' sum_i RE(i,k',t).
    if (config.resilience) {
        const auto& alpha = instance.globals.alpha;
        double sum = 0.0;
        for (double a : alpha) sum += a;
        if (std::abs(sum - 1.0) > 1e-9 || alpha[0] <= 0.0 || alpha[1] <= 0.0)
            throw std::invalid_argument("resilience constraint requires alpha_k > 0 summing to 1");
        for (std::size_t t = 0; t < T; ++t) {
            for (TechKind k : kAllTechs) {
                Row row{"mix[" + year(t) + "][" + std::string(to_string(k)) + "]", {}, Sense::LessEqual, 0.0};
                for (std::size_t i = 0; i < n; ++i)
                    for (TechKind kk : kAllTechs)
                        row.terms.push_back({index.re(i, kk, t), (kk == k ? 1.0 : 0.0) - alpha[index_of(k)]});
                rows.push_back(std::move(row));
            }
        }
    }

    // Optional: no region may drop below zero emissions.
    if (config.nonneg_emissions) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Term> cum;
            for (std::size_t t = 0; t < T; ++t) {
                append_offset_terms(instance, index, i, t, cum);
                rows.push_back({"nonneg[" + instance.regions[i].id + "][" + year(t) + "]", cum,
                                Sense::LessEqual, instance.regions[i].baseline_emissions_t});
            }
        }
    }

    if (config.min_total_offset_t)
        rows.push_back({"offset_floor", total_offset_terms(instance, index), Sense::GreaterEqual,
                        *config.min_total_offset_t});
    return rows;
}

std::vector<Bounds> build_bounds(const ModelInstance& instance, const ScenarioConfig& config,
                                 const VariableIndex& index) {
    std::vector<Bounds> b(index.size());
    const std::size_t T = instance.num_years();
    for (std::size_t i = 0; i < instance.num_regions(); ++i)
        for (TechKind k : kAllTechs) {
            const double p = instance.regions[i].of(k).potential_gw;
            for (std::size_t t = 0; t < T; ++t) b[index.re(i, k, t)] = {0.0, p};
        }
    for (std::size_t s : instance.sellers) {
        double cap = instance.regions[s].ccs_capacity_t;
        if (config.ccs_limit == CcsLimitMode::EqualYearly) cap /= static_cast<double>(T);
        for (std::size_t t = 0; t < T; ++t) {
            b[index.ccs_local(s, t)] = {0.0, cap};
            for (std::size_t j : instance.buyers) b[index.ccs_traded(j, s, t)] = {0.0, cap};
        }
    }
    return b;
}

AssembledModel assemble(const ModelInstance& instance, const ScenarioConfig& config) {
    AssembledModel m{LinearProgram{}, VariableIndex(instance)};
    const std::vector<double> cost = build_objective(instance, config, m.index);
    const std::vector<Bounds> bounds = build_bounds(instance, config, m.index);
    for (std::size_t v = 0; v < m.index.size(); ++v)
        m.lp.add_variable(m.index.name(v), bounds[v].lower, bounds[v].upper, cost[v]);
    for (Row& r : build_constraints(instance, config, m.index)) m.lp.add_row(std::move(r));
    m.lp.validate();
    return m;
}

DeploymentPlan DeploymentPlan::zeros(std::size_t regions, std::size_t years) {
    DeploymentPlan p;
    p.num_regions = regions;
    p.num_years = years;
    p.re_gw.resize(regions);
    for (auto& per_tech : p.re_gw)
        for (auto& series : per_tech) series.assign(years, 0.0);
    p.ccs_local_t.assign(regions, std::vector<double>(years, 0.0));
    p.ccs_traded_t.assign(regions, std::vector<std::vector<double>>(regions, std::vector<double>(years, 0.0)));
    return p;
}

double DeploymentPlan::ccs_total(std::size_t region, std::size_t t) const {
    double v = ccs_local_t[region][t];
    for (std::size_t s = 0; s < num_regions; ++s) v += ccs_traded_t[region][s][t];
    return v;
}

double DeploymentPlan::re_total(std::size_t region, TechKind k) const {
    double v = 0.0;
    for (double x : re_gw[region][index_of(k)]) v += x;
    return v;
}

DeploymentPlan extract_plan(const LpSolution& solution, const VariableIndex& index) {
    if (solution.status != SolveStatus::Optimal)
        throw std::invalid_argument("extract_plan: solution status is " +
                                    std::string(to_string(solution.status)));
    if (solution.x.size() != index.size()) throw std::invalid_argument("extract_plan: size mismatch");

    DeploymentPlan plan = DeploymentPlan::zeros(index.num_regions(), index.num_years());
    for (std::size_t v = 0; v < index.size(); ++v) {
        double x = solution.x[v];
        const VarTag tag = index.decode(v);
        const double floor = tag.kind == VarKind::Re ? kClampGw : kClampTonnes;
        if (x != 0.0 && std::abs(x) < floor) {
            plan.clamp_events.push_back(index.name(v));
            x = 0.0;
        }
        switch (tag.kind) {
            case VarKind::Re: plan.re_gw[tag.region][index_of(tag.tech)][tag.t] = x; break;
            case VarKind::CcsLocal: plan.ccs_local_t[tag.region][tag.t] = x; break;
            case VarKind::CcsTraded: plan.ccs_traded_t[tag.region][tag.seller][tag.t] = x; break;
        }
    }
    return plan;
}

}  // namespace ccsplan
