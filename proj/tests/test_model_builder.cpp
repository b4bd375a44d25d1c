#include "doctest.h"

#include "fixtures.hpp"

#include "ccsplan/model_builder.hpp"
#include "ccsplan/simplex.hpp"

#include <set>

using namespace ccsplan;

namespace {

ModelInstance tiny(int T, double capacity = 66.0) {
    RawInstance raw = fixtures::raw_globals(T, 1.0, 1.0, 1.0);
    raw.regions.push_back(fixtures::raw_region("S", 100.0, capacity, T, 35.0, 139.0));
    raw.regions.push_back(fixtures::raw_region("B", 50.0, 0.0, T, 35.0, 140.0));
    return fixtures::validated(raw);
}

}  // namespace

TEST_CASE("variable count and order") {
    const ModelInstance m = tiny(2);
    const VariableIndex idx(m);
    CHECK(idx.size() == 12);
    CHECK(idx.re(0, TechKind::Solar, 0) == 0);
    CHECK(idx.re(0, TechKind::Wind, 0) == 1);
    CHECK(idx.re(1, TechKind::Solar, 0) == 2);
    CHECK(idx.re(0, TechKind::Solar, 1) == 4);
    CHECK(idx.ccs_local(0, 0) == 8);
    CHECK(idx.ccs_local(0, 1) == 9);
    CHECK(idx.ccs_traded(1, 0, 0) == 10);
    CHECK(idx.ccs_traded(1, 0, 1) == 11);
    CHECK_THROWS_AS(idx.ccs_local(1, 0), std::out_of_range);
    CHECK(idx.name(11) == "CCS_b[B][S][2019]");
    CHECK(idx.name(5) == "RE[S][wind][2019]");

    std::set<std::string> names;
    for (std::size_t v = 0; v < idx.size(); ++v) {
        const VarTag tag = idx.decode(v);
        std::size_t back = 0;
        switch (tag.kind) {
            case VarKind::Re: back = idx.re(tag.region, tag.tech, tag.t); break;
            case VarKind::CcsLocal: back = idx.ccs_local(tag.region, tag.t); break;
            case VarKind::CcsTraded: back = idx.ccs_traded(tag.region, tag.seller, tag.t); break;
        }
        CHECK(back == v);
        names.insert(idx.name(v));
    }
    CHECK(names.size() == idx.size());
}

TEST_CASE("traded CCS coefficient at baseline prices") {
    RawInstance raw = fixtures::raw_globals(1, 10000.0, 10000.0, 8.1739);
    raw.regions.push_back(fixtures::raw_region("S", 10.0, 10.0, 1));
    raw.regions.push_back(fixtures::raw_region("B", 10.0, 0.0, 1));
    raw.distances = std::vector<RawDistance>{{"B", "S", 100.0}};
    const ModelInstance m = fixtures::validated(raw);
    const VariableIndex idx(m);
    const auto c = build_objective(m, ScenarioConfig::standard(1), idx);
    CHECK(c[idx.ccs_traded(1, 0, 0)] == doctest::Approx(20817.39).epsilon(1e-12));
    CHECK(c[idx.ccs_local(0, 0)] == 10000.0);
}

TEST_CASE("renewable coefficient") {
    const ModelInstance m = fixtures::unit1();
    const VariableIndex idx(m);
    const auto c = build_objective(m, ScenarioConfig::standard(1), idx);
    CHECK(c[idx.re(0, TechKind::Solar, 0)] == -4.0);

    // Feed-in revenue accrues in every year from installation onward.
    RawInstance raw = fixtures::raw_globals(3, 0.0, 0.0, 0.0);
    raw.feed_in_tariff[TechKind::Solar] = {2.0, 2.0, 2.0};
    RawRegion r = fixtures::raw_region("R", 1.0, 1.0, 3);
    r.tech[TechKind::Solar] = RawRegionTech{std::vector<double>(3, 0.0), std::vector<double>(3, 0.0), 1.0, 1.0};
    raw.regions.push_back(r);
    const ModelInstance m3 = fixtures::validated(raw);
    const VariableIndex idx3(m3);
    const auto c3 = build_objective(m3, ScenarioConfig::standard(1), idx3);
    CHECK(c3[idx3.re(0, TechKind::Solar, 0)] == -6.0);
    CHECK(c3[idx3.re(0, TechKind::Solar, 1)] == -4.0);
    CHECK(c3[idx3.re(0, TechKind::Solar, 2)] == -2.0);
}

TEST_CASE("equal-yearly storage rows") {
    RawInstance raw = fixtures::raw_globals(33, 1.0, 1.0, 1.0);
    raw.regions.push_back(fixtures::raw_region("S", 100.0, 330.0, 33));
    const ModelInstance m = fixtures::validated(raw);
    const auto rows = build_constraints(m, ScenarioConfig::standard(1), VariableIndex(m));
    std::size_t storage = 0;
    for (const Row& r : rows)
        if (r.name.rfind("storage[", 0) == 0) {
            ++storage;
            CHECK(r.rhs == 10.0);
        }
    CHECK(storage == 33);
    const auto total = build_constraints(m, ScenarioConfig::standard(3), VariableIndex(m));
    REQUIRE(total.size() == 1);
    CHECK(total[0].name == "storage[S]");
    CHECK(total[0].rhs == 330.0);
}

TEST_CASE("row bookkeeping across scenarios") {
    const ModelInstance m = fixtures::two_region();
    const std::size_t T = m.num_years();
    const std::size_t finite_caps = 1;
    const std::size_t potentials = 4;
    const auto s1 = assemble(m, ScenarioConfig::standard(1));
    CHECK(s1.lp.num_rows() == finite_caps + m.sellers.size() * T + potentials);
    const auto s4 = assemble(m, ScenarioConfig::standard(4));
    CHECK(s4.lp.num_rows() == finite_caps + m.sellers.size() + potentials + kNumTechs * T);
    CHECK(s4.lp.var_names()[0] == "RE[S][solar][2018]");
}

TEST_CASE("unit-1 assembles to 3 variables and 3 rows") {
    const auto a = assemble(fixtures::unit1(), ScenarioConfig::standard(1));
    CHECK(a.lp.num_vars() == 3);
    CHECK(a.lp.num_rows() == 3);
    CHECK(a.lp.bounds()[a.index.re(0, TechKind::Wind, 0)].upper == 0.0);
}

TEST_CASE("resilience forces the 31/69 split") {
    const ModelInstance m = fixtures::two_region();
    ScenarioConfig cfg = ScenarioConfig::standard(2);
    const auto a = assemble(m, cfg);
    const LpSolution s = solve(a.lp);
    REQUIRE(s.status == SolveStatus::Optimal);
    const DeploymentPlan p = extract_plan(s, a.index);
    for (std::size_t t = 0; t < m.num_years(); ++t) {
        double solar = 0.0, total = 0.0;
        for (std::size_t i = 0; i < m.num_regions(); ++i) {
            solar += p.re_gw[i][0][t];
            total += p.re_gw[i][0][t] + p.re_gw[i][1][t];
        }
        if (total > 0.0) CHECK(std::abs(solar / total - 0.31) <= 1e-9);
    }

    RawInstance raw = to_raw(m);
    raw.alpha[TechKind::Wind] = 0.5;
    ValidateOptions lax;
    lax.resilience = false;
    const ModelInstance bad = *validate_instance(raw, lax).instance;
    CHECK_THROWS_AS(assemble(bad, cfg), std::invalid_argument);
}

TEST_CASE("extract_plan clamps tiny values and rejects non-optimal solutions") {
    const auto a = assemble(fixtures::unit1(), ScenarioConfig::standard(1));
    LpSolution s;
    s.status = SolveStatus::Optimal;
    s.x.assign(a.lp.num_vars(), 0.0);
    const DeploymentPlan zero = extract_plan(s, a.index);
    CHECK(zero.re_total(0, TechKind::Solar) == 0.0);
    CHECK(zero.clamp_events.empty());

    s.x[a.index.re(0, TechKind::Solar, 0)] = 1e-12;
    const DeploymentPlan clamped = extract_plan(s, a.index);
    CHECK(clamped.re_gw[0][0][0] == 0.0);
    REQUIRE(clamped.clamp_events.size() == 1);
    CHECK(clamped.clamp_events[0] == "RE[R][solar][2018]");

    s.status = SolveStatus::Infeasible;
    CHECK_THROWS_AS(extract_plan(s, a.index), std::invalid_argument);
}

TEST_CASE("overrides replace whole series") {
    const ModelInstance m = fixtures::two_region();
    ScenarioConfig cfg = ScenarioConfig::standard(1);
    cfg.overrides.carbon_price = TimeSeries::constant(m.num_years(), 5.0);
    CHECK(effective_globals(m, cfg).carbon_price.values == std::vector<double>{5.0, 5.0});
    cfg.overrides.ccs_price = TimeSeries::constant(3, 1.0);
    CHECK_THROWS_AS(effective_globals(m, cfg), std::invalid_argument);
    CHECK_THROWS_AS(ScenarioConfig::standard(5), std::invalid_argument);
}
