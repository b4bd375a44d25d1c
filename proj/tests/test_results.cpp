#include "doctest.h"

#include "fixtures.hpp"

#include "ccsplan/results.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace ccsplan;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("ccsplan_test_results_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::vector<std::string> out;
    std::ifstream in(p);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// Relative path -> contents for every file below `root`.
std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
    return out;
}

nlohmann::json summary(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "summary.json")); }

}  // namespace

TEST_CASE("format_number") {
    CHECK(format_number(4.0) == "4");
    CHECK(format_number(0.31) == "0.31");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(-1e-12) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(760e6) == "760000000");
    CHECK(format_number(1e300 * 1e300) == "inf");
}

TEST_CASE("unit-1 bundle") {
    const ModelInstance m = fixtures::unit1();
    const ScenarioResult r = run_scenario(m, ScenarioConfig::standard(1));
    REQUIRE(r.optimal());
    const fs::path dir = scratch("unit1");
    write_results(r, m, dir);

    CHECK(lines(dir / "plan.csv") ==
          std::vector<std::string>{"region,item,year,amount,unit", "R,solar,2018,4,GW", "R,CCS,2018,10,t"});
    CHECK(lines(dir / "emissions.csv") ==
          std::vector<std::string>{"region,year,tonnes", "R,2017,100", "R,2018,50"});
    CHECK(lines(dir / "trades.csv") == std::vector<std::string>{"year,from,to,tonnes"});
    CHECK(lines(dir / "plotdata" / "fig13.csv") ==
          std::vector<std::string>{"year,solar_t,wind_t,ccs_t", "2018,40,0,10"});

    const auto s = summary(dir);
    CHECK(s["status"] == "optimal");
    CHECK(s["objective_jpy"].get<double>() == doctest::Approx(-6.0));
    CHECK(s["reduction_pct"].get<double>() == doctest::Approx(50.0));
    CHECK(s["payback_year"] == 2018);
    CHECK(s["shares"]["solar_pct"].get<double>() == doctest::Approx(80.0));
    CHECK(s["shares"]["ccs_pct"].get<double>() == doctest::Approx(20.0));
    CHECK(s["any_trading"] == false);
    CHECK(s["cumulative_net_jpy"].get<double>() == doctest::Approx(6.0));

    CHECK(verify_bundle(dir).empty());
}

TEST_CASE("bundles are byte-identical across writes") {
    const ModelInstance m = fixtures::two_region(3);
    const ScenarioResult r = run_scenario(m, ScenarioConfig::standard(2));
    REQUIRE(r.optimal());
    const fs::path a = scratch("twice_a"), b = scratch("twice_b");
    write_results(r, m, a);
    write_results(run_scenario(m, ScenarioConfig::standard(2)), m, b);
    CHECK(tree(a) == tree(b));
    CHECK(tree(a).size() == 11);
    CHECK(verify_bundle(a).empty());
}

TEST_CASE("summary numbers re-parse to the computed values") {
    const ModelInstance m = fixtures::two_region(3);
    const ScenarioResult r = run_scenario(m, ScenarioConfig::standard(1));
    REQUIRE(r.optimal());
    const fs::path dir = scratch("reparse");
    write_results(r, m, dir);
    const auto s = summary(dir);
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
    CHECK(near(s["objective_jpy"].get<double>(), r.objective_value));
    CHECK(near(s["reduction_pct"].get<double>(), r.reduction_pct));
    CHECK(near(s["final_emissions_t"].get<double>(), r.national_emissions(m.num_years())));
}

TEST_CASE("forced trade appears in trades.csv") {
    const ModelInstance m = fixtures::forced_trade();
    ScenarioConfig c = ScenarioConfig::standard(1);
    c.nonneg_emissions = true;
    const ScenarioResult r = run_scenario(m, c);
    REQUIRE(r.optimal());
    const fs::path dir = scratch("trade");
    write_results(r, m, dir);
    CHECK(lines(dir / "trades.csv") == std::vector<std::string>{"year,from,to,tonnes", "2018,B,S,50"});
    CHECK(summary(dir)["any_trading"] == true);
    CHECK(summary(dir)["traded_t"].get<double>() == doctest::Approx(50.0));
    CHECK(verify_bundle(dir).empty());
}

TEST_CASE("non-optimal results write the summary only") {
    RawInstance raw = fixtures::unit1_raw();
    raw.cap = CapSchedule{10.0};
    const ModelInstance m = fixtures::validated(raw);
    const ScenarioResult r = run_scenario(m, ScenarioConfig::standard(1));
    REQUIRE(r.status == SolveStatus::Infeasible);
    const fs::path dir = scratch("infeasible");
    write_results(r, m, dir);
    CHECK(tree(dir).size() == 1);
    const auto s = summary(dir);
    CHECK(s["status"] == "infeasible");
    CHECK(s["objective_jpy"].is_null());
    CHECK(s["reduction_pct"].is_null());
    CHECK(s["diagnostics"].size() >= 1);
    CHECK(verify_bundle(dir).empty());
}

TEST_CASE("verify_bundle catches edits") {
    const ModelInstance m = fixtures::unit1();
    const fs::path dir = scratch("tamper");
    write_results(run_scenario(m, ScenarioConfig::standard(1)), m, dir);
    {
        std::ofstream(dir / "emissions.csv") << "region,year,tonnes\nR,2017,100\nR,2018,60\n";
    }
    const auto problems = verify_bundle(dir);
    CHECK_FALSE(problems.empty());
    CHECK(verify_bundle(scratch("nothing")) == std::vector<std::string>{"missing summary.json"});
}

TEST_CASE("sweep output") {
    const ModelInstance m = fixtures::unit1();
    const SweepResult sw = sweep(m, ScenarioConfig::standard(1), SweepParameter::CarbonPrice, {0.0, 1.0, 2.0});
    const fs::path dir = scratch("sweep");
    write_sweep(sw, m, dir);
    const auto rows = lines(dir / "sweep.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "param_value,reduction_pct,objective,any_trading,status");
    CHECK(rows[2].rfind("1,50,-6,false,optimal", 0) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "sweep.json"));
    CHECK(j["parameter"] == "carbon-price");
    CHECK(j["grid"].size() == 3);
    CHECK(j["succeeded"] == 3);
    CHECK(fs::exists(dir / "points" / "00" / "summary.json"));
    CHECK(fs::exists(dir / "points" / "02" / "summary.json"));
}
