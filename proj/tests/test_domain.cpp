#include "doctest.h"

#include "fixtures.hpp"

#include <algorithm>

using namespace ccsplan;

namespace {

bool has_error(const ValidationResult& v, const std::string& path, const std::string& message) {
    return std::any_of(v.errors.begin(), v.errors.end(), [&](const ValidationError& e) {
        return e.path == path && e.message.find(message) != std::string::npos;
    });
}

RawInstance two_region_raw(int T = 33) {
    RawInstance raw = fixtures::raw_globals(T, 10000.0, 10000.0, 8.1739);
    raw.regions.push_back(fixtures::raw_region("A", 100.0, 50.0, T, 35.0, 139.0));
    raw.regions.push_back(fixtures::raw_region("B", 80.0, 0.0, T, 34.0, 135.0));
    return raw;
}

}  // namespace

TEST_CASE("tech kinds") {
    CHECK(kAllTechs.size() == 2);
    CHECK(index_of(TechKind::Solar) == 0);
    CHECK(index_of(TechKind::Wind) == 1);
    CHECK(parse_tech("wind") == TechKind::Wind);
    CHECK_FALSE(parse_tech("hydro"));
}

TEST_CASE("well-formed instance partitions regions") {
    const auto v = validate_instance(two_region_raw());
    REQUIRE(v.ok());
    CHECK(v.instance->sellers == std::vector<std::size_t>{0});
    CHECK(v.instance->buyers == std::vector<std::size_t>{1});
    CHECK(v.instance->horizon.end_year() == 2050);
}

TEST_CASE("series length error") {
    RawInstance raw = two_region_raw();
    raw.carbon_price->pop_back();
    const auto v = validate_instance(raw);
    CHECK_FALSE(v.ok());
    CHECK(has_error(v, "globals.carbon_price", "series length 32 ≠ horizon 33"));
}

TEST_CASE("alpha must sum to one when resilience is requested") {
    RawInstance raw = two_region_raw();
    raw.alpha[TechKind::Wind] = 0.68;
    const auto v = validate_instance(raw);
    CHECK(has_error(v, "globals.alpha", "alpha sums to 0.99"));
    ValidateOptions off;
    off.resilience = false;
    CHECK(validate_instance(raw, off).ok());
}

TEST_CASE("every rule is reported, never a partial instance") {
    RawInstance raw = two_region_raw();
    raw.ccs_price.reset();
    raw.regions[1].id = "A";
    raw.regions[0].baseline_emissions_t = -1.0;
    raw.regions[0].tech[TechKind::Solar].g->at(3) = -2.0;
    const auto v = validate_instance(raw);
    CHECK_FALSE(v.ok());
    CHECK_FALSE(v.instance.has_value());
    CHECK(has_error(v, "globals.ccs_price", "missing series"));
    CHECK(has_error(v, "regions[1].id", "duplicate region id"));
    CHECK(has_error(v, "regions.A.C0", "negative value"));
    CHECK(has_error(v, "regions.A.tech.solar.g", "negative value -2 at index 3"));
}

TEST_CASE("missing both distances and locations") {
    RawInstance raw = two_region_raw();
    raw.regions[1].lat_deg.reset();
    raw.regions[1].lon_deg.reset();
    const auto v = validate_instance(raw);
    CHECK(has_error(v, "distances", "missing both distances and locations for B -> A"));
    raw.distances = std::vector<RawDistance>{{"B", "A", 250.0}};
    CHECK(validate_instance(raw).ok());
}

TEST_CASE("great-circle distance") {
    CHECK(great_circle_km({0.0, 0.0}, {0.0, 90.0}) == doctest::Approx(10007.54).epsilon(1e-6));
    CHECK(std::abs(great_circle_km({0.0, 0.0}, {0.0, 90.0}) - 10007.54) <= 0.01);
    const GeoPoint a{35.68, 139.69}, b{43.06, 141.35};
    CHECK(great_circle_km(a, b) == great_circle_km(b, a));
}

TEST_CASE("distance lookup precedence") {
    RawInstance raw = two_region_raw();
    ModelInstance m = fixtures::validated(raw);
    CHECK(distance(0, 0, m) == 0.0);
    CHECK(distance(1, 0, m) == doctest::Approx(great_circle_km({34.0, 135.0}, {35.0, 139.0})));
    CHECK(distance(1, 0, m) == distance(0, 1, m));

    raw.distances = std::vector<RawDistance>{{"B", "A", 250.0}};
    m = fixtures::validated(raw);
    CHECK(distance(1, 0, m) == 250.0);
    // Explicit matrices are taken verbatim, not symmetrized.
    CHECK(distance(0, 1, m) == doctest::Approx(great_circle_km({35.0, 139.0}, {34.0, 135.0})));

    raw.regions[0].lat_deg.reset();
    raw.regions[0].lon_deg.reset();
    m = fixtures::validated(raw);
    CHECK_THROWS_AS(distance(0, 1, m), std::invalid_argument);
}

TEST_CASE("validation is idempotent") {
    const ModelInstance m = fixtures::two_region();
    const ModelInstance again = fixtures::validated(to_raw(m));
    REQUIRE(again.num_regions() == m.num_regions());
    for (std::size_t i = 0; i < m.num_regions(); ++i) {
        CHECK(again.regions[i].baseline_emissions_t == m.regions[i].baseline_emissions_t);
        for (TechKind k : kAllTechs) {
            CHECK(again.regions[i].of(k).g.values == m.regions[i].of(k).g.values);
            CHECK(again.regions[i].of(k).rp.values == m.regions[i].of(k).rp.values);
        }
    }
    CHECK(again.globals.cap == m.globals.cap);
    CHECK(again.globals.carbon_price.values == m.globals.carbon_price.values);
}
