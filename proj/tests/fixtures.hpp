#pragma once

#include "ccsplan/domain.hpp"
#include "ccsplan/lp.hpp"

#include <random>
#include <stdexcept>

namespace fixtures {

using namespace ccsplan;

inline ModelInstance validated(const RawInstance& raw) {
    auto v = validate_instance(raw);
    if (!v.ok()) throw std::runtime_error("fixture failed validation: " + v.errors.front().path + ": " +
                                         v.errors.front().message);
    return *v.instance;
}

inline RawRegion raw_region(std::string id, double c0, double storage, int T, double lat = 0.0, double lon = 0.0) {
    RawRegion r;
    r.id = std::move(id);
    r.baseline_emissions_t = c0;
    r.ccs_capacity_t = storage;
    r.lat_deg = lat;
    r.lon_deg = lon;
    for (TechKind k : kAllTechs)
        r.tech[k] = RawRegionTech{std::vector<double>(T, 0.0), std::vector<double>(T, 0.0), 0.0, 0.0};
    return r;
}

inline RawInstance raw_globals(int T, double cp, double ccsp, double gt) {
    RawInstance raw;
    raw.name = "fixture";
    raw.start_year = 2018;
    raw.num_years = T;
    raw.carbon_price = std::vector<double>(T, cp);
    raw.ccs_price = std::vector<double>(T, ccsp);
    raw.transport_cost = std::vector<double>(T, gt);
    raw.cap = CapSchedule(T);
    for (TechKind k : kAllTechs) raw.feed_in_tariff[k] = std::vector<double>(T, 0.0);
    raw.alpha = {{TechKind::Solar, 0.31}, {TechKind::Wind, 0.69}};
    return raw;
}

// One storage region, solar only (wind potential 0), one year:
// C0 = 100 t, g = 10 t/GW, P = 4 GW, rp = 8 JPY/GW, cp = 1 JPY/t,
// sp * h = 2 JPY/GW, ccsp = 1 JPY/t, storage 30 t, cap 50 t.
inline RawInstance unit1_raw() {
    RawInstance raw = raw_globals(1, 1.0, 1.0, 0.0);
    raw.cap = CapSchedule{50.0};
    raw.feed_in_tariff[TechKind::Solar] = {2.0};
    RawRegion r = raw_region("R", 100.0, 30.0, 1);
    r.tech[TechKind::Solar] = RawRegionTech{std::vector<double>{10.0}, std::vector<double>{8.0}, 1.0, 4.0};
    raw.regions.push_back(r);
    return raw;
}

inline ModelInstance unit1() { return validated(unit1_raw()); }

// A buyer with no RE potential next to an empty seller: meeting the cap
// forces the buyer to purchase storage. Emissions may not go negative, so
// the seller cannot absorb the cut on its own.
inline ModelInstance forced_trade() {
    RawInstance raw = raw_globals(1, 1.0, 1.0, 0.01);
    raw.cap = CapSchedule{50.0};
    raw.regions.push_back(raw_region("S", 0.0, 1000.0, 1, 35.0, 139.0));
    raw.regions.push_back(raw_region("B", 100.0, 0.0, 1, 35.0, 140.0));
    return validated(raw);
}

// Two regions, one seller and one buyer, both technologies. The cap binds in
// the final year only.
inline ModelInstance two_region(int T = 2) {
    RawInstance raw = raw_globals(T, 10000.0, 10000.0, 8.1739);
    raw.cap = CapSchedule(T);
    raw.cap->back() = 150.0;
    auto ramp = [T](double first, double step) {
        std::vector<double> v(T);
        for (int t = 0; t < T; ++t) v[t] = first - step * t;
        return v;
    };
    raw.feed_in_tariff[TechKind::Solar] = ramp(3.0, 1.0 / T);
    raw.feed_in_tariff[TechKind::Wind] = ramp(4.0, 1.0 / T);
    RawRegion s = raw_region("S", 120.0, 66.0, T, 37.7, 140.5);
    s.tech[TechKind::Solar] = RawRegionTech{std::vector<double>(T, 5.0), ramp(60000.0, 5000.0), 1000.0, 3.0};
    s.tech[TechKind::Wind] = RawRegionTech{std::vector<double>(T, 8.0), ramp(90000.0, 10000.0), 2000.0, 2.0};
    RawRegion b = raw_region("B", 80.0, 0.0, T, 35.7, 139.7);
    b.tech[TechKind::Solar] = RawRegionTech{std::vector<double>(T, 4.0), ramp(70000.0, 10000.0), 900.0, 5.0};
    b.tech[TechKind::Wind] = RawRegionTech{std::vector<double>(T, 9.0), ramp(95000.0, 10000.0), 2500.0, 1.0};
    raw.regions.push_back(s);
    raw.regions.push_back(b);
    return validated(raw);
}

// Small random LP with integer data. Roughly a quarter of the variables have
// no upper bound, so unbounded and infeasible instances both occur.
inline LinearProgram random_lp(std::mt19937_64& rng, std::size_t max_vars = 6, std::size_t max_rows = 6) {
    std::uniform_int_distribution<std::size_t> nv(1, max_vars), nr(0, max_rows);
    std::uniform_int_distribution<int> coef(-4, 4), rhs(-3, 10), ub(1, 6), sense(0, 5), cost(-6, 6), lo(0, 3);
    std::bernoulli_distribution dense(0.6), unbounded(0.25), fixed(0.05), shifted(0.15);
    LinearProgram lp;
    const std::size_t n = nv(rng);
    for (std::size_t j = 0; j < n; ++j) {
        double l = shifted(rng) ? lo(rng) : 0.0;
        double u = unbounded(rng) ? kInf : l + ub(rng);
        if (fixed(rng)) u = l;
        lp.add_variable("", l, u, cost(rng));
    }
    const std::size_t m = nr(rng);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < n; ++j)
            if (dense(rng)) {
                int c = coef(rng);
                if (c != 0) terms.push_back({j, static_cast<double>(c)});
            }
        const int s = sense(rng);
        const Sense sn = s < 3 ? Sense::LessEqual : (s < 5 ? Sense::GreaterEqual : Sense::Equal);
        lp.add_row("", std::move(terms), sn, rhs(rng));
    }
    return lp;
}

}  // namespace fixtures
