#include "ccsplan/domain.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ccsplan {

std::string_view to_string(TechKind k) {
    switch (k) {
        case TechKind::Solar: return "solar";
        case TechKind::Wind: return "wind";
    }
    return "?";
}

std::optional<TechKind> parse_tech(std::string_view s) {
    if (s == "solar") return TechKind::Solar;
    if (s == "wind") return TechKind::Wind;
    return std::nullopt;
}

TimeSeries TimeSeries::constant(std::size_t n, double v, std::string unit) {
    return TimeSeries{std::vector<double>(n, v), std::move(unit)};
}

std::optional<std::size_t> ModelInstance::find_region(std::string_view id) const {
    for (std::size_t i = 0; i < regions.size(); ++i)
        if (regions[i].id == id) return i;
    return std::nullopt;
}

double ModelInstance::national_baseline_t() const {
    double total = 0.0;
    for (const auto& r : regions) total += r.baseline_emissions_t;
    return total;
}

namespace {

std::string fmt_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

class Validator {
public:
    explicit Validator(int horizon) : horizon_(horizon) {}

    void error(std::string path, std::string message) {
        errors_.push_back({std::move(path), std::move(message)});
    }

    // Length, finiteness and sign checks for a required series.
    std::optional<TimeSeries> series(const std::optional<std::vector<double>>& raw,
                                     const std::string& path, const char* unit) {
        if (!raw) {
            error(path, "missing series");
            return std::nullopt;
        }
        bool good = check_length(raw->size(), path);
        for (std::size_t t = 0; t < raw->size(); ++t) good &= check_value((*raw)[t], path, t);
        if (!good) return std::nullopt;
        return TimeSeries{*raw, unit};
    }

    std::optional<double> scalar(const std::optional<double>& raw, const std::string& path) {
        if (!raw) {
            error(path, "missing value");
            return std::nullopt;
        }
        if (!std::isfinite(*raw)) {
            error(path, "non-finite value");
            return std::nullopt;
        }
        if (*raw < 0.0) {
            error(path, "negative value " + fmt_value(*raw));
            return std::nullopt;
        }
        return raw;
    }

    bool check_length(std::size_t n, const std::string& path) {
        if (horizon_ > 0 && n != static_cast<std::size_t>(horizon_)) {
            error(path, "series length " + std::to_string(n) + " ≠ horizon " +
                            std::to_string(horizon_));
            return false;
        }
        return true;
    }

    bool check_value(double v, const std::string& path, std::size_t t) {
        if (!std::isfinite(v)) {
            error(path, "non-finite value at index " + std::to_string(t));
            return false;
        }
        if (v < 0.0) {
            error(path, "negative value " + fmt_value(v) + " at index " + std::to_string(t));
            return false;
        }
        return true;
    }

    std::vector<ValidationError> take() { return std::move(errors_); }
    bool clean() const { return errors_.empty(); }

private:
    int horizon_;
    std::vector<ValidationError> errors_;
};

}  // namespace

ValidationResult validate_instance(const RawInstance& raw, const ValidateOptions& opts) {
    ModelInstance m;
    m.name = raw.name;

    int horizon = 0;
    std::vector<ValidationError> early;
    if (!raw.start_year) early.push_back({"horizon.start_year", "missing value"});
    if (!raw.num_years) {
        early.push_back({"horizon.num_years", "missing value"});
    } else if (*raw.num_years < 1) {
        early.push_back({"horizon.num_years", "must be >= 1, got " + std::to_string(*raw.num_years)});
    } else {
        horizon = *raw.num_years;
    }
    Validator v(horizon);
    for (auto& e : early) v.error(e.path, e.message);
    if (raw.start_year) m.horizon.start_year = *raw.start_year;
    if (horizon > 0) m.horizon.num_years = horizon;

    auto cp = v.series(raw.carbon_price, "globals.carbon_price", "JPY/t");
    auto ccsp = v.series(raw.ccs_price, "globals.ccs_price", "JPY/t");
    auto gt = v.series(raw.transport_cost, "globals.transport_cost", "JPY/(t*km)");
    if (cp) m.globals.carbon_price = *cp;
    if (ccsp) m.globals.ccs_price = *ccsp;
    if (gt) m.globals.transport_cost = *gt;

    if (!raw.cap) {
        v.error("globals.cap", "missing series");
    } else if (v.check_length(raw.cap->size(), "globals.cap")) {
        for (std::size_t t = 0; t < raw.cap->size(); ++t)
            if ((*raw.cap)[t]) v.check_value(*(*raw.cap)[t], "globals.cap", t);
        m.globals.cap = *raw.cap;
    }

    for (TechKind k : kAllTechs) {
        const std::string path = "globals.feed_in_tariff." + std::string(to_string(k));
        auto it = raw.feed_in_tariff.find(k);
        auto s = v.series(it == raw.feed_in_tariff.end() ? std::nullopt
                                                           : std::optional(it->second),
                          path, "JPY/GWh");
        if (s) m.globals.feed_in_tariff[index_of(k)] = *s;
    }

    if (opts.resilience) {
        bool complete = true;
        double sum = 0.0;
        for (TechKind k : kAllTechs) {
            const std::string path = "globals.alpha." + std::string(to_string(k));
            auto it = raw.alpha.find(k);
            if (it == raw.alpha.end()) {
                v.error(path, "missing value (required by the resilience constraint)");
                complete = false;
                continue;
            }
            if (!(it->second > 0.0) || !std::isfinite(it->second)) {
                v.error(path, "must be > 0, got " + fmt_value(it->second));
                complete = false;
            }
            sum += it->second;
            m.globals.alpha[index_of(k)] = it->second;
        }
        if (complete && std::abs(sum - 1.0) > 1e-9) {
            std::ostringstream os;
            os.precision(10);
            os << "alpha sums to " << sum;
            v.error("globals.alpha", os.str());
        }
    } else {
        for (const auto& [k, a] : raw.alpha) {
            if (!std::isfinite(a) || a < 0.0 || a > 1.0)
                v.error("globals.alpha." + std::string(to_string(k)),
                        "must lie in [0, 1], got " + fmt_value(a));
            m.globals.alpha[index_of(k)] = a;
        }
    }

    if (raw.regions.empty()) v.error("regions", "at least one region is required");

    std::set<std::string> seen;
    for (std::size_t i = 0; i < raw.regions.size(); ++i) {
        const RawRegion& rr = raw.regions[i];
        const std::string base = "regions[" + std::to_string(i) + "]";
        Region r;
        r.id = rr.id;
        if (rr.id.empty()) v.error(base + ".id", "empty region id");
        if (!seen.insert(rr.id).second) v.error(base + ".id", "duplicate region id '" + rr.id + "'");

        const std::string rbase = "regions." + (rr.id.empty() ? base : rr.id);
        if (auto c0 = v.scalar(rr.baseline_emissions_t, rbase + ".C0")) r.baseline_emissions_t = *c0;
        if (auto cap = v.scalar(rr.ccs_capacity_t, rbase + ".ccs_capacity")) r.ccs_capacity_t = *cap;

        if (rr.lat_deg.has_value() != rr.lon_deg.has_value()) {
            v.error(rbase + ".location", "latitude and longitude must be given together");
        } else if (rr.lat_deg) {
            if (!std::isfinite(*rr.lat_deg) || std::abs(*rr.lat_deg) > 90.0)
                v.error(rbase + ".lat", "latitude out of range: " + fmt_value(*rr.lat_deg));
            else if (!std::isfinite(*rr.lon_deg) || std::abs(*rr.lon_deg) > 180.0)
                v.error(rbase + ".lon", "longitude out of range: " + fmt_value(*rr.lon_deg));
            else
                r.location = GeoPoint{*rr.lat_deg, *rr.lon_deg};
        }

        for (TechKind k : kAllTechs) {
            const std::string tbase = rbase + ".tech." + std::string(to_string(k));
            auto it = rr.tech.find(k);
            if (it == rr.tech.end()) {
                v.error(tbase, "missing technology entry");
                continue;
            }
            RegionTech& rt = r.tech[index_of(k)];
            if (auto g = v.series(it->second.g, tbase + ".g", "t/GW")) rt.g = *g;
            if (auto rp = v.series(it->second.rp, tbase + ".rp", "JPY/GW")) rt.rp = *rp;
            if (auto h = v.scalar(it->second.h, tbase + ".h")) rt.h = *h;
            if (auto p = v.scalar(it->second.potential_gw, tbase + ".potential")) rt.potential_gw = *p;
        }
        m.regions.push_back(std::move(r));
    }

    for (std::size_t i = 0; i < m.regions.size(); ++i)
        (m.regions[i].has_storage() ? m.sellers : m.buyers).push_back(i);

    if (raw.distances) {
        const std::size_t n = m.regions.size();
        DistanceMatrix dm(n, std::vector<std::optional<double>>(n));
        for (std::size_t e = 0; e < raw.distances->size(); ++e) {
            const RawDistance& d = (*raw.distances)[e];
            const std::string path = "distances[" + std::to_string(e) + "]";
            auto from = m.find_region(d.from);
            auto to = m.find_region(d.to);
            if (!from) v.error(path + ".from", "unknown region '" + d.from + "'");
            if (!to) v.error(path + ".to", "unknown region '" + d.to + "'");
            if (!from || !to) continue;
            if (!std::isfinite(d.km) || d.km < 0.0) {
                v.error(path + ".km", "distance must be finite and >= 0, got " + fmt_value(d.km));
                continue;
            }
            if (*from == *to && d.km != 0.0) {
                v.error(path + ".km", "self-distance of '" + d.from + "' must be 0");
                continue;
            }
            if (dm[*from][*to]) {
                v.error(path, "duplicate distance " + d.from + " -> " + d.to);
                continue;
            }
            dm[*from][*to] = d.km;
        }
        m.distances = std::move(dm);
    }

    // Only buyer -> seller distances enter the model.
    for (std::size_t j : m.buyers) {
        for (std::size_t i : m.sellers) {
            bool explicit_entry = m.distances && (*m.distances)[j][i].has_value();
            bool located = m.regions[j].location && m.regions[i].location;
            if (!explicit_entry && !located)
                v.error("distances", "missing both distances and locations for " +
                                         m.regions[j].id + " -> " + m.regions[i].id);
        }
    }

    ValidationResult out;
    if (v.clean()) out.instance = std::move(m);
    out.errors = v.take();
    return out;
}

RawInstance to_raw(const ModelInstance& m) {
    RawInstance raw;
    raw.name = m.name;
    raw.start_year = m.horizon.start_year;
    raw.num_years = m.horizon.num_years;
    raw.carbon_price = m.globals.carbon_price.values;
    raw.ccs_price = m.globals.ccs_price.values;
    raw.transport_cost = m.globals.transport_cost.values;
    raw.cap = m.globals.cap;
    for (TechKind k : kAllTechs) {
        raw.feed_in_tariff[k] = m.globals.fit(k).values;
        raw.alpha[k] = m.globals.alpha[index_of(k)];
    }
    for (const Region& r : m.regions) {
        RawRegion rr;
        rr.id = r.id;
        rr.baseline_emissions_t = r.baseline_emissions_t;
        rr.ccs_capacity_t = r.ccs_capacity_t;
        if (r.location) {
            rr.lat_deg = r.location->lat_deg;
            rr.lon_deg = r.location->lon_deg;
        }
        for (TechKind k : kAllTechs) {
            const RegionTech& rt = r.of(k);
            rr.tech[k] = RawRegionTech{rt.g.values, rt.rp.values, rt.h, rt.potential_gw};
        }
        raw.regions.push_back(std::move(rr));
    }
    if (m.distances) {
        std::vector<RawDistance> list;
        for (std::size_t a = 0; a < m.regions.size(); ++a)
            for (std::size_t b = 0; b < m.regions.size(); ++b)
                if ((*m.distances)[a][b])
                    list.push_back({m.regions[a].id, m.regions[b].id, *(*m.distances)[a][b]});
        raw.distances = std::move(list);
    }
    return raw;
}

double great_circle_km(const GeoPoint& a, const GeoPoint& b) {
    constexpr double deg = std::numbers::pi / 180.0;
    const double phi1 = a.lat_deg * deg;
    const double phi2 = b.lat_deg * deg;
    const double dphi = phi2 - phi1;
    const double dlambda = (b.lon_deg - a.lon_deg) * deg;
    const double s = std::sin(dphi / 2) * std::sin(dphi / 2) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(s)));
}

double distance(std::size_t from, std::size_t to, const ModelInstance& instance) {
    if (from >= instance.regions.size() || to >= instance.regions.size())
        throw std::invalid_argument("distance: region index out of range");
    if (instance.distances) {
        if (const auto& d = (*instance.distances)[from][to]) return *d;
    }
    if (from == to) return 0.0;
    const auto& a = instance.regions[from].location;
    const auto& b = instance.regions[to].location;
    if (!a || !b)
        throw std::invalid_argument("distance: no explicit entry and no locations for " +
                                    instance.regions[from].id + " -> " + instance.regions[to].id);
    return great_circle_km(*a, *b);
}

}  // namespace ccsplan
