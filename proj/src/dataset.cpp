#include "ccsplan/dataset.hpp"

#include "csv.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ccsplan {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& p : items) {
        if (!s.empty()) s += "; ";
        s += p;
    }
    return s;
}

}  // namespace

DatasetError::DatasetError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

std::optional<double> unit_factor(std::string_view quantity, std::string_view tag) {
    static const std::map<std::string_view, std::map<std::string_view, double>> table{
        {"emissions", {{"t", 1.0}, {"kt", 1e3}, {"Mt", 1e6}}},
        {"price", {{"JPY/t", 1.0}, {"JPY/kt", 1e-3}}},
        {"transport_cost", {{"JPY/(t*km)", 1.0}, {"JPY/(t*m)", 1e3}}},
        {"feed_in_tariff", {{"JPY/GWh", 1.0}, {"JPY/MWh", 1e3}, {"JPY/kWh", 1e6}}},
        {"investment_cost", {{"JPY/GW", 1.0}, {"JPY/MW", 1e3}, {"JPY/kW", 1e6}}},
        {"conversion_ratio", {{"t/GW", 1.0}, {"kt/GW", 1e3}, {"t/MW", 1e3}}},
    };
    auto q = table.find(quantity);
    if (q == table.end()) return std::nullopt;
    auto f = q->second.find(tag);
    if (f == q->second.end()) return std::nullopt;
    return f->second;
}

namespace {

constexpr std::array<std::string_view, 6> kUnitKeys{"emissions",       "price",           "transport_cost",
                                                    "feed_in_tariff", "investment_cost", "conversion_ratio"};

class Loader {
public:
    explicit Loader(fs::path dir) : dir_(std::move(dir)) {}

    RawInstance run() {
        for (const char* f : {"globals.json", "regions.csv", "tech.csv"})
            if (!fs::is_regular_file(dir_ / f)) problem("missing required file " + std::string(f));
        if (!problems_.empty()) throw DatasetError(problems_);

        load_globals();
        load_regions();
        load_tech();
        if (fs::is_regular_file(dir_ / "distances.csv")) load_distances();
        if (!problems_.empty()) throw DatasetError(problems_);
        return raw_;
    }

private:
    void problem(std::string msg) { problems_.push_back(std::move(msg)); }

    double factor(std::string_view quantity) const {
        auto it = factors_.find(std::string(quantity));
        return it == factors_.end() ? 1.0 : it->second;
    }

    std::optional<std::vector<double>> json_series(const json& j, const std::string& key, double scale) {
        const std::string where = "globals.json: " + key;
        if (j.is_number()) {
            if (!horizon_) return std::nullopt;
            return std::vector<double>(static_cast<std::size_t>(*horizon_), j.get<double>() * scale);
        }
        if (!j.is_array()) {
            problem(where + ": expected a number or an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        for (std::size_t t = 0; t < j.size(); ++t) {
            if (!j[t].is_number()) {
                problem(where + "[" + std::to_string(t) + "]: expected a number");
                return std::nullopt;
            }
            out.push_back(j[t].get<double>() * scale);
        }
        return out;
    }

    void load_globals() {
        std::ifstream in(dir_ / "globals.json");
        json g;
        try {
            g = json::parse(in);
        } catch (const json::parse_error& e) {
            problem(std::string("globals.json: ") + e.what());
            return;
        }
        if (!g.is_object()) {
            problem("globals.json: top level must be an object");
            return;
        }
        raw_.name = g.value("name", dir_.filename().string());

        if (auto h = g.find("horizon"); h != g.end() && h->is_object()) {
            if (h->contains("start_year") && (*h)["start_year"].is_number_integer())
                raw_.start_year = (*h)["start_year"].get<int>();
            else
                problem("globals.json: horizon.start_year must be an integer");
            if (h->contains("num_years") && (*h)["num_years"].is_number_integer())
                raw_.num_years = (*h)["num_years"].get<int>();
            else
                problem("globals.json: horizon.num_years must be an integer");
            if (raw_.num_years && *raw_.num_years >= 1) horizon_ = *raw_.num_years;
        } else {
            problem("globals.json: missing horizon block");
        }

        auto units = g.find("units");
        if (units == g.end() || !units->is_object()) {
            problem("globals.json: missing units block");
        } else {
            for (std::string_view key : kUnitKeys) {
                const std::string k(key);
                if (!units->contains(k) || !(*units)[k].is_string()) {
                    problem("globals.json: units." + k + " missing");
                    continue;
                }
                const std::string tag = (*units)[k].get<std::string>();
                if (auto f = unit_factor(key, tag))
                    factors_[k] = *f;
                else
                    problem("globals.json: unknown unit tag '" + tag + "' for units." + k);
            }
        }

        auto series = [&](const char* key, const char* quantity, std::optional<std::vector<double>>& dst) {
            if (!g.contains(key)) return;  // reported by validation as a missing series
            dst = json_series(g[key], key, factor(quantity));
        };
        series("carbon_price", "price", raw_.carbon_price);
        series("ccs_price", "price", raw_.ccs_price);
        series("transport_cost", "transport_cost", raw_.transport_cost);

        if (g.contains("cap")) {
            const json& c = g["cap"];
            const double f = factor("emissions");
            if (c.is_null() || c.is_number()) {
                if (horizon_)
                    raw_.cap = CapSchedule(static_cast<std::size_t>(*horizon_),
                                           c.is_null() ? std::nullopt : std::optional(c.get<double>() * f));
            } else if (c.is_array()) {
                CapSchedule cap;
                for (std::size_t t = 0; t < c.size(); ++t) {
                    if (c[t].is_null()) {
                        cap.emplace_back(std::nullopt);
                    } else if (c[t].is_number()) {
                        cap.emplace_back(c[t].get<double>() * f);
                    } else {
                        problem("globals.json: cap[" + std::to_string(t) + "]: expected a number or null");
                        break;
                    }
                }
                raw_.cap = std::move(cap);
            } else {
                problem("globals.json: cap: expected null, a number or an array");
            }
        }

        if (auto fit = g.find("feed_in_tariff"); fit != g.end()) {
            if (!fit->is_object()) {
                problem("globals.json: feed_in_tariff must be an object keyed by technology");
            } else {
                for (auto& [name, value] : fit->items()) {
                    auto k = parse_tech(name);
                    if (!k) {
                        problem("globals.json: feed_in_tariff: unknown technology '" + name + "'");
                        continue;
                    }
                    if (auto s = json_series(value, "feed_in_tariff." + name, factor("feed_in_tariff")))
                        raw_.feed_in_tariff[*k] = *s;
                }
            }
        }

        if (auto alpha = g.find("alpha"); alpha != g.end()) {
            if (!alpha->is_object()) {
                problem("globals.json: alpha must be an object keyed by technology");
            } else {
                for (auto& [name, value] : alpha->items()) {
                    auto k = parse_tech(name);
                    if (!k || !value.is_number()) {
                        problem("globals.json: alpha." + name + ": expected a technology with a number");
                        continue;
                    }
                    raw_.alpha[*k] = value.get<double>();
                }
            }
        }
    }

    // Reads `field` as a double; records a line-numbered problem when malformed.
    std::optional<double> number(const csv::Table& t, const csv::Record& r, std::size_t col, bool optional = false) {
        const std::string& s = r.fields[col];
        if (s.empty() && optional) return std::nullopt;
        auto v = csv::parse_double(s);
        if (!v)
            problem(t.file + " line " + std::to_string(r.line) + ": column " + t.header[col] + ": not a number '" +
                    s + "'");
        return v;
    }

    std::optional<std::map<std::string, std::size_t>> columns(const csv::Table& t,
                                                              std::initializer_list<const char*> names) {
        std::map<std::string, std::size_t> out;
        bool ok = true;
        for (const char* n : names) {
            auto c = t.column(n);
            if (!c) {
                problem(t.file + ": missing column " + n);
                ok = false;
            } else {
                out[n] = *c;
            }
        }
        if (!ok) return std::nullopt;
        return out;
    }

    void load_regions() {
        auto t = csv::read(dir_ / "regions.csv", problems_);
        if (!t) return;
        auto c = columns(*t, {"id", "C0_tonnes", "lat", "lon", "ccs_capacity_tonnes"});
        if (!c) return;
        for (const auto& r : t->records) {
            RawRegion rr;
            rr.id = r.fields[c->at("id")];
            rr.baseline_emissions_t = number(*t, r, c->at("C0_tonnes"));
            rr.lat_deg = number(*t, r, c->at("lat"), true);
            rr.lon_deg = number(*t, r, c->at("lon"), true);
            rr.ccs_capacity_t = number(*t, r, c->at("ccs_capacity_tonnes"));
            region_pos_[rr.id] = raw_.regions.size();
            raw_.regions.push_back(std::move(rr));
        }
    }

    // Reads series/<stem>.csv (year,value) into a dense horizon-length vector.
    std::optional<std::vector<double>> series_file(const std::string& stem, double scale) {
        const fs::path p = dir_ / "series" / (stem + ".csv");
        if (!fs::is_regular_file(p)) {
            problem("series/" + stem + ".csv: missing file");
            return std::nullopt;
        }
        auto t = csv::read(p, problems_);
        if (!t) return std::nullopt;
        auto c = columns(*t, {"year", "value"});
        if (!c || !raw_.start_year || !horizon_) return std::nullopt;
        const int first = *raw_.start_year;
        const int last = first + *horizon_ - 1;
        std::vector<std::optional<double>> dense(static_cast<std::size_t>(*horizon_));
        bool ok = true;
        for (const auto& r : t->records) {
            auto year = csv::parse_int(r.fields[c->at("year")]);
            if (!year) {
                problem(t->file + " line " + std::to_string(r.line) + ": bad year '" + r.fields[c->at("year")] + "'");
                ok = false;
                continue;
            }
            if (*year < first || *year > last) {
                problem("year " + std::to_string(*year) + " outside horizon in series " + stem);
                ok = false;
                continue;
            }
            auto& slot = dense[static_cast<std::size_t>(*year - first)];
            if (slot) {
                problem("year " + std::to_string(*year) + " repeated in series " + stem);
                ok = false;
                continue;
            }
            auto v = number(*t, r, c->at("value"));
            if (!v) {
                ok = false;
                continue;
            }
            slot = *v * scale;
        }
        std::vector<double> out;
        for (std::size_t k = 0; k < dense.size(); ++k) {
            if (!dense[k]) {
                problem("year " + std::to_string(first + static_cast<int>(k)) + " missing in series " + stem);
                ok = false;
                continue;
            }
            out.push_back(*dense[k]);
        }
        if (!ok) return std::nullopt;
        return out;
    }

    void load_tech() {
        auto t = csv::read(dir_ / "tech.csv", problems_);
        if (!t) return;
        auto c = columns(*t, {"region_id", "tech", "potential_gw", "h_gwh_per_gw", "rp_series", "g_series"});
        if (!c) return;
        for (const auto& r : t->records) {
            const std::string where = t->file + " line " + std::to_string(r.line);
            const std::string& id = r.fields[c->at("region_id")];
            auto pos = region_pos_.find(id);
            if (pos == region_pos_.end()) {
                problem(where + ": region '" + id + "' not in regions.csv");
                continue;
            }
            auto k = parse_tech(r.fields[c->at("tech")]);
            if (!k) {
                problem(where + ": unknown technology '" + r.fields[c->at("tech")] + "'");
                continue;
            }
            RawRegion& rr = raw_.regions[pos->second];
            if (rr.tech.count(*k)) {
                problem(where + ": duplicate entry for " + id + "/" + std::string(to_string(*k)));
                continue;
            }
            RawRegionTech rt;
            rt.potential_gw = number(*t, r, c->at("potential_gw"));
            rt.h = number(*t, r, c->at("h_gwh_per_gw"));
            rt.rp = series_file(r.fields[c->at("rp_series")], factor("investment_cost"));
            rt.g = series_file(r.fields[c->at("g_series")], factor("conversion_ratio"));
            rr.tech[*k] = std::move(rt);
        }
    }

    void load_distances() {
        auto t = csv::read(dir_ / "distances.csv", problems_);
        if (!t) return;
        auto c = columns(*t, {"from_id", "to_id", "km"});
        if (!c) return;
        std::vector<RawDistance> list;
        for (const auto& r : t->records) {
            auto km = number(*t, r, c->at("km"));
            if (!km) continue;
            list.push_back({r.fields[c->at("from_id")], r.fields[c->at("to_id")], *km});
        }
        raw_.distances = std::move(list);
    }

    fs::path dir_;
    RawInstance raw_;
    std::optional<int> horizon_;
    std::map<std::string, double> factors_;
    std::map<std::string, std::size_t> region_pos_;
    std::vector<std::string> problems_;
};

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

void write_series(const fs::path& p, int start_year, const TimeSeries& s) {
    std::string text = "year,value\n";
    for (std::size_t t = 0; t < s.size(); ++t) text += std::to_string(start_year + static_cast<int>(t)) + "," + g17(s[t]) + "\n";
    write_text(p, text);
}

}  // namespace

RawInstance load_dataset(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DatasetError({"not a directory: " + dir.string()});
    return Loader(dir).run();
}

ModelInstance load_instance(const fs::path& dir, const ValidateOptions& opts) {
    ValidationResult v = validate_instance(load_dataset(dir), opts);
    if (v.ok()) return std::move(*v.instance);
    std::vector<std::string> problems;
    for (const auto& e : v.errors) problems.push_back(e.path + ": " + e.message);
    throw DatasetError(std::move(problems));
}

void write_dataset(const ModelInstance& m, const fs::path& dir) {
    fs::create_directories(dir / "series");

    json g = json::object();
    g["name"] = m.name;
    g["horizon"] = {{"start_year", m.horizon.start_year}, {"num_years", m.horizon.num_years}};
    g["units"] = {{"emissions", "t"},
                  {"price", "JPY/t"},
                  {"transport_cost", "JPY/(t*km)"},
                  {"feed_in_tariff", "JPY/GWh"},
                  {"investment_cost", "JPY/GW"},
                  {"conversion_ratio", "t/GW"}};
    g["carbon_price"] = m.globals.carbon_price.values;
    g["ccs_price"] = m.globals.ccs_price.values;
    g["transport_cost"] = m.globals.transport_cost.values;
    json cap = json::array();
    for (const auto& c : m.globals.cap) cap.push_back(c ? json(*c) : json(nullptr));
    g["cap"] = cap;
    for (TechKind k : kAllTechs) {
        g["feed_in_tariff"][std::string(to_string(k))] = m.globals.fit(k).values;
        g["alpha"][std::string(to_string(k))] = m.globals.alpha[index_of(k)];
    }
    write_text(dir / "globals.json", g.dump(2) + "\n");

    std::string regions = "id,C0_tonnes,lat,lon,ccs_capacity_tonnes\n";
    std::string tech = "region_id,tech,potential_gw,h_gwh_per_gw,rp_series,g_series\n";
    for (const Region& r : m.regions) {
        regions += r.id + "," + g17(r.baseline_emissions_t) + "," + (r.location ? g17(r.location->lat_deg) : "") +
                   "," + (r.location ? g17(r.location->lon_deg) : "") + "," + g17(r.ccs_capacity_t) + "\n";
        for (TechKind k : kAllTechs) {
            const RegionTech& rt = r.of(k);
            const std::string suffix = std::string(to_string(k)) + "_" + r.id;
            tech += r.id + "," + std::string(to_string(k)) + "," + g17(rt.potential_gw) + "," + g17(rt.h) + ",rp_" +
                    suffix + ",g_" + suffix + "\n";
            write_series(dir / "series" / ("rp_" + suffix + ".csv"), m.horizon.start_year, rt.rp);
            write_series(dir / "series" / ("g_" + suffix + ".csv"), m.horizon.start_year, rt.g);
        }
    }
    write_text(dir / "regions.csv", regions);
    write_text(dir / "tech.csv", tech);

    if (m.distances) {
        std::string d = "from_id,to_id,km\n";
        for (std::size_t a = 0; a < m.regions.size(); ++a)
            for (std::size_t b = 0; b < m.regions.size(); ++b)
                if ((*m.distances)[a][b]) d += m.regions[a].id + "," + m.regions[b].id + "," + g17(*(*m.distances)[a][b]) + "\n";
        write_text(dir / "distances.csv", d);
    }
}

}  // namespace ccsplan
