#pragma once

// Input-side domain types for the renewables + CCS planning model.
//
// Canonical units used everywhere after validation:
//   emissions / storage  tonnes CO2 (t)
//   capacity             GW
//   generation           GWh
//   money                JPY
//   distance             km
//   time                 years, 0-based index t = 0..T-1 (t = 0 is start_year)

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccsplan {

enum class TechKind { Solar = 0, Wind = 1 };

inline constexpr std::size_t kNumTechs = 2;
inline constexpr std::array<TechKind, kNumTechs> kAllTechs{TechKind::Solar, TechKind::Wind};

std::string_view to_string(TechKind k);
std::optional<TechKind> parse_tech(std::string_view s);
inline std::size_t index_of(TechKind k) { return static_cast<std::size_t>(k); }

struct Horizon {
    int start_year = 2018;
    int num_years = 33;

    int year_of(int t) const { return start_year + t; }
    int end_year() const { return start_year + num_years - 1; }
};

// One value per horizon year, already in canonical units.
struct TimeSeries {
    std::vector<double> values;
    std::string unit;

    double operator[](std::size_t t) const { return values[t]; }
    std::size_t size() const { return values.size(); }
    static TimeSeries constant(std::size_t n, double v, std::string unit = {});
};

// Yearly emission ceiling; std::nullopt marks an unbounded year.
using CapSchedule = std::vector<std::optional<double>>;

struct RegionTech {
    TimeSeries g;      // t CO2 offset per GW installed, per year
    TimeSeries rp;     // JPY per GW
    double h = 0.0;    // GWh per GW per year
    double potential_gw = 0.0;
};

struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

struct Region {
    std::string id;
    double baseline_emissions_t = 0.0;
    std::array<RegionTech, kNumTechs> tech;
    double ccs_capacity_t = 0.0;
    std::optional<GeoPoint> location;

    bool has_storage() const { return ccs_capacity_t > 0.0; }
    const RegionTech& of(TechKind k) const { return tech[index_of(k)]; }
};

struct GlobalParams {
    TimeSeries carbon_price;      // cp,   JPY/t
    TimeSeries ccs_price;         // ccsp, JPY/t
    TimeSeries transport_cost;    // gt,   JPY/(t km)
    CapSchedule cap;              // t/year
    std::array<TimeSeries, kNumTechs> feed_in_tariff;   // sp_k, JPY/GWh
    std::array<double, kNumTechs> alpha{0.31, 0.69};

    const TimeSeries& fit(TechKind k) const { return feed_in_tariff[index_of(k)]; }
};

// Explicit distances, indexed [from][to]. Missing entries fall back to
// great-circle distances between region locations.
using DistanceMatrix = std::vector<std::vector<std::optional<double>>>;

struct ModelInstance {
    std::string name;
    Horizon horizon;
    std::vector<Region> regions;
    GlobalParams globals;
    std::optional<DistanceMatrix> distances;

    // Storage-capable regions (V_s) and the rest (V_b), as region indices in
    // ascending order. Filled by validate_instance.
    std::vector<std::size_t> sellers;
    std::vector<std::size_t> buyers;

    std::size_t num_regions() const { return regions.size(); }
    std::size_t num_years() const { return static_cast<std::size_t>(horizon.num_years); }
    std::optional<std::size_t> find_region(std::string_view id) const;
    double national_baseline_t() const;
};

// ---------------------------------------------------------------------------
// Unvalidated input, as produced by the dataset loader. Series are already in
// canonical units; anything may be missing or malformed.

struct RawRegionTech {
    std::optional<std::vector<double>> g;
    std::optional<std::vector<double>> rp;
    std::optional<double> h;
    std::optional<double> potential_gw;
};

struct RawRegion {
    std::string id;
    std::optional<double> baseline_emissions_t;
    std::optional<double> ccs_capacity_t;
    std::optional<double> lat_deg;
    std::optional<double> lon_deg;
    std::map<TechKind, RawRegionTech> tech;
};

struct RawDistance {
    std::string from;
    std::string to;
    double km = 0.0;
};

struct RawInstance {
    std::string name;
    std::optional<int> start_year;
    std::optional<int> num_years;
    std::optional<std::vector<double>> carbon_price;
    std::optional<std::vector<double>> ccs_price;
    std::optional<std::vector<double>> transport_cost;
    std::optional<CapSchedule> cap;
    std::map<TechKind, std::vector<double>> feed_in_tariff;
    std::map<TechKind, double> alpha;
    std::vector<RawRegion> regions;
    std::optional<std::vector<RawDistance>> distances;
};

struct ValidationError {
    std::string path;
    std::string message;
};

struct ValidateOptions {
    // Check the resilience mix ratios (sum to 1, each > 0).
    bool resilience = true;
};

struct ValidationResult {
    std::optional<ModelInstance> instance;
    std::vector<ValidationError> errors;

    bool ok() const { return instance.has_value(); }
};

ValidationResult validate_instance(const RawInstance& raw, const ValidateOptions& opts = {});

// Inverse of validation; validate_instance(to_raw(m)) reproduces m.
RawInstance to_raw(const ModelInstance& m);

inline constexpr double kEarthRadiusKm = 6371.0;

double great_circle_km(const GeoPoint& a, const GeoPoint& b);

// Distance from region `from` to region `to` (indices into instance.regions).
// Throws std::invalid_argument when neither an explicit entry nor both
// locations are available.
double distance(std::size_t from, std::size_t to, const ModelInstance& instance);

}  // namespace ccsplan
