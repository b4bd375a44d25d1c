#pragma once

// Dataset bundle on disk:
//
//   globals.json    horizon, units block, cp/ccsp/gt/cap/feed-in-tariff series, alpha
//   regions.csv     id,C0_tonnes,lat,lon,ccs_capacity_tonnes
//   tech.csv        region_id,tech,potential_gw,h_gwh_per_gw,rp_series,g_series
//   series/*.csv    year,value   (referenced by file stem from tech.csv)
//   distances.csv   from_id,to_id,km   (optional)
//
// Numbers are given in the units declared by the `units` block and are
// converted to canonical units (t, GW, GWh, JPY, km) on load.

#include "ccsplan/domain.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccsplan {

class DatasetError : public std::runtime_error {
public:
    explicit DatasetError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

// Parses every file and converts units; semantic checks are left to
// validate_instance. Throws DatasetError listing every problem found.
RawInstance load_dataset(const std::filesystem::path& dir);

// load_dataset + validate_instance. Throws DatasetError carrying the
// validation errors as "path: message" strings.
ModelInstance load_instance(const std::filesystem::path& dir, const ValidateOptions& opts = {});

// Writes an instance in canonical units; load_dataset reads it back exactly.
void write_dataset(const ModelInstance& instance, const std::filesystem::path& dir);

// Multiplier from a unit tag to the canonical unit of `quantity`
// (e.g. "emissions", "kt" -> 1000). Empty if the tag is unknown.
std::optional<double> unit_factor(std::string_view quantity, std::string_view tag);

}  // namespace ccsplan
