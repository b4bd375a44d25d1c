#pragma once

// Result bundles written by the CLI.
//
//   plan.csv        region,item,year,amount,unit        (item: solar | wind | CCS)
//   emissions.csv   region,year,tonnes                  (first year is the baseline)
//   trades.csv      year,from,to,tonnes
//   cashflow.csv    region,year,<cashflow columns>      (NATIONAL rows last)
//   summary.json    headline figures, sorted keys
//   plotdata/       per-year series for plotting
//
// Every number goes through format_number, so identical inputs give
// byte-identical bundles.

#include "ccsplan/analytics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ccsplan {

// Fixed 9-decimal rendering with trailing zeros removed ("4", "0.31", "-2.5").
std::string format_number(double v);

struct BundleOptions {
    CashflowOptions cashflow;
};

// Writes the bundle for one scenario. Non-optimal results produce a
// summary.json carrying the status and diagnostics only.
void write_results(const ScenarioResult& result, const ModelInstance& instance,
                   const std::filesystem::path& out, const BundleOptions& options = {});

// sweep.csv, sweep.json and one summary per grid point under points/NN/.
void write_sweep(const SweepResult& sweep, const ModelInstance& instance, const std::filesystem::path& out);

// Recomputes the summary.json figures from the CSV files of a bundle.
// Returns one message per mismatch; empty means consistent.
std::vector<std::string> verify_bundle(const std::filesystem::path& dir);

}  // namespace ccsplan
