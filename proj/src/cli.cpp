#include "ccsplan/cli.hpp"

#include "ccsplan/dataset.hpp"
#include "ccsplan/results.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

namespace ccsplan {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError {
    std::string message;
};

std::string resolve_data(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("CCSPLAN_DATA"); env && *env) return env;
    throw UsageError{"--data is required (or set CCSPLAN_DATA)"};
}

ObjectiveMode parse_objective(const std::string& s) {
    return s == "cost" ? ObjectiveMode::CostOnly : ObjectiveMode::MaxReductionLex;  // empty: max-reduction
}

std::string payback_text(const ScenarioResult& r, const ModelInstance& instance, const CashflowOptions& opts) {
    if (!r.optimal()) return "-";
    auto y = payback_year(cashflow(r, instance, opts));
    return y ? std::to_string(*y) : "none";
}

void print_summary(std::ostream& out, const ScenarioResult& r, const ModelInstance& instance,
                   const CashflowOptions& opts) {
    out << "scenario " << r.config.scenario_id << ": ";
    if (!r.error.empty()) {
        out << "error: " << r.error << "\n";
        return;
    }
    out << to_string(r.status);
    if (r.optimal())
        out << ", objective " << format_number(r.objective_value) << " JPY, reduction "
            << format_number(std::round(r.reduction_pct * 1e4) / 1e4) << "%, payback "
            << payback_text(r, instance, opts);
    out << "\n";
    if (!r.diagnostics.empty()) {
        out << (r.status == SolveStatus::Infeasible ? "  binding rows:" : "  ray variables:");
        for (const auto& d : r.diagnostics) out << " " << d;
        out << "\n";
    }
}

// Options shared by the model-running subcommands.
struct RunFlags {
    std::string data;
    std::string out;
    std::string objective;  // empty: the subcommand's default
    int scenario = 1;
    bool nonneg = false;
    bool replacement = false;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
};

void add_data(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--data", f.data, "Dataset directory (default: $CCSPLAN_DATA)");
}

void add_objective(CLI::App* cmd, RunFlags& f, const std::string& dflt) {
    cmd->add_option("--objective", f.objective,
                    "cost: minimize net cost (JPY); max-reduction: maximize the final-year reduction, then "
                    "minimize cost [default: " + dflt + "]")
        ->check(CLI::IsMember({"cost", "max-reduction"}));
}

int cmd_validate(const RunFlags& f, std::ostream& out, std::ostream& err) {
    const fs::path dir = resolve_data(f.data);
    RawInstance raw;
    try {
        raw = load_dataset(dir);
    } catch (const DatasetError& e) {
        err << "cannot load " << dir.string() << ":\n";
        for (const auto& p : e.problems()) err << "  " << p << "\n";
        return kFailed;
    }
    const ValidationResult v = validate_instance(raw);
    if (!v.ok()) {
        err << "validation failed for " << dir.string() << ":\n";
        for (const auto& e : v.errors) err << "  " << e.path << ": " << e.message << "\n";
        return kFailed;
    }
    const ModelInstance& m = *v.instance;
    out << m.num_regions() << " regions (" << m.sellers.size() << " storage-capable), horizon "
        << m.horizon.start_year << "-" << m.horizon.end_year() << "\n";
    std::size_t finite_caps = std::count_if(m.globals.cap.begin(), m.globals.cap.end(),
                                            [](const auto& c) { return c.has_value(); });
    out << 4 + kNumTechs + 2 * kNumTechs * m.num_regions() << " series, " << finite_caps << " capped years, baseline "
        << format_number(m.national_baseline_t()) << " t\n";
    return kOk;
}

std::optional<ModelInstance> load_or_report(const std::string& data, std::ostream& err) {
    const fs::path dir = resolve_data(data);
    try {
        return load_instance(dir);
    } catch (const DatasetError& e) {
        err << "cannot load " << dir.string() << ":\n";
        for (const auto& p : e.problems()) err << "  " << p << "\n";
        return std::nullopt;
    }
}

int cmd_solve(const RunFlags& f, std::ostream& out, std::ostream& err) {
    auto instance = load_or_report(f.data, err);
    if (!instance) return kFailed;
    ScenarioConfig cfg = ScenarioConfig::standard(f.scenario, parse_objective(f.objective));
    cfg.nonneg_emissions = f.nonneg;
    const ScenarioResult r = run_scenario(*instance, cfg);
    BundleOptions opts;
    opts.cashflow.equipment_replacement = f.replacement;
    write_results(r, *instance, f.out, opts);
    print_summary(out, r, *instance, opts.cashflow);
    return r.optimal() ? kOk : kFailed;
}

int cmd_run_all(const RunFlags& f, std::ostream& out, std::ostream& err) {
    auto instance = load_or_report(f.data, err);
    if (!instance) return kFailed;
    const auto results = run_all(*instance, parse_objective(f.objective), f.jobs);
    BundleOptions opts;
    opts.cashflow.equipment_replacement = f.replacement;
    fs::create_directories(f.out);
    std::string overview = "scenario,status,objective,reduction_pct,payback_year\n";
    bool all_ok = true;
    for (const auto& [id, r] : results) {
        write_results(r, *instance, fs::path(f.out) / ("scenario_" + std::to_string(id)), opts);
        print_summary(out, r, *instance, opts.cashflow);
        all_ok &= r.optimal();
        overview += std::to_string(id) + "," + (r.error.empty() ? std::string(to_string(r.status)) : "error") + ",";
        if (r.optimal()) {
            std::string pb = payback_text(r, *instance, opts.cashflow);
            overview += format_number(r.objective_value) + "," + format_number(r.reduction_pct) + "," +
                        (pb == "none" ? "" : pb);
        } else {
            overview += ",,";
        }
        overview += "\n";
    }
    std::ofstream(fs::path(f.out) / "overview.csv", std::ios::binary) << overview;
    return all_ok ? kOk : kFailed;
}

struct SweepFlags {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 1;
    double delta = 1.0;
};

int cmd_sweep(const RunFlags& f, const SweepFlags& s, std::ostream& out, std::ostream& err) {
    if (s.from > s.to) throw UsageError{"--from must not exceed --to"};
    if (s.steps == 0) throw UsageError{"--steps must be >= 1"};
    if (s.steps > 1 && s.from == s.to) throw UsageError{"--from equals --to; use --steps 1"};
    auto instance = load_or_report(f.data, err);
    if (!instance) return kFailed;
    const ScenarioConfig cfg = ScenarioConfig::standard(f.scenario, parse_objective(f.objective));
    SweepOptions opts;
    opts.jobs = f.jobs;
    opts.jump_pp = s.delta;
    const SweepResult sw =
        sweep(*instance, cfg, *parse_sweep_parameter(s.param), linear_grid(s.from, s.to, s.steps), opts);
    write_sweep(sw, *instance, f.out);
    for (const SweepPoint& p : sw.points) {
        out << s.param << " = " << format_number(p.value) << ": ";
        if (p.result.optimal())
            out << "reduction " << format_number(std::round(p.result.reduction_pct * 1e4) / 1e4) << "%, objective "
                << format_number(p.result.objective_value) << " JPY" << (p.any_trading ? ", trading" : "") << "\n";
        else
            out << (p.error.empty() ? std::string(to_string(p.result.status)) : p.error) << "\n";
    }
    for (const auto& w : sw.warnings) err << "warning: " << w << "\n";
    out << "threshold: " << (sw.threshold ? format_number(*sw.threshold) : "none") << "\n";
    return sw.succeeded() > 0 ? kOk : kFailed;
}

int cmd_report(const std::string& in, std::ostream& out, std::ostream& err) {
    const fs::path root(in);
    std::vector<fs::path> bundles;
    if (fs::is_regular_file(root / "summary.json")) {
        bundles.push_back(root);
    } else if (fs::is_directory(root)) {
        for (const auto& e : fs::directory_iterator(root))
            if (e.is_directory() && fs::is_regular_file(e.path() / "summary.json")) bundles.push_back(e.path());
        std::sort(bundles.begin(), bundles.end());
    }
    if (bundles.empty()) {
        err << "no result bundles under " << root.string() << "\n";
        return kFailed;
    }
    bool ok = true;
    for (const auto& b : bundles) {
        const auto problems = verify_bundle(b);
        out << b.filename().string() << ": " << (problems.empty() ? "consistent" : "INCONSISTENT") << "\n";
        for (const auto& p : problems) out << "  " << p << "\n";
        ok &= problems.empty();
    }
    return ok ? kOk : kFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Renewables + CCS deployment planner"};
    app.name("ccsplan");
    app.require_subcommand(1);

    RunFlags flags;
    SweepFlags sweep_flags;
    std::string report_in;

    auto* validate = app.add_subcommand("validate", "Load and validate a dataset");
    add_data(validate, flags);

    auto* solve = app.add_subcommand("solve", "Solve one scenario and write a result bundle");
    add_data(solve, flags);
    solve->add_option("--scenario", flags.scenario, "1-4: CCS limit equal-yearly|total-only x mix rule off|on")
        ->required()
        ->check(CLI::Range(1, 4));
    add_objective(solve, flags, "max-reduction");
    solve->add_flag("--ccs-nonneg-emissions", flags.nonneg, "Add C_i(t) >= 0 rows (tonnes CO2)");
    solve->add_flag("--equipment-replacement", flags.replacement,
                    "Count 20-year equipment replacement capex (JPY) in the cashflow");
    solve->add_option("--out", flags.out, "Output directory for the result bundle")->required();

    auto* all = app.add_subcommand("run-all", "Solve scenarios 1-4 and write one bundle per scenario");
    add_data(all, flags);
    add_objective(all, flags, "max-reduction");
    all->add_flag("--equipment-replacement", flags.replacement,
                  "Count 20-year equipment replacement capex (JPY) in the cashflow");
    all->add_option("--jobs", flags.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    all->add_option("--out", flags.out, "Output directory")->required();

    auto* sw = app.add_subcommand("sweep", "Sensitivity sweep over one price");
    add_data(sw, flags);
    sw->add_option("--scenario", flags.scenario, "1-4")->required()->check(CLI::Range(1, 4));
    sw->add_option("--param", sweep_flags.param,
                   "carbon-price (JPY/t) | ccs-cost (JPY/t) | transport-cost (JPY/(t*km))")
        ->required()
        ->check(CLI::IsMember({"carbon-price", "ccs-cost", "transport-cost"}));
    sw->add_option("--from", sweep_flags.from, "First grid value, in the parameter's unit")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sw->add_option("--to", sweep_flags.to, "Last grid value, in the parameter's unit")->required();
    sw->add_option("--steps", sweep_flags.steps, "Number of grid points (linear grid)")->required();
    sw->add_option("--delta", sweep_flags.delta, "Threshold: reduction jump in percentage points")
        ->capture_default_str();
    add_objective(sw, flags, "cost");
    sw->add_option("--jobs", flags.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sw->add_option("--out", flags.out, "Output directory")->required();

    auto* report = app.add_subcommand("report", "Check result bundles for internal consistency");
    report->add_option("--in", report_in, "A bundle directory, or a directory of bundles")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmd_validate(flags, out, err);
        if (*solve) return cmd_solve(flags, out, err);
        if (*all) return cmd_run_all(flags, out, err);
        if (*sw) {
            if (flags.objective.empty()) flags.objective = "cost";
            return cmd_sweep(flags, sweep_flags, out, err);
        }
        if (*report) return cmd_report(report_in, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.message << "\n\n" << app.help();
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}

}  // namespace ccsplan
