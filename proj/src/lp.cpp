#include "ccsplan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ccsplan {

std::size_t LinearProgram::add_variable(std::string name, double lower, double upper, double cost) {
    objective_.push_back(cost);
    bounds_.push_back({lower, upper});
    if (name.empty()) name = "x" + std::to_string(names_.size());
    names_.push_back(std::move(name));
    return objective_.size() - 1;
}

std::size_t LinearProgram::add_row(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
    return add_row(Row{std::move(name), std::move(terms), sense, rhs});
}

std::size_t LinearProgram::add_row(Row row) {
    if (row.name.empty()) row.name = "r" + std::to_string(rows_.size());
    rows_.push_back(std::move(row));
    return rows_.size() - 1;
}

double LinearProgram::evaluate_objective(const std::vector<double>& x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < objective_.size(); ++j) v += objective_[j] * x[j];
    return v;
}

void LinearProgram::validate() const {
    for (std::size_t j = 0; j < bounds_.size(); ++j) {
        const Bounds& b = bounds_[j];
        if (!std::isfinite(b.lower))
            throw std::invalid_argument("variable " + names_[j] + ": lower bound must be finite");
        if (std::isnan(b.upper) || b.upper < b.lower)
            throw std::invalid_argument("variable " + names_[j] + ": lower > upper");
        if (!std::isfinite(objective_[j]))
            throw std::invalid_argument("variable " + names_[j] + ": non-finite cost");
    }
    for (const Row& r : rows_) {
        if (!std::isfinite(r.rhs)) throw std::invalid_argument("row " + r.name + ": non-finite rhs");
        for (const Term& t : r.terms) {
            if (t.var >= num_vars())
                throw std::invalid_argument("row " + r.name + ": variable index out of range");
            if (!std::isfinite(t.coef))
                throw std::invalid_argument("row " + r.name + ": non-finite coefficient");
        }
    }
}

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

double FeasibilityReport::max_violation() const {
    return std::max(max_row_violation, max_bound_violation);
}

FeasibilityReport check_solution(const LinearProgram& lp, const std::vector<double>& x) {
    if (x.size() != lp.num_vars()) throw std::invalid_argument("check_solution: size mismatch");
    FeasibilityReport rep;
    rep.row_violation.resize(lp.num_rows(), 0.0);
    rep.bound_violation.resize(lp.num_vars(), 0.0);
    for (std::size_t r = 0; r < lp.num_rows(); ++r) {
        const Row& row = lp.rows()[r];
        double lhs = 0.0;
        for (const Term& t : row.terms) lhs += t.coef * x[t.var];
        double viol = 0.0;
        switch (row.sense) {
            case Sense::LessEqual: viol = lhs - row.rhs; break;
            case Sense::GreaterEqual: viol = row.rhs - lhs; break;
            case Sense::Equal: viol = std::abs(lhs - row.rhs); break;
        }
        rep.row_violation[r] = std::max(0.0, viol);
        rep.max_row_violation = std::max(rep.max_row_violation, rep.row_violation[r]);
    }
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const Bounds& b = lp.bounds()[j];
        double viol = std::max(b.lower - x[j], x[j] - b.upper);
        rep.bound_violation[j] = std::max(0.0, viol);
        rep.max_bound_violation = std::max(rep.max_bound_violation, rep.bound_violation[j]);
    }
    rep.objective = lp.evaluate_objective(x);
    return rep;
}

double max_abs_rhs(const LinearProgram& lp) {
    double m = 0.0;
    for (const Row& r : lp.rows()) m = std::max(m, std::abs(r.rhs));
    return m;
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_mps(const LinearProgram& lp, std::ostream& os, std::string_view name) {
    os << "NAME " << name << '\n';
    os << "ROWS\n";
    os << " N  COST\n";
    for (const Row& r : lp.rows()) {
        const char* tag = r.sense == Sense::LessEqual ? "L" : r.sense == Sense::GreaterEqual ? "G" : "E";
        os << ' ' << tag << "  " << r.name << '\n';
    }

    // Column-major view of the row entries.
    std::vector<std::vector<std::pair<std::size_t, double>>> cols(lp.num_vars());
    for (std::size_t r = 0; r < lp.num_rows(); ++r)
        for (const Term& t : lp.rows()[r].terms) cols[t.var].push_back({r, t.coef});

    os << "COLUMNS\n";
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const std::string& var = lp.var_names()[j];
        if (lp.objective()[j] != 0.0) os << "    " << var << "  COST  " << num(lp.objective()[j]) << '\n';
        for (const auto& [r, c] : cols[j])
            os << "    " << var << "  " << lp.rows()[r].name << "  " << num(c) << '\n';
    }
    os << "RHS\n";
    for (const Row& r : lp.rows())
        if (r.rhs != 0.0) os << "    RHS  " << r.name << "  " << num(r.rhs) << '\n';
    os << "BOUNDS\n";
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const Bounds& b = lp.bounds()[j];
        const std::string& var = lp.var_names()[j];
        if (b.lower == b.upper) {
            os << " FX BND  " << var << "  " << num(b.lower) << '\n';
            continue;
        }
        if (b.lower != 0.0) os << " LO BND  " << var << "  " << num(b.lower) << '\n';
        if (std::isfinite(b.upper)) os << " UP BND  " << var << "  " << num(b.upper) << '\n';
    }
    os << "ENDATA\n";
}

}  // namespace ccsplan
