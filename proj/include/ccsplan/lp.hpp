#pragma once

// Sparse linear programs in minimization form:
//
//   minimize    c^T x
//   subject to  a_r^T x  (<= | >= | =)  b_r     for every row r
//               lower_j <= x_j <= upper_j       (lower finite, upper may be +inf)

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace ccsplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
    std::size_t var;
    double coef;
};

struct Row {
    std::string name;
    std::vector<Term> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

struct Bounds {
    double lower = 0.0;
    double upper = kInf;
};

class LinearProgram {
public:
    std::size_t add_variable(std::string name, double lower = 0.0, double upper = kInf,
                             double cost = 0.0);
    std::size_t add_row(std::string name, std::vector<Term> terms, Sense sense, double rhs);
    std::size_t add_row(Row row);

    std::size_t num_vars() const { return objective_.size(); }
    std::size_t num_rows() const { return rows_.size(); }

    const std::vector<double>& objective() const { return objective_; }
    std::vector<double>& objective() { return objective_; }
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<Bounds>& bounds() const { return bounds_; }
    std::vector<Bounds>& bounds() { return bounds_; }
    const std::vector<std::string>& var_names() const { return names_; }

    void set_cost(std::size_t var, double c) { objective_.at(var) = c; }
    void set_bounds(std::size_t var, double lower, double upper) { bounds_.at(var) = {lower, upper}; }

    double evaluate_objective(const std::vector<double>& x) const;

    // Throws std::invalid_argument if any invariant is broken: row index out
    // of range, non-finite coefficient, infinite lower bound, lower > upper.
    void validate() const;

private:
    std::vector<double> objective_;
    std::vector<Bounds> bounds_;
    std::vector<std::string> names_;
    std::vector<Row> rows_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(SolveStatus s);

struct SolverSettings {
    double primal_tolerance = 1e-7;      // on the scaled problem
    double optimality_tolerance = 1e-9;  // reduced costs, scaled objective
    double pivot_tolerance = 1e-9;
    std::size_t max_iterations = 200000;
    std::size_t stall_threshold = 50;    // non-improving pivots before Bland's rule
    std::size_t refactor_interval = 100;
    bool scale = true;
};

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
    std::size_t iterations = 0;
    std::size_t phase1_iterations = 0;
    double max_primal_infeasibility = 0.0;
    // IterationLimit: whether x is primal feasible (limit hit in phase 2).
    bool feasible_point = false;
    // Infeasible: rows whose phase-1 artificial stayed positive.
    std::vector<std::size_t> infeasible_rows;
    // Unbounded: the entering variable of the improving ray.
    std::vector<std::size_t> ray_vars;
};

struct FeasibilityReport {
    std::vector<double> row_violation;    // >= 0, per row
    std::vector<double> bound_violation;  // >= 0, per variable
    double max_row_violation = 0.0;
    double max_bound_violation = 0.0;
    double objective = 0.0;

    double max_violation() const;
    bool feasible(double tol) const { return max_violation() <= tol; }
};

FeasibilityReport check_solution(const LinearProgram& lp, const std::vector<double>& x);

double max_abs_rhs(const LinearProgram& lp);

// Free-format MPS dump (NAME, ROWS, COLUMNS, RHS, BOUNDS, ENDATA).
void write_mps(const LinearProgram& lp, std::ostream& os, std::string_view name = "CCSPLAN");

}  // namespace ccsplan
