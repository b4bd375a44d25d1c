#include "doctest.h"

#include "ccsplan/simplex.hpp"

#include <sstream>

using namespace ccsplan;

TEST_CASE("single bounded variable") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, 5.0, -1.0);
    const LpSolution s = solve(lp);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(5.0));
    CHECK(s.objective_value == doctest::Approx(-5.0));
}

TEST_CASE("unbounded ray") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, kInf, -1.0);
    const LpSolution s = solve(lp);
    CHECK(s.status == SolveStatus::Unbounded);
    REQUIRE(s.ray_vars.size() == 1);
    CHECK(s.ray_vars[0] == 0);
}

TEST_CASE("empty feasible set") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, kInf, 1.0);
    lp.add_row("neg", {{0, 1.0}}, Sense::LessEqual, -1.0);
    const LpSolution s = solve(lp);
    CHECK(s.status == SolveStatus::Infeasible);
    REQUIRE(s.infeasible_rows.size() == 1);
    CHECK(s.infeasible_rows[0] == 0);
}

TEST_CASE("two-phase with equality and >= rows") {
    // min x + 2y  s.t. x + y = 4, x - y >= 1, y >= 0.5
    LinearProgram lp;
    lp.add_variable("x", 0.0, kInf, 1.0);
    lp.add_variable("y", 0.5, kInf, 2.0);
    lp.add_row("sum", {{0, 1.0}, {1, 1.0}}, Sense::Equal, 4.0);
    lp.add_row("gap", {{0, 1.0}, {1, -1.0}}, Sense::GreaterEqual, 1.0);
    const LpSolution s = solve(lp);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(3.5));
    CHECK(s.x[1] == doctest::Approx(0.5));
    CHECK(s.objective_value == doctest::Approx(4.5));
    CHECK(s.phase1_iterations > 0);
}

TEST_CASE("degenerate cycling-prone LP terminates") {
    // Beale's example in minimization form.
    LinearProgram lp;
    lp.add_variable("x1", 0, kInf, -0.75);
    lp.add_variable("x2", 0, kInf, 150.0);
    lp.add_variable("x3", 0, kInf, -0.02);
    lp.add_variable("x4", 0, kInf, 6.0);
    lp.add_row("r1", {{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, Sense::LessEqual, 0.0);
    lp.add_row("r2", {{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, Sense::LessEqual, 0.0);
    lp.add_row("r3", {{2, 1.0}}, Sense::LessEqual, 1.0);
    const LpSolution s = solve(lp);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(-0.05));
}

TEST_CASE("iteration limit is reported, never optimal") {
    LinearProgram lp;
    for (int j = 0; j < 4; ++j) lp.add_variable("", 0.0, kInf, -1.0 - j);
    lp.add_row("", {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Sense::LessEqual, 10.0);
    lp.add_row("", {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, Sense::LessEqual, 20.0);
    SolverSettings st;
    st.max_iterations = 1;
    const LpSolution s = solve(lp, st);
    CHECK(s.status == SolveStatus::IterationLimit);
    CHECK(s.feasible_point);
}

TEST_CASE("check_solution reports violations and objective") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, 5.0, 3.0);
    lp.add_row("r", {{0, 1.0}}, Sense::GreaterEqual, 1.0);

    const FeasibilityReport ok = check_solution(lp, {2.0});
    CHECK(ok.feasible(1e-12));
    CHECK(ok.objective == 6.0);

    const FeasibilityReport bad = check_solution(lp, {6.0});
    CHECK(bad.max_bound_violation == 1.0);
    CHECK(bad.bound_violation[0] == 1.0);
    CHECK(bad.max_row_violation == 0.0);

    const FeasibilityReport low = check_solution(lp, {0.25});
    CHECK(low.row_violation[0] == doctest::Approx(0.75));
}

TEST_CASE("validate rejects malformed programs") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, 1.0);
    lp.add_row("r", {{3, 1.0}}, Sense::LessEqual, 1.0);
    CHECK_THROWS_AS(lp.validate(), std::invalid_argument);

    LinearProgram crossed;
    crossed.add_variable("x", 2.0, 1.0);
    CHECK_THROWS_AS(crossed.validate(), std::invalid_argument);
}

TEST_CASE("default names") {
    LinearProgram lp;
    lp.add_variable("");
    lp.add_row("", {{0, 1.0}}, Sense::LessEqual, 1.0);
    CHECK(lp.var_names()[0] == "x0");
    CHECK(lp.rows()[0].name == "r0");
}

TEST_CASE("MPS dump layout") {
    LinearProgram lp;
    lp.add_variable("x", 0.0, 4.0, -1.0);
    lp.add_variable("y", 1.0, 1.0, 2.0);
    lp.add_row("c1", {{0, 1.0}, {1, 1.0}}, Sense::GreaterEqual, 2.0);
    std::ostringstream os;
    write_mps(lp, os, "T");
    const std::string s = os.str();
    CHECK(s.find("NAME T") == 0);
    CHECK(s.find("ROWS\n N  COST\n G  c1\n") != std::string::npos);
    CHECK(s.find("COLUMNS\n") != std::string::npos);
    CHECK(s.find(" UP BND  x  4\n") != std::string::npos);
    CHECK(s.find(" FX BND  y  1\n") != std::string::npos);
    CHECK(s.rfind("ENDATA\n") == s.size() - 7);
}
