#include "doctest.h"

#include "fixtures.hpp"

#include "ccsplan/simplex.hpp"

#include <cmath>
#include <cstring>

using namespace ccsplan;

namespace {

template <class F>
void for_random_optimal(std::uint64_t seed, int count, F&& fn) {
    std::mt19937_64 rng(seed);
    int seen = 0;
    while (seen < count) {
        const LinearProgram lp = fixtures::random_lp(rng, 8, 8);
        const LpSolution s = solve(lp);
        if (s.status != SolveStatus::Optimal) continue;
        ++seen;
        fn(lp, s);
    }
}

}  // namespace

TEST_CASE("feasibility at optimum") {
    for_random_optimal(1, 150, [](const LinearProgram& lp, const LpSolution& s) {
        CHECK(check_solution(lp, s.x).feasible(1e-6 * (1.0 + max_abs_rhs(lp))));
        CHECK(std::abs(lp.evaluate_objective(s.x) - s.objective_value) <= 1e-9 * (1.0 + std::abs(s.objective_value)));
    });
}

TEST_CASE("objective scaling") {
    std::mt19937_64 pick(7);
    std::uniform_real_distribution<double> lambda(0.01, 1000.0);
    for_random_optimal(2, 100, [&](const LinearProgram& lp, const LpSolution& s) {
        const double l = lambda(pick);
        LinearProgram scaled = lp;
        for (double& c : scaled.objective()) c *= l;
        const LpSolution t = solve(scaled);
        REQUIRE(t.status == SolveStatus::Optimal);
        CHECK(std::abs(t.objective_value - l * s.objective_value) <= 1e-9 * (1.0 + std::abs(l * s.objective_value)));
        CHECK(check_solution(scaled, t.x).feasible(1e-6 * (1.0 + max_abs_rhs(lp))));
        CHECK(std::abs(scaled.evaluate_objective(t.x) - t.objective_value) <= 1e-9 * (1.0 + std::abs(t.objective_value)));
    });
}

TEST_CASE("relaxing a <= row never increases the optimum") {
    for_random_optimal(3, 100, [](const LinearProgram& lp, const LpSolution& s) {
        for (std::size_t r = 0; r < lp.num_rows(); ++r) {
            if (lp.rows()[r].sense != Sense::LessEqual) continue;
            LinearProgram loose;
            for (std::size_t j = 0; j < lp.num_vars(); ++j)
                loose.add_variable("", lp.bounds()[j].lower, lp.bounds()[j].upper, lp.objective()[j]);
            for (std::size_t q = 0; q < lp.num_rows(); ++q) {
                Row row = lp.rows()[q];
                if (q == r) row.rhs += 2.5;
                loose.add_row(row);
            }
            const LpSolution t = solve(loose);
            if (t.status == SolveStatus::Unbounded) continue;
            REQUIRE(t.status == SolveStatus::Optimal);
            CHECK(t.objective_value <= s.objective_value + 1e-9 * (1.0 + std::abs(s.objective_value)));
        }
    });
}

TEST_CASE("determinism: bit-identical x") {
    for_random_optimal(4, 50, [](const LinearProgram& lp, const LpSolution& s) {
        const LpSolution t = solve(lp);
        REQUIRE(t.x.size() == s.x.size());
        CHECK(std::memcmp(t.x.data(), s.x.data(), s.x.size() * sizeof(double)) == 0);
    });
}

TEST_CASE("scaling on and off agree") {
    SolverSettings plain;
    plain.scale = false;
    for_random_optimal(5, 100, [&](const LinearProgram& lp, const LpSolution& s) {
        const LpSolution t = solve(lp, plain);
        REQUIRE(t.status == SolveStatus::Optimal);
        CHECK(t.objective_value == doctest::Approx(s.objective_value).epsilon(1e-9));
    });
}
