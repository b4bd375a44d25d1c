#include "ccsplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ccsplan {

namespace {

// Half-space a.x <= b, or hyperplane a.x = b.
struct Constraint {
    std::vector<double> a;
    double b = 0.0;
    bool equality = false;
};

double dot(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

double norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

// Orthonormal basis of the span of the chosen constraint normals.
class Span {
public:
    explicit Span(std::size_t n) : n_(n) {}

    // Adds v if it is independent of the current span.
    bool try_add(const std::vector<double>& v) {
        std::vector<double> r = v;
        for (const auto& q : basis_) {
            const double c = dot(q, r);
            for (std::size_t i = 0; i < n_; ++i) r[i] -= c * q[i];
        }
        // Second pass for numerical orthogonality.
        for (const auto& q : basis_) {
            const double c = dot(q, r);
            for (std::size_t i = 0; i < n_; ++i) r[i] -= c * q[i];
        }
        const double nr = norm(r);
        if (nr <= 1e-9 * std::max(1.0, norm(v))) return false;
        for (double& x : r) x /= nr;
        basis_.push_back(std::move(r));
        return true;
    }

    void pop() { basis_.pop_back(); }
    std::size_t rank() const { return basis_.size(); }

    // A unit vector orthogonal to the span (requires rank() == n - 1).
    std::vector<double> normal() const {
        std::vector<double> best;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < n_; ++j) {
            std::vector<double> r(n_, 0.0);
            r[j] = 1.0;
            for (const auto& q : basis_) {
                const double c = q[j];
                for (std::size_t i = 0; i < n_; ++i) r[i] -= c * q[i];
            }
            const double nr = norm(r);
            if (nr > best_norm + 1e-12) {
                best_norm = nr;
                best = std::move(r);
            }
        }
        for (double& x : best) x /= best_norm;
        return best;
    }

private:
    std::size_t n_;
    std::vector<std::vector<double>> basis_;
};

// Dense solve of a square system by Gaussian elimination with partial
// pivoting. Returns false if the matrix is numerically singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
        if (std::abs(a[piv][k]) < 1e-12) return false;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r][k] / a[k][k];
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= a[k][c] * x[c];
        x[k] = s / a[k][k];
    }
    return true;
}

bool satisfies(const Constraint& c, const std::vector<double>& x) {
    const double lhs = dot(c.a, x);
    const double tol = 1e-9 * (1.0 + std::abs(c.b) + norm(c.a) * norm(x));
    if (c.equality) return std::abs(lhs - c.b) <= tol;
    return lhs <= c.b + tol;
}

}  // namespace

LpSolution enumerate_oracle(const LinearProgram& lp) {
    lp.validate();
    const std::size_t n = lp.num_vars();
    if (n > kOracleMaxVars || lp.num_rows() > kOracleMaxRows)
        throw std::invalid_argument("enumerate_oracle: LP exceeds the enumeration size guard (" +
                                    std::to_string(n) + " vars, " + std::to_string(lp.num_rows()) +
                                    " rows)");

    std::vector<Constraint> all;
    for (const Row& r : lp.rows()) {
        Constraint c{std::vector<double>(n, 0.0), r.rhs, r.sense == Sense::Equal};
        for (const Term& t : r.terms) c.a[t.var] += t.coef;
        if (r.sense == Sense::GreaterEqual) {
            for (double& v : c.a) v = -v;
            c.b = -c.b;
        }
        all.push_back(std::move(c));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Bounds& bd = lp.bounds()[j];
        Constraint lo{std::vector<double>(n, 0.0), -bd.lower, false};
        lo.a[j] = -1.0;
        if (bd.lower == bd.upper) {
            Constraint fx{std::vector<double>(n, 0.0), bd.lower, true};
            fx.a[j] = 1.0;
            all.push_back(std::move(fx));
            continue;
        }
        all.push_back(std::move(lo));
        if (std::isfinite(bd.upper)) {
            Constraint up{std::vector<double>(n, 0.0), bd.upper, false};
            up.a[j] = 1.0;
            all.push_back(std::move(up));
        }
    }

    std::vector<std::size_t> forced, optional;
    for (std::size_t i = 0; i < all.size(); ++i) (all[i].equality ? forced : optional).push_back(i);

    LpSolution sol;
    sol.status = SolveStatus::Infeasible;
    sol.x.assign(n, 0.0);

    auto feasible = [&](const std::vector<double>& x) {
        return std::all_of(all.begin(), all.end(), [&](const Constraint& c) { return satisfies(c, x); });
    };

    if (n == 0) {
        sol.iterations = 1;
        if (feasible(sol.x)) sol.status = SolveStatus::Optimal;
        return sol;
    }

    // Independent subset of the equalities; they are active at every point.
    Span base(n);
    std::vector<std::size_t> forced_indep;
    for (std::size_t i : forced)
        if (base.try_add(all[i].a)) forced_indep.push_back(i);

    std::size_t systems = 0;
    bool found = false;
    double best = kInf;

    // Vertices: forced_indep plus (n - rank) independent optional constraints.
    {
        Span span = base;
        std::vector<std::size_t> chosen = forced_indep;
        const std::size_t need = n - forced_indep.size();
        std::function<void(std::size_t)> pick = [&](std::size_t from) {
            if (chosen.size() == n) {
                ++systems;
                std::vector<std::vector<double>> a;
                std::vector<double> b;
                for (std::size_t i : chosen) {
                    a.push_back(all[i].a);
                    b.push_back(all[i].b);
                }
                std::vector<double> x;
                if (!solve_square(std::move(a), std::move(b), x) || !feasible(x)) return;
                const double obj = lp.evaluate_objective(x);
                if (!found || obj < best - 1e-12 * (1.0 + std::abs(best))) {
                    found = true;
                    best = obj;
                    sol.x = x;
                }
                return;
            }
            const std::size_t remaining = n - chosen.size();
            for (std::size_t k = from; k + remaining <= optional.size(); ++k) {
                const std::size_t i = optional[k];
                if (!span.try_add(all[i].a)) continue;
                chosen.push_back(i);
                pick(k + 1);
                chosen.pop_back();
                span.pop();
            }
        };
        if (need <= optional.size()) pick(0);
    }

    if (!found) {
        sol.iterations = systems;
        return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.objective_value = best;

    // Extreme rays of the recession cone {d : a.d = 0 (equalities), a.d <= 0}.
    if (forced_indep.size() < n) {
        Span span = base;
        std::size_t chosen = forced_indep.size();
        const std::vector<double>& c = lp.objective();
        const double cnorm = norm(c);
        bool unbounded = false;
        std::function<void(std::size_t)> pick = [&](std::size_t from) {
            if (unbounded) return;
            if (chosen == n - 1) {
                ++systems;
                std::vector<double> d = span.normal();
                for (int flip = 0; flip < 2 && !unbounded; ++flip) {
                    if (flip) for (double& v : d) v = -v;
                    bool in_cone = true;
                    for (const Constraint& k : all) {
                        const double ad = dot(k.a, d);
                        const double tol = 1e-9 * std::max(1.0, norm(k.a));
                        if ((k.equality && std::abs(ad) > tol) || (!k.equality && ad > tol)) {
                            in_cone = false;
                            break;
                        }
                    }
                    if (in_cone && dot(c, d) < -1e-9 * std::max(1.0, cnorm)) {
                        unbounded = true;
                        for (std::size_t j = 0; j < n; ++j)
                            if (d[j] > 1e-9) sol.ray_vars.push_back(j);
                    }
                }
                return;
            }
            const std::size_t remaining = n - 1 - chosen;
            for (std::size_t k = from; k + remaining <= optional.size(); ++k) {
                if (!span.try_add(all[optional[k]].a)) continue;
                ++chosen;
                pick(k + 1);
                --chosen;
                span.pop();
                if (unbounded) return;
            }
        };
        pick(0);
        if (unbounded) sol.status = SolveStatus::Unbounded;
    }

    sol.iterations = systems;
    return sol;
}

}  // namespace ccsplan
