#include "ccsplan/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccsplan {

namespace {

double pow2_round(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) return 1.0;
    return std::exp2(std::round(std::log2(s)));
}

struct Entry {
    std::size_t row;
    double value;
};

enum class VarState { Basic, AtLower, AtUpper };

struct Scaling {
    std::vector<double> row;
    std::vector<double> col;
};

// Geometric-mean equilibration, a few alternating passes.
Scaling compute_scaling(const LinearProgram& lp, bool enabled) {
    Scaling s{std::vector<double>(lp.num_rows(), 1.0), std::vector<double>(lp.num_vars(), 1.0)};
    if (!enabled) return s;
    for (int pass = 0; pass < 6; ++pass) {
        for (std::size_t r = 0; r < lp.num_rows(); ++r) {
            double lo = kInf, hi = 0.0;
            for (const Term& t : lp.rows()[r].terms) {
                double a = std::abs(t.coef) * s.col[t.var];
                if (a == 0.0) continue;
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
            s.row[r] = hi > 0.0 ? pow2_round(1.0 / std::sqrt(lo * hi)) : 1.0;
        }
        std::vector<double> lo(lp.num_vars(), kInf), hi(lp.num_vars(), 0.0);
        for (std::size_t r = 0; r < lp.num_rows(); ++r) {
            for (const Term& t : lp.rows()[r].terms) {
                double a = std::abs(t.coef) * s.row[r];
                if (a == 0.0) continue;
                lo[t.var] = std::min(lo[t.var], a);
                hi[t.var] = std::max(hi[t.var], a);
            }
        }
        for (std::size_t j = 0; j < lp.num_vars(); ++j)
            s.col[j] = hi[j] > 0.0 ? pow2_round(1.0 / std::sqrt(lo[j] * hi[j])) : 1.0;
    }
    return s;
}

class BoundedSimplex {
public:
    BoundedSimplex(const LinearProgram& lp, const SolverSettings& settings)
        : lp_(lp), set_(settings), m_(lp.num_rows()), n_(lp.num_vars()) {}

    LpSolution run();

private:
    enum class PhaseResult { Optimal, Unbounded, IterationLimit };

    void setup();
    std::size_t num_total() const { return lower_.size(); }
    bool is_artificial(std::size_t j) const { return j >= n_ + m_; }
    void column(std::size_t j, std::vector<Entry>& out) const;
    double dot_column(const std::vector<double>& y, std::size_t j) const;

    void refactor();
    void compute_duals(const std::vector<double>& cost, std::vector<double>& y) const;
    void compute_alpha(std::size_t q, std::vector<double>& alpha) const;
    void pivot(std::size_t p, const std::vector<double>& alpha);
    PhaseResult iterate(const std::vector<double>& cost, bool phase_one);
    std::vector<double> unscaled_x() const;

    const LinearProgram& lp_;
    const SolverSettings& set_;
    std::size_t m_, n_;

    Scaling scale_;
    std::vector<std::vector<Entry>> cols_;   // scaled structural columns
    std::vector<double> rhs_;
    std::vector<double> lower_, upper_, x_;
    std::vector<double> art_sign_;           // per artificial
    std::vector<std::size_t> art_row_;
    std::vector<VarState> state_;
    std::vector<std::size_t> basis_;         // basis position -> variable
    std::vector<double> binv_;               // m x m, row-major
    std::vector<double> cost2_;

    std::size_t iterations_ = 0;
    std::size_t since_refactor_ = 0;
    std::size_t ray_var_ = 0;
};

void BoundedSimplex::column(std::size_t j, std::vector<Entry>& out) const {
    out.clear();
    if (j < n_) {
        out = cols_[j];
    } else if (j < n_ + m_) {
        out.push_back({j - n_, 1.0});
    } else {
        std::size_t a = j - n_ - m_;
        out.push_back({art_row_[a], art_sign_[a]});
    }
}

double BoundedSimplex::dot_column(const std::vector<double>& y, std::size_t j) const {
    if (j < n_) {
        double s = 0.0;
        for (const Entry& e : cols_[j]) s += y[e.row] * e.value;
        return s;
    }
    if (j < n_ + m_) return y[j - n_];
    std::size_t a = j - n_ - m_;
    return y[art_row_[a]] * art_sign_[a];
}

void BoundedSimplex::setup() {
    scale_ = compute_scaling(lp_, set_.scale);

    cols_.assign(n_, {});
    for (std::size_t r = 0; r < m_; ++r)
        for (const Term& t : lp_.rows()[r].terms)
            if (t.coef != 0.0) cols_[t.var].push_back({r, t.coef * scale_.row[r] * scale_.col[t.var]});
    // Merge duplicate entries of a row within one column.
    for (auto& col : cols_) {
        std::stable_sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
        std::vector<Entry> merged;
        for (const Entry& e : col) {
            if (!merged.empty() && merged.back().row == e.row) merged.back().value += e.value;
            else merged.push_back(e);
        }
        col = std::move(merged);
    }

    rhs_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) rhs_[r] = lp_.rows()[r].rhs * scale_.row[r];

    lower_.clear();
    upper_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
        lower_.push_back(lp_.bounds()[j].lower / scale_.col[j]);
        upper_.push_back(lp_.bounds()[j].upper / scale_.col[j]);
    }
    for (std::size_t r = 0; r < m_; ++r) {
        switch (lp_.rows()[r].sense) {
            case Sense::LessEqual: lower_.push_back(0.0); upper_.push_back(kInf); break;
            case Sense::GreaterEqual: lower_.push_back(-kInf); upper_.push_back(0.0); break;
            case Sense::Equal: lower_.push_back(0.0); upper_.push_back(0.0); break;
        }
    }

    // Structurals start at their lower bound, logicals at their finite bound.
    x_.assign(n_ + m_, 0.0);
    state_.assign(n_ + m_, VarState::AtLower);
    for (std::size_t j = 0; j < n_; ++j) x_[j] = lower_[j];
    for (std::size_t r = 0; r < m_; ++r)
        if (lp_.rows()[r].sense == Sense::GreaterEqual) state_[n_ + r] = VarState::AtUpper;

    std::vector<double> resid = rhs_;
    for (std::size_t j = 0; j < n_; ++j)
        for (const Entry& e : cols_[j]) resid[e.row] -= e.value * x_[j];

    basis_.assign(m_, 0);
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
        const std::size_t logical = n_ + r;
        if (resid[r] >= lower_[logical] && resid[r] <= upper_[logical]) {
            basis_[r] = logical;
            state_[logical] = VarState::Basic;
            x_[logical] = resid[r];
            binv_[r * m_ + r] = 1.0;
            continue;
        }
        const double sign = resid[r] >= 0.0 ? 1.0 : -1.0;
        art_row_.push_back(r);
        art_sign_.push_back(sign);
        lower_.push_back(0.0);
        upper_.push_back(kInf);
        x_.push_back(std::abs(resid[r]));
        state_.push_back(VarState::Basic);
        basis_[r] = x_.size() - 1;
        binv_[r * m_ + r] = sign;
    }

    cost2_.assign(num_total(), 0.0);
    double cmax = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        cost2_[j] = lp_.objective()[j] * scale_.col[j];
        cmax = std::max(cmax, std::abs(cost2_[j]));
    }
    const double cs = cmax > 0.0 ? pow2_round(cmax) : 1.0;
    for (std::size_t j = 0; j < n_; ++j) cost2_[j] /= cs;
}

void BoundedSimplex::refactor() {
    since_refactor_ = 0;
    if (m_ == 0) return;
    // Gauss-Jordan on [B | I] with partial pivoting, skipping zero multipliers.
    std::vector<double> b(m_ * m_, 0.0);
    std::vector<Entry> col;
    for (std::size_t p = 0; p < m_; ++p) {
        column(basis_[p], col);
        for (const Entry& e : col) b[e.row * m_ + p] = e.value;
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    for (std::size_t k = 0; k < m_; ++k) {
        std::size_t piv = k;
        double best = std::abs(b[k * m_ + k]);
        for (std::size_t r = k + 1; r < m_; ++r) {
            double a = std::abs(b[r * m_ + k]);
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (best < 1e-13) throw std::runtime_error("simplex: singular basis during refactorization");
        if (piv != k) {
            for (std::size_t c = 0; c < m_; ++c) {
                std::swap(b[k * m_ + c], b[piv * m_ + c]);
                std::swap(inv[k * m_ + c], inv[piv * m_ + c]);
            }
        }
        const double d = b[k * m_ + k];
        for (std::size_t c = 0; c < m_; ++c) {
            b[k * m_ + c] /= d;
            inv[k * m_ + c] /= d;
        }
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == k) continue;
            const double f = b[r * m_ + k];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < m_; ++c) {
                b[r * m_ + c] -= f * b[k * m_ + c];
                inv[r * m_ + c] -= f * inv[k * m_ + c];
            }
        }
    }
    // inv now maps row space to basis positions: B^{-1} with rows = positions.
    binv_ = std::move(inv);

    std::vector<double> resid = rhs_;
    std::vector<Entry> c;
    for (std::size_t j = 0; j < num_total(); ++j) {
        if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
        column(j, c);
        for (const Entry& e : c) resid[e.row] -= e.value * x_[j];
    }
    for (std::size_t p = 0; p < m_; ++p) {
        double v = 0.0;
        const double* row = &binv_[p * m_];
        for (std::size_t r = 0; r < m_; ++r) v += row[r] * resid[r];
        x_[basis_[p]] = v;
    }
}

void BoundedSimplex::compute_duals(const std::vector<double>& cost, std::vector<double>& y) const {
    y.assign(m_, 0.0);
    for (std::size_t p = 0; p < m_; ++p) {
        const double cb = cost[basis_[p]];
        if (cb == 0.0) continue;
        const double* row = &binv_[p * m_];
        for (std::size_t r = 0; r < m_; ++r) y[r] += cb * row[r];
    }
}

void BoundedSimplex::compute_alpha(std::size_t q, std::vector<double>& alpha) const {
    alpha.assign(m_, 0.0);
    std::vector<Entry> col;
    column(q, col);
    for (const Entry& e : col)
        for (std::size_t p = 0; p < m_; ++p) alpha[p] += binv_[p * m_ + e.row] * e.value;
}

void BoundedSimplex::pivot(std::size_t p, const std::vector<double>& alpha) {
    double* prow = &binv_[p * m_];
    const double inv = 1.0 / alpha[p];
    for (std::size_t r = 0; r < m_; ++r) prow[r] *= inv;
    for (std::size_t q = 0; q < m_; ++q) {
        if (q == p || alpha[q] == 0.0) continue;
        double* qrow = &binv_[q * m_];
        const double f = alpha[q];
        for (std::size_t r = 0; r < m_; ++r) qrow[r] -= f * prow[r];
    }
}

BoundedSimplex::PhaseResult BoundedSimplex::iterate(const std::vector<double>& cost, bool phase_one) {
    std::vector<double> y, alpha;
    bool bland = false;
    std::size_t stall = 0;
    int confirmations = 0;

    while (true) {
        if (iterations_ >= set_.max_iterations) return PhaseResult::IterationLimit;
        if (since_refactor_ >= set_.refactor_interval) refactor();

        compute_duals(cost, y);

        std::size_t q = num_total();
        double best_gain = 0.0;
        double dq = 0.0;
        for (std::size_t j = 0; j < num_total(); ++j) {
            if (state_[j] == VarState::Basic || lower_[j] == upper_[j]) continue;
            const double d = cost[j] - dot_column(y, j);
            bool candidate = (state_[j] == VarState::AtLower && d < -set_.optimality_tolerance) ||
                             (state_[j] == VarState::AtUpper && d > set_.optimality_tolerance);
            if (!candidate) continue;
            if (bland) {
                q = j;
                dq = d;
                break;
            }
            if (std::abs(d) > best_gain) {
                best_gain = std::abs(d);
                q = j;
                dq = d;
            }
        }

        if (q == num_total()) {
            // Confirm optimality on a fresh factorization before stopping.
            if (since_refactor_ == 0 || confirmations > 0) return PhaseResult::Optimal;
            refactor();
            ++confirmations;
            continue;
        }
        confirmations = 0;

        compute_alpha(q, alpha);
        const double dir = dq < 0.0 ? 1.0 : -1.0;

        // Ratio test. Entering variable's own range first (bound flip).
        double theta = upper_[q] - lower_[q];
        std::size_t leave = m_;
        constexpr double tie = 1e-12;
        for (std::size_t p = 0; p < m_; ++p) {
            if (std::abs(alpha[p]) <= set_.pivot_tolerance) continue;
            const std::size_t b = basis_[p];
            const double a = dir * alpha[p];
            double lim;
            if (a > 0.0) {
                if (!std::isfinite(lower_[b])) continue;
                lim = (x_[b] - lower_[b]) / a;
            } else {
                if (!std::isfinite(upper_[b])) continue;
                lim = (upper_[b] - x_[b]) / -a;
            }
            lim = std::max(lim, 0.0);
            if (lim < theta - tie) {
                theta = lim;
                leave = p;
            } else if (leave != m_ && lim <= theta + tie && b < basis_[leave]) {
                theta = std::min(theta, lim);
                leave = p;
            }
        }

        if (!std::isfinite(theta)) {
            if (phase_one) throw std::runtime_error("simplex: unbounded ray in phase one");
            ray_var_ = q;
            return PhaseResult::Unbounded;
        }

        const double improvement = std::abs(dq) * theta;
        x_[q] += dir * theta;
        for (std::size_t p = 0; p < m_; ++p)
            if (alpha[p] != 0.0) x_[basis_[p]] -= dir * theta * alpha[p];

        if (leave == m_) {
            state_[q] = dir > 0.0 ? VarState::AtUpper : VarState::AtLower;
            x_[q] = dir > 0.0 ? upper_[q] : lower_[q];
        } else {
            const std::size_t b = basis_[leave];
            const bool to_lower = dir * alpha[leave] > 0.0;
            state_[b] = to_lower ? VarState::AtLower : VarState::AtUpper;
            x_[b] = to_lower ? lower_[b] : upper_[b];
            if (is_artificial(b)) upper_[b] = 0.0;  // never re-enters
            basis_[leave] = q;
            state_[q] = VarState::Basic;
            pivot(leave, alpha);
            ++since_refactor_;
        }
        ++iterations_;

        if (improvement <= 1e-14) {
            if (++stall >= set_.stall_threshold) bland = true;
        } else {
            stall = 0;
        }
    }
}

std::vector<double> BoundedSimplex::unscaled_x() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        double v = x_[j] * scale_.col[j];
        const Bounds& b = lp_.bounds()[j];
        // Snap round-off across a bound.
        if (v < b.lower) v = b.lower;
        if (v > b.upper) v = b.upper;
        x[j] = v;
    }
    return x;
}

LpSolution BoundedSimplex::run() {
    lp_.validate();
    setup();

    LpSolution sol;
    std::vector<double> cost1(num_total(), 0.0);
    for (std::size_t j = n_ + m_; j < num_total(); ++j) cost1[j] = 1.0;

    auto finish = [&](SolveStatus status) {
        sol.status = status;
        sol.iterations = iterations_;
        sol.x = unscaled_x();
        sol.objective_value = lp_.evaluate_objective(sol.x);
        sol.max_primal_infeasibility = check_solution(lp_, sol.x).max_violation();
        return sol;
    };

    if (num_total() > n_ + m_) {
        PhaseResult r = iterate(cost1, true);
        sol.phase1_iterations = iterations_;
        if (r == PhaseResult::IterationLimit) {
            sol.feasible_point = false;
            return finish(SolveStatus::IterationLimit);
        }
        for (std::size_t a = 0; a < art_row_.size(); ++a)
            if (x_[n_ + m_ + a] > set_.primal_tolerance) sol.infeasible_rows.push_back(art_row_[a]);
        if (!sol.infeasible_rows.empty()) return finish(SolveStatus::Infeasible);
        for (std::size_t j = n_ + m_; j < num_total(); ++j) upper_[j] = 0.0;
    }

    cost2_.resize(num_total(), 0.0);
    PhaseResult r = iterate(cost2_, false);
    switch (r) {
        case PhaseResult::Optimal: return finish(SolveStatus::Optimal);
        case PhaseResult::IterationLimit:
            sol.feasible_point = true;
            return finish(SolveStatus::IterationLimit);
        case PhaseResult::Unbounded:
            if (ray_var_ < n_) sol.ray_vars.push_back(ray_var_);
            return finish(SolveStatus::Unbounded);
    }
    return sol;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolverSettings& settings) {
    return BoundedSimplex(lp, settings).run();
}

}  // namespace ccsplan
