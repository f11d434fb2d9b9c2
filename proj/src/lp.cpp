#include "lipbox/lp.hpp"

#include <limits>
#include <optional>
#include <utility>

#include "lipbox/error.hpp"
#include "lipbox/linalg.hpp"

namespace lipbox {

void LinearProgram::set_free(std::size_t j) {
    if (free_variables.size() < objective.size()) free_variables.resize(objective.size(), false);
    free_variables.at(j) = true;
}

void LinearProgram::add(Vec coefficients, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

std::string to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
// Consecutive degenerate pivots tolerated under largest-coefficient pricing
// before switching to Bland's rule for the rest of the solve.
constexpr std::size_t kDegenerateStreak = 16;

// Two-phase tableau simplex on  min c.x  s.t.  A x = b, x >= 0, b >= 0.
class Tableau {
public:
    Tableau(std::vector<Vec> rows, Vec rhs, std::size_t structural, std::vector<std::size_t> basis,
            std::vector<bool> artificial)
        : t_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), artificial_(std::move(artificial)),
          structural_(structural) {
        (void)structural_;
    }

    std::size_t rows() const { return t_.size(); }
    std::size_t cols() const { return artificial_.size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Vec& rhs() const { return rhs_; }
    const std::vector<std::size_t>& live_rows() const { return live_; }

    // Returns false when unbounded.
    bool optimize(const Vec& cost, bool allow_artificial) {
        reduced_ = cost;
        for (std::size_t i = 0; i < rows(); ++i) {
            const Rational cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < cols(); ++j) {
                if (t_[i][j] != 0) reduced_[j] -= cb * t_[i][j];
            }
        }
        bool bland = false;
        std::size_t degenerate = 0;
        for (;;) {
            std::size_t enter = kNone;
            for (std::size_t j = 0; j < cols(); ++j) {
                if (!allow_artificial && artificial_[j]) continue;
                if (reduced_[j] >= 0) continue;
                if (enter == kNone) {
                    enter = j;
                    if (bland) break;
                } else if (reduced_[j] < reduced_[enter]) {
                    enter = j;
                }
            }
            if (enter == kNone) return true;
            std::size_t leave = kNone;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = rhs_[i] / t_[i][enter];
                if (leave == kNone || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == kNone) return false;
            if (best_ratio == 0) {
                if (++degenerate >= kDegenerateStreak) bland = true;
            } else {
                degenerate = 0;
            }
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Vec& pr = t_[r];
        const Rational inv = 1 / pr[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < cols(); ++j) {
            if (pr[j] != 0) {
                pr[j] *= inv;
                nz.push_back(j);
            }
        }
        rhs_[r] *= inv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const Rational f = t_[i][c];
            if (f == 0) continue;
            for (std::size_t j : nz) t_[i][j] -= f * pr[j];
            t_[i][c] = 0;
            if (rhs_[r] != 0) rhs_[i] -= f * rhs_[r];
        }
        if (!reduced_.empty()) {
            const Rational f = reduced_[c];
            if (f != 0) {
                for (std::size_t j : nz) reduced_[j] -= f * pr[j];
                reduced_[c] = 0;
            }
        }
        basis_[r] = c;
    }

    // Pivots basic artificials (at level zero) out of the basis; rows where this
    // is impossible are redundant and removed.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows();) {
            if (!artificial_[basis_[i]]) {
                ++i;
                continue;
            }
            std::size_t col = kNone;
            for (std::size_t j = 0; j < cols(); ++j) {
                if (!artificial_[j] && t_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col != kNone) {
                reduced_.clear();
                pivot(i, col);
                ++i;
            } else {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    void init_live() {
        live_.resize(rows());
        for (std::size_t i = 0; i < rows(); ++i) live_[i] = i;
    }

private:
    std::vector<Vec> t_;
    Vec rhs_;
    std::vector<std::size_t> basis_;
    std::vector<bool> artificial_;
    std::size_t structural_;
    Vec reduced_;
    std::vector<std::size_t> live_;  // original standard-form row of each tableau row
};

void validate(const LinearProgram& lp) {
    const std::size_t n = lp.variable_count();
    if (lp.free_variables.size() > n) throw InvalidInput("malformed program: free-variable flags exceed variable count");
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        if (lp.constraints[i].coefficients.size() != n) {
            throw InvalidInput("malformed program: row " + std::to_string(i) + " has width " +
                               std::to_string(lp.constraints[i].coefficients.size()) + ", expected " +
                               std::to_string(n));
        }
    }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    validate(lp);
    const std::size_t n = lp.variable_count();
    const std::size_t m = lp.constraints.size();
    const bool maximize = lp.sense == Sense::Maximize;

    // Column layout: structural (free variables split in two), then one slack
    // per inequality, then artificials.
    std::vector<std::size_t> pos_col(n), neg_col(n, kNone);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = ncols++;
        if (lp.is_free(j)) neg_col[j] = ncols++;
    }
    const std::size_t structural = ncols;
    std::vector<std::size_t> slack_col(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.constraints[i].relation != Relation::Equal) slack_col[i] = ncols++;
    }
    std::vector<int> sign(m, 1);
    std::vector<bool> needs_artificial(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        sign[i] = c.rhs < 0 ? -1 : 1;
        const int slack_sign = c.relation == Relation::LessEqual ? 1 : (c.relation == Relation::GreaterEqual ? -1 : 0);
        needs_artificial[i] = slack_sign * sign[i] != 1;
    }
    std::vector<std::size_t> art_col(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
        if (needs_artificial[i]) art_col[i] = ncols++;
    }

    std::vector<Vec> rows(m, Vec(ncols, Rational(0)));
    Vec rhs(m);
    std::vector<std::size_t> basis(m);
    std::vector<bool> artificial(ncols, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        const Rational s = sign[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (c.coefficients[j] == 0) continue;
            rows[i][pos_col[j]] = s * c.coefficients[j];
            if (neg_col[j] != kNone) rows[i][neg_col[j]] = -s * c.coefficients[j];
        }
        if (slack_col[i] != kNone) rows[i][slack_col[i]] = c.relation == Relation::LessEqual ? s : Rational(-s);
        rhs[i] = s * c.rhs;
        if (art_col[i] != kNone) {
            rows[i][art_col[i]] = 1;
            artificial[art_col[i]] = true;
            basis[i] = art_col[i];
        } else {
            basis[i] = slack_col[i];
        }
    }
    const std::vector<Vec> original_rows = rows;

    Vec cost(ncols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        const Rational cj = maximize ? Rational(-lp.objective[j]) : lp.objective[j];
        cost[pos_col[j]] = cj;
        if (neg_col[j] != kNone) cost[neg_col[j]] = -cj;
    }

    Tableau tab(std::move(rows), std::move(rhs), structural, std::move(basis), artificial);
    tab.init_live();

    LpSolution sol;
    bool any_artificial = false;
    for (bool a : artificial) any_artificial = any_artificial || a;
    if (any_artificial) {
        Vec phase1(ncols, Rational(0));
        for (std::size_t j = 0; j < ncols; ++j) {
            if (artificial[j]) phase1[j] = 1;
        }
        tab.optimize(phase1, true);
        Rational infeasibility = 0;
        for (std::size_t i = 0; i < tab.rows(); ++i) {
            if (artificial[tab.basis()[i]]) infeasibility += tab.rhs()[i];
        }
        if (infeasibility > 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        tab.expel_artificials();
    }
    if (!tab.optimize(cost, false)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    Vec values(ncols, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) values[tab.basis()[i]] = tab.rhs()[i];
    sol.status = LpStatus::Optimal;
    sol.primal.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        sol.primal[j] = values[pos_col[j]];
        if (neg_col[j] != kNone) sol.primal[j] -= values[neg_col[j]];
    }
    sol.value = dot(lp.objective, sol.primal);

    // Duals of the standard form: B^T y = c_B over the non-redundant rows.
    const auto& live = tab.live_rows();
    const std::size_t k = live.size();
    Matrix bt(k, k);
    Vec cb(k);
    for (std::size_t col = 0; col < k; ++col) {
        const std::size_t var = tab.basis()[col];
        cb[col] = cost[var];
        for (std::size_t r = 0; r < k; ++r) bt(col, r) = original_rows[live[r]][var];
    }
    std::optional<Vec> y = solve(bt, cb);
    if (!y) throw std::logic_error("simplex produced a singular basis");
    sol.duals.assign(m, Rational(0));
    for (std::size_t r = 0; r < k; ++r) {
        Rational d = (*y)[r] * sign[live[r]];
        sol.duals[live[r]] = maximize ? Rational(-d) : d;
    }
    return sol;
}

LpCheck check_solution(const LinearProgram& lp, const LpSolution& s) {
    LpCheck check;
    if (s.status != LpStatus::Optimal) {
        check.detail = "solution is not optimal";
        return check;
    }
    const std::size_t n = lp.variable_count();
    const std::size_t m = lp.constraints.size();
    if (s.primal.size() != n || s.duals.size() != m) {
        check.detail = "certificate has wrong length";
        return check;
    }
    const bool maximize = lp.sense == Sense::Maximize;

    check.primal_feasible = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (!lp.is_free(j) && s.primal[j] < 0) {
            check.primal_feasible = false;
            check.detail = "variable " + std::to_string(j) + " is negative";
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        const Rational lhs = dot(c.coefficients, s.primal);
        const bool ok = c.relation == Relation::LessEqual ? lhs <= c.rhs
                        : c.relation == Relation::GreaterEqual ? lhs >= c.rhs
                                                                : lhs == c.rhs;
        if (!ok) {
            check.primal_feasible = false;
            check.detail = "row " + std::to_string(i) + " violated";
        }
    }

    check.dual_feasible = true;
    for (std::size_t i = 0; i < m; ++i) {
        const Rational& y = s.duals[i];
        Relation rel = lp.constraints[i].relation;
        // For a minimization, <= rows carry nonpositive multipliers.
        bool ok = true;
        if (rel == Relation::LessEqual) ok = maximize ? y >= 0 : y <= 0;
        if (rel == Relation::GreaterEqual) ok = maximize ? y <= 0 : y >= 0;
        if (!ok) {
            check.dual_feasible = false;
            check.detail = "dual " + std::to_string(i) + " has the wrong sign";
        }
    }
    Vec reduced = lp.objective;
    for (std::size_t i = 0; i < m; ++i) {
        if (s.duals[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) reduced[j] -= s.duals[i] * lp.constraints[i].coefficients[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
        bool ok = lp.is_free(j) ? reduced[j] == 0 : (maximize ? reduced[j] <= 0 : reduced[j] >= 0);
        if (!ok) {
            check.dual_feasible = false;
            check.detail = "reduced cost " + std::to_string(j) + " has the wrong sign";
        }
    }

    Rational dual_value = 0;
    for (std::size_t i = 0; i < m; ++i) dual_value += s.duals[i] * lp.constraints[i].rhs;
    const Rational primal_value = dot(lp.objective, s.primal);
    check.values_agree = primal_value == dual_value && primal_value == s.value;
    if (!check.values_agree) check.detail = "primal and dual objective values differ";
    return check;
}

}  // namespace lipbox
