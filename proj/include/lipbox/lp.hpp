#pragma once

#include <string>
#include <vector>

#include "lipbox/rational.hpp"

namespace lipbox {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct Constraint {
    Vec coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

// Variables are nonnegative unless flagged free.
struct LinearProgram {
    Sense sense = Sense::Minimize;
    Vec objective;
    std::vector<Constraint> constraints;
    std::vector<bool> free_variables;

    explicit LinearProgram(std::size_t variables = 0, Sense s = Sense::Minimize)
        : sense(s), objective(variables, Rational(0)) {}

    std::size_t variable_count() const { return objective.size(); }
    bool is_free(std::size_t j) const { return j < free_variables.size() && free_variables[j]; }
    void set_free(std::size_t j);
    void add(Vec coefficients, Relation relation, Rational rhs);
};

// Duals follow the Lagrangian convention: value == rhs . duals, and for a
// minimization a <= row has dual <= 0 and a >= row dual >= 0 (signs flip for
// maximization).
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    Vec primal;
    Vec duals;
};

LpSolution solve_lp(const LinearProgram& lp);

struct LpCheck {
    bool primal_feasible = false;
    bool dual_feasible = false;
    bool values_agree = false;
    std::string detail;
    bool ok() const { return primal_feasible && dual_feasible && values_agree; }
};

// Re-checks an optimal solution by substitution: primal rows, dual signs and
// reduced costs, and equality of both objective values.
LpCheck check_solution(const LinearProgram& lp, const LpSolution& solution);

std::string to_string(LpStatus status);

}  // namespace lipbox
