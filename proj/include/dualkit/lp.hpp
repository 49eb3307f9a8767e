#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace dualkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Global comparison tolerances. Two reals are "equal" iff
// |a-b| <= max(atol, rtol*max(|a|,|b|)). atol is overridable (DUALKIT_ATOL).
namespace tol {
double atol();
double rtol();
void set_atol(double v);
}  // namespace tol

inline bool nearly_equal(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    const double diff = std::abs(a - b);
    return diff <= std::max(tol::atol(),
                            tol::rtol() * std::max(std::abs(a), std::abs(b)));
}

inline bool nearly_zero(double a) { return std::abs(a) <= tol::atol(); }

enum class ObjectiveSense { MINIMIZE, MAXIMIZE };
enum class ConstraintSense { LEQ, GEQ, EQ };

const char* to_string(ObjectiveSense s);
const char* to_string(ConstraintSense s);

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;

    bool operator==(const Variable&) const = default;
};

using SparseVec = std::map<std::string, double>;

// Drops entries with |coef| <= atol so graph edge sets are well defined.
SparseVec pruned(SparseVec coeffs);

struct LinearConstraint {
    std::string name;
    SparseVec coefficients;
    ConstraintSense sense = ConstraintSense::LEQ;
    double rhs = 0.0;

    bool operator==(const LinearConstraint&) const = default;
};

// Symbolic LP: min/max c^T x + k subject to linear rows and variable bounds.
// Values are immutable by convention: every rewrite returns a new program.
struct LinearProgram {
    ObjectiveSense objective_sense = ObjectiveSense::MINIMIZE;
    SparseVec objective;
    double objective_constant = 0.0;
    std::vector<Variable> variables;
    std::vector<LinearConstraint> constraints;

    bool operator==(const LinearProgram&) const = default;

    const Variable* find_variable(const std::string& name) const;
    const LinearConstraint* find_constraint(const std::string& name) const;
    int variable_index(const std::string& name) const;  // -1 if absent
    int constraint_index(const std::string& name) const;
};

struct Diagnostic {
    std::string invariant;  // short id of the violated rule
    std::string location;   // variable/constraint name or "objective"
    std::string message;
};

// Empty iff all model invariants hold.
std::vector<Diagnostic> validate(const LinearProgram& lp);

// Negates var's objective and row coefficients and maps bounds (l,u) -> (-u,-l).
LinearProgram negate_variable(const LinearProgram& lp, const std::string& var);

// Negates coefficients and rhs; LEQ<->GEQ swap, EQ stays EQ.
LinearProgram flip_constraint(const LinearProgram& lp, const std::string& con);

}  // namespace dualkit
