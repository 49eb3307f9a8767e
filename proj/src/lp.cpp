#include "dualkit/lp.hpp"

#include <cstdlib>
#include <set>
#include <stdexcept>

namespace dualkit {

namespace tol {
namespace {
double g_atol = 1e-8;
}
double atol() { return g_atol; }
double rtol() { return 1e-6; }
void set_atol(double v) { g_atol = v; }
}  // namespace tol

const char* to_string(ObjectiveSense s) {
    return s == ObjectiveSense::MINIMIZE ? "min" : "max";
}

const char* to_string(ConstraintSense s) {
    switch (s) {
        case ConstraintSense::LEQ: return "<=";
        case ConstraintSense::GEQ: return ">=";
        default: return "=";
    }
}

SparseVec pruned(SparseVec coeffs) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (std::abs(it->second) <= tol::atol())
            it = coeffs.erase(it);
        else
            ++it;
    }
    return coeffs;
}

const Variable* LinearProgram::find_variable(const std::string& name) const {
    for (const auto& v : variables)
        if (v.name == name) return &v;
    return nullptr;
}

const LinearConstraint* LinearProgram::find_constraint(const std::string& name) const {
    for (const auto& c : constraints)
        if (c.name == name) return &c;
    return nullptr;
}

int LinearProgram::variable_index(const std::string& name) const {
    for (size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    return -1;
}

int LinearProgram::constraint_index(const std::string& name) const {
    for (size_t i = 0; i < constraints.size(); ++i)
        if (constraints[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<Diagnostic> validate(const LinearProgram& lp) {
    std::vector<Diagnostic> out;
    auto bad = [&](std::string inv, std::string loc, std::string msg) {
        out.push_back({std::move(inv), std::move(loc), std::move(msg)});
    };

    std::set<std::string> var_names;
    for (const auto& v : lp.variables) {
        if (!var_names.insert(v.name).second)
            bad("unique-variable-name", v.name, "duplicate variable name");
        if (std::isnan(v.lower) || std::isnan(v.upper))
            bad("finite-bounds", v.name, "NaN bound");
        if (v.lower > v.upper)
            bad("bound-order", v.name, "lower bound exceeds upper bound");
        if ((std::isinf(v.lower) && v.lower > 0) ||
            (std::isinf(v.upper) && v.upper < 0))
            bad("bound-sign", v.name, "infinite bound of the wrong sign");
    }

    auto check_coeffs = [&](const SparseVec& coeffs, const std::string& loc) {
        for (const auto& [name, coef] : coeffs) {
            if (!var_names.count(name))
                bad("declared-variable", loc, "references undeclared variable '" + name + "'");
            if (!std::isfinite(coef))
                bad("finite-coefficient", loc, "non-finite coefficient on '" + name + "'");
            if (std::abs(coef) <= tol::atol())
                bad("no-explicit-zero", loc, "explicit zero coefficient on '" + name + "'");
        }
    };

    check_coeffs(lp.objective, "objective");
    if (!std::isfinite(lp.objective_constant))
        bad("finite-coefficient", "objective", "non-finite objective constant");

    std::set<std::string> con_names;
    for (const auto& c : lp.constraints) {
        if (!con_names.insert(c.name).second)
            bad("unique-constraint-name", c.name, "duplicate constraint name");
        check_coeffs(c.coefficients, c.name);
        if (!std::isfinite(c.rhs))
            bad("finite-coefficient", c.name, "non-finite right-hand side");
    }
    return out;
}

LinearProgram negate_variable(const LinearProgram& lp, const std::string& var) {
    LinearProgram out = lp;
    int idx = out.variable_index(var);
    if (idx < 0) throw std::invalid_argument("negate_variable: unknown variable '" + var + "'");
    Variable& v = out.variables[idx];
    const double l = v.lower, u = v.upper;
    v.lower = -u;
    v.upper = -l;
    if (auto it = out.objective.find(var); it != out.objective.end())
        it->second = -it->second;
    for (auto& c : out.constraints)
        if (auto it = c.coefficients.find(var); it != c.coefficients.end())
            it->second = -it->second;
    return out;
}

LinearProgram flip_constraint(const LinearProgram& lp, const std::string& con) {
    LinearProgram out = lp;
    int idx = out.constraint_index(con);
    if (idx < 0) throw std::invalid_argument("flip_constraint: unknown constraint '" + con + "'");
    LinearConstraint& c = out.constraints[idx];
    for (auto& [_, coef] : c.coefficients) coef = -coef;
    c.rhs = -c.rhs;
    if (c.sense == ConstraintSense::LEQ)
        c.sense = ConstraintSense::GEQ;
    else if (c.sense == ConstraintSense::GEQ)
        c.sense = ConstraintSense::LEQ;
    return out;
}

}  // namespace dualkit
