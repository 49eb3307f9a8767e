#include "dualkit/dualize.hpp"

namespace dualkit {

namespace {

enum class VarClass { NONNEG, NONPOS, FREE };

VarClass classify(const Variable& v) {
    if (nearly_zero(v.lower) && v.upper == kInf) return VarClass::NONNEG;
    if (v.lower == -kInf && nearly_zero(v.upper)) return VarClass::NONPOS;
    return VarClass::FREE;  // callers lift bounds first
}

// Finite non-sign bounds become explicit rows so they receive their own
// dual variables; sign bounds stay on the variable.
LinearProgram lift_bounds(const LinearProgram& lp) {
    LinearProgram out = lp;
    for (auto& v : out.variables) {
        if (std::isfinite(v.lower) && !nearly_zero(v.lower)) {
            LinearConstraint row;
            row.name = "lb_" + v.name;
            row.coefficients[v.name] = 1.0;
            row.sense = ConstraintSense::GEQ;
            row.rhs = v.lower;
            out.constraints.push_back(std::move(row));
            v.lower = -kInf;
        }
        if (std::isfinite(v.upper) && !(nearly_zero(v.upper) && v.lower == -kInf)) {
            LinearConstraint row;
            row.name = "ub_" + v.name;
            row.coefficients[v.name] = 1.0;
            row.sense = ConstraintSense::LEQ;
            row.rhs = v.upper;
            out.constraints.push_back(std::move(row));
            v.upper = kInf;
        }
    }
    return out;
}

struct DualRules {
    // dual variable bounds from the primal constraint sense
    Variable var_for(ConstraintSense s, const std::string& name) const {
        Variable v{name, -kInf, kInf};
        if (s == leq_like) v.lower = 0.0;
        else if (s == geq_like) v.upper = 0.0;
        return v;
    }
    ConstraintSense leq_like;  // primal sense giving y >= 0
    ConstraintSense geq_like;  // primal sense giving y <= 0
    // dual constraint sense from the primal variable class
    ConstraintSense con_for(VarClass c) const {
        if (c == VarClass::FREE) return ConstraintSense::EQ;
        return c == VarClass::NONNEG ? nonneg_sense
                                     : (nonneg_sense == ConstraintSense::LEQ
                                            ? ConstraintSense::GEQ
                                            : ConstraintSense::LEQ);
    }
    ConstraintSense nonneg_sense;
};

DualizationReport build_dual(const LinearProgram& lifted, const LinearProgram& original,
                             ObjectiveSense dual_sense, const DualRules& rules,
                             bool negate_dual_objective) {
    DualizationReport rep;
    LinearProgram& dual = rep.dual;
    dual.objective_sense = dual_sense;
    dual.objective_constant = original.objective_constant;
    // One dual variable per (lifted) primal row.
    for (const auto& c : lifted.constraints) {
        const std::string yname = "y_" + c.name;
        dual.variables.push_back(rules.var_for(c.sense, yname));
        const double b = negate_dual_objective ? -c.rhs : c.rhs;
        if (std::abs(b) > tol::atol()) dual.objective[yname] = b;
    }
    for (const auto& c : original.constraints)
        rep.variable_map[c.name] = "y_" + c.name;
    // One dual constraint per primal variable: sum_j a_ji y_j vs c_i.
    for (const auto& v : lifted.variables) {
        LinearConstraint row;
        row.name = "d_" + v.name;
        for (const auto& c : lifted.constraints)
            if (auto it = c.coefficients.find(v.name); it != c.coefficients.end())
                row.coefficients["y_" + c.name] = it->second;
        row.coefficients = pruned(std::move(row.coefficients));
        row.sense = rules.con_for(classify(v));
        double ci = 0.0;
        if (auto it = lifted.objective.find(v.name); it != lifted.objective.end())
            ci = it->second;
        row.rhs = ci;
        dual.constraints.push_back(std::move(row));
        rep.constraint_map[v.name] = "d_" + v.name;
    }
    return rep;
}

// Direct map for a MINIMIZE primal: y >= 0 for >= rows, y <= 0 for <= rows,
// free for equalities; dual row sense <= for x >= 0, >= for x <= 0, = for
// free x.
DualizationReport dualize_min_standard(const LinearProgram& lifted,
                                       const LinearProgram& original,
                                       bool negate_dual_objective) {
    DualRules rules;
    rules.leq_like = ConstraintSense::GEQ;   // >= rows give y >= 0
    rules.geq_like = ConstraintSense::LEQ;   // <= rows give y <= 0
    rules.nonneg_sense = ConstraintSense::LEQ;
    return build_dual(lifted, original, negate_dual_objective ? ObjectiveSense::MINIMIZE
                                                              : ObjectiveSense::MAXIMIZE,
                      rules, negate_dual_objective);
}

}  // namespace

DualizationReport dualize(const LinearProgram& lp, DualizationMethod method) {
    LinearProgram lifted = lift_bounds(lp);

    if (method == DualizationMethod::STANDARD_FORM) {
        if (lp.objective_sense == ObjectiveSense::MAXIMIZE) {
            // Negate the objective, dualize the minimization, negate back.
            LinearProgram inner = lifted;
            for (auto& [_, coef] : inner.objective) coef = -coef;
            inner.objective_constant = -inner.objective_constant;
            inner.objective_sense = ObjectiveSense::MINIMIZE;
            auto rep = dualize_min_standard(inner, lp, /*negate_dual_objective=*/true);
            rep.dual.objective_constant = lp.objective_constant;
            return rep;
        }
        return dualize_min_standard(lifted, lp, /*negate_dual_objective=*/false);
    }

    // SOB: sensible constraints give y >= 0, bizarre give y <= 0; sensible
    // variables give the dual problem's "sensible" row sense.
    DualRules rules;
    if (lp.objective_sense == ObjectiveSense::MAXIMIZE) {
        rules.leq_like = ConstraintSense::LEQ;
        rules.geq_like = ConstraintSense::GEQ;
        rules.nonneg_sense = ConstraintSense::GEQ;  // min dual: sensible rows are >=
        return build_dual(lifted, lp, ObjectiveSense::MINIMIZE, rules, false);
    }
    rules.leq_like = ConstraintSense::GEQ;
    rules.geq_like = ConstraintSense::LEQ;
    rules.nonneg_sense = ConstraintSense::LEQ;  // max dual: sensible rows are <=
    return build_dual(lifted, lp, ObjectiveSense::MAXIMIZE, rules, false);
}

DualizationReport dualize_checked(const LinearProgram& lp) {
    auto sf = dualize(lp, DualizationMethod::STANDARD_FORM);
    auto sob = dualize(lp, DualizationMethod::SOB);
    auto [d, path] = cged(sf.dual, sob.dual);
    if (d > tol::atol())
        throw MethodDisagreement(sf.dual, sob.dual, std::move(path));
    return sf;
}

}  // namespace dualkit
