#include "dualkit/canonicalize.hpp"

#include <optional>
#include <stdexcept>

namespace dualkit {

namespace {

using Kind = RewriteStep::Kind;

bool is_sign_lower(const Variable& v) {
    return nearly_zero(v.lower) && v.upper == kInf;
}
bool is_sign_upper(const Variable& v) {
    return v.lower == -kInf && nearly_zero(v.upper);
}
bool is_free(const Variable& v) { return v.lower == -kInf && v.upper == kInf; }

// Slack candidate: zero objective coefficient, a single nonzero coefficient
// in an equality row, and a one-sided sign bound with finite side 0.
std::optional<RewriteStep> find_slack(const LinearProgram& lp) {
    for (const auto& v : lp.variables) {
        if (lp.objective.count(v.name)) continue;
        if (!is_sign_lower(v) && !is_sign_upper(v)) continue;
        const LinearConstraint* row = nullptr;
        int appearances = 0;
        for (const auto& c : lp.constraints)
            if (c.coefficients.count(v.name)) {
                ++appearances;
                row = &c;
            }
        if (appearances != 1 || row->sense != ConstraintSense::EQ) continue;
        const double alpha = row->coefficients.at(v.name);
        // a^T x + alpha*s = b with s on one side of 0 implies the inequality
        // direction below.
        const bool leq = (alpha > 0) == is_sign_lower(v);
        return RewriteStep{Kind::ELIMINATE_SLACK, v.name, row->name, leq ? "<=" : ">="};
    }
    return std::nullopt;
}

}  // namespace

bool has_slack_variable(const LinearProgram& lp) { return find_slack(lp).has_value(); }

LinearProgram apply_step(const LinearProgram& lp, const RewriteStep& step) {
    LinearProgram out = lp;
    switch (step.kind) {
        case Kind::ELIMINATE_SLACK: {
            int vi = out.variable_index(step.target);
            int ci = out.constraint_index(step.name1);
            if (vi < 0 || ci < 0) throw std::invalid_argument("eliminate_slack: unknown name");
            LinearConstraint& c = out.constraints[ci];
            c.coefficients.erase(step.target);
            c.sense = step.name2 == "<=" ? ConstraintSense::LEQ : ConstraintSense::GEQ;
            out.variables.erase(out.variables.begin() + vi);
            break;
        }
        case Kind::NEGATE_OBJECTIVE: {
            out.objective_sense = out.objective_sense == ObjectiveSense::MINIMIZE
                                      ? ObjectiveSense::MAXIMIZE
                                      : ObjectiveSense::MINIMIZE;
            for (auto& [_, coef] : out.objective) coef = -coef;
            out.objective_constant = -out.objective_constant;
            break;
        }
        case Kind::NEGATE_VARIABLE:
            out = negate_variable(out, step.target);
            break;
        case Kind::MOVE_LOWER_BOUND: {
            int vi = out.variable_index(step.target);
            if (vi < 0) throw std::invalid_argument("move_lower_bound: unknown variable");
            LinearConstraint row;
            row.name = step.name1;
            row.coefficients[step.target] = 1.0;
            row.sense = ConstraintSense::GEQ;
            row.rhs = out.variables[vi].lower;
            out.variables[vi].lower = -kInf;
            out.constraints.push_back(std::move(row));
            break;
        }
        case Kind::MOVE_UPPER_BOUND: {
            int vi = out.variable_index(step.target);
            if (vi < 0) throw std::invalid_argument("move_upper_bound: unknown variable");
            LinearConstraint row;
            row.name = step.name1;
            row.coefficients[step.target] = -1.0;
            row.sense = ConstraintSense::GEQ;
            row.rhs = -out.variables[vi].upper;
            out.variables[vi].upper = kInf;
            out.constraints.push_back(std::move(row));
            break;
        }
        case Kind::SPLIT_VARIABLE: {
            int vi = out.variable_index(step.target);
            if (vi < 0) throw std::invalid_argument("split_variable: unknown variable");
            out.variables[vi] = {step.name1, 0.0, kInf};
            out.variables.insert(out.variables.begin() + vi + 1, {step.name2, 0.0, kInf});
            auto split = [&](SparseVec& coeffs) {
                auto it = coeffs.find(step.target);
                if (it == coeffs.end()) return;
                const double a = it->second;
                coeffs.erase(it);
                coeffs[step.name1] = a;
                coeffs[step.name2] = -a;
            };
            split(out.objective);
            for (auto& c : out.constraints) split(c.coefficients);
            break;
        }
        case Kind::FLIP_CONSTRAINT:
            out = flip_constraint(out, step.target);
            break;
        case Kind::SPLIT_EQUALITY: {
            int ci = out.constraint_index(step.target);
            if (ci < 0) throw std::invalid_argument("split_equality: unknown constraint");
            LinearConstraint& c = out.constraints[ci];
            c.sense = ConstraintSense::GEQ;
            LinearConstraint twin = c;
            twin.name = step.name1;
            for (auto& [_, coef] : twin.coefficients) coef = -coef;
            twin.rhs = -twin.rhs;
            out.constraints.insert(out.constraints.begin() + ci + 1, std::move(twin));
            break;
        }
        case Kind::MATERIALIZE_BOUND: {
            if (out.variable_index(step.target) < 0)
                throw std::invalid_argument("materialize_bound: unknown variable");
            LinearConstraint row;
            row.name = step.name1;
            row.coefficients[step.target] = 1.0;
            row.sense = ConstraintSense::GEQ;
            row.rhs = 0.0;
            out.constraints.push_back(std::move(row));
            break;
        }
    }
    return out;
}

LinearProgram replay(const LinearProgram& lp, const std::vector<RewriteStep>& steps) {
    LinearProgram out = lp;
    for (const auto& s : steps) out = apply_step(out, s);
    return out;
}

namespace {

// Runs one pipeline phase: repeatedly asks `next` for a step until none.
template <typename F>
void run_phase(LinearProgram& lp, std::vector<RewriteStep>& steps, F next, size_t cap) {
    for (size_t i = 0; i <= cap; ++i) {
        auto s = next(lp);
        if (!s) return;
        if (i == cap) throw std::logic_error("canonicalize: rewrite fixpoint not reached");
        steps.push_back(*s);
        lp = apply_step(lp, *s);
    }
}

std::optional<RewriteStep> next_slack(const LinearProgram& lp) { return find_slack(lp); }

std::optional<RewriteStep> next_upper_sign_flip(const LinearProgram& lp) {
    for (const auto& v : lp.variables) {
        if (v.lower == -kInf && std::isfinite(v.upper))
            return RewriteStep{Kind::NEGATE_VARIABLE, v.name};
        // [l, 0] mirrors [0, -l]; negating keeps the sign bound on the zero side
        if (std::isfinite(v.lower) && !nearly_zero(v.lower) && v.lower < 0.0 &&
            nearly_zero(v.upper))
            return RewriteStep{Kind::NEGATE_VARIABLE, v.name};
    }
    return std::nullopt;
}

std::optional<RewriteStep> next_bound_move(const LinearProgram& lp) {
    for (const auto& v : lp.variables) {
        const bool lo_fin = std::isfinite(v.lower), up_fin = std::isfinite(v.upper);
        // [0, u] keeps its sign bound; only the upper side becomes a row
        if (lo_fin && up_fin && nearly_zero(v.lower))
            return RewriteStep{Kind::MOVE_UPPER_BOUND, v.name, "ub_" + v.name};
        if (lo_fin && up_fin)
            return RewriteStep{Kind::MOVE_LOWER_BOUND, v.name, "lb_" + v.name};
        if (lo_fin && !nearly_zero(v.lower))
            return RewriteStep{Kind::MOVE_LOWER_BOUND, v.name, "lb_" + v.name};
        if (up_fin)  // only reachable when lower is -inf
            return RewriteStep{Kind::MOVE_UPPER_BOUND, v.name, "ub_" + v.name};
    }
    return std::nullopt;
}

std::optional<RewriteStep> next_split(const LinearProgram& lp) {
    for (const auto& v : lp.variables)
        if (is_free(v))
            return RewriteStep{Kind::SPLIT_VARIABLE, v.name, v.name + "+", v.name + "-"};
    return std::nullopt;
}

std::optional<RewriteStep> next_sense_fix(const LinearProgram& lp) {
    for (const auto& c : lp.constraints) {
        if (c.sense == ConstraintSense::LEQ)
            return RewriteStep{Kind::FLIP_CONSTRAINT, c.name};
        if (c.sense == ConstraintSense::EQ)
            return RewriteStep{Kind::SPLIT_EQUALITY, c.name, c.name + "_neg"};
    }
    return std::nullopt;
}

std::optional<RewriteStep> next_materialize(const LinearProgram& lp) {
    for (const auto& v : lp.variables) {
        const std::string row = "bnd_" + v.name;
        if (lp.find_constraint(row)) continue;
        return RewriteStep{Kind::MATERIALIZE_BOUND, v.name, row};
    }
    return std::nullopt;
}

std::vector<RewriteStep> pipeline(LinearProgram& lp) {
    std::vector<RewriteStep> steps;
    run_phase(lp, steps, next_slack, lp.variables.size());
    if (lp.objective_sense == ObjectiveSense::MAXIMIZE) {
        RewriteStep s{Kind::NEGATE_OBJECTIVE};
        steps.push_back(s);
        lp = apply_step(lp, s);
    }
    run_phase(lp, steps, next_upper_sign_flip, lp.variables.size());
    run_phase(lp, steps, next_bound_move, 2 * lp.variables.size());
    run_phase(lp, steps, next_split, lp.variables.size());
    run_phase(lp, steps, next_sense_fix, 2 * lp.constraints.size() + 2 * lp.variables.size());
    run_phase(lp, steps, next_materialize, lp.variables.size() + 1);
    return steps;
}

}  // namespace

LinearProgram eliminate_slacks(const LinearProgram& lp) {
    LinearProgram out = lp;
    std::vector<RewriteStep> steps;
    run_phase(out, steps, next_slack, lp.variables.size());
    return out;
}

LinearProgram flip_upper_sign_bounds(const LinearProgram& lp) {
    LinearProgram out = lp;
    std::vector<RewriteStep> steps;
    run_phase(out, steps, next_upper_sign_flip, lp.variables.size());
    return out;
}

LinearProgram split_nonstandard_vars(const LinearProgram& lp) {
    LinearProgram out = lp;
    std::vector<RewriteStep> steps;
    run_phase(out, steps, next_bound_move, 2 * lp.variables.size());
    run_phase(out, steps, next_split, out.variables.size());
    return out;
}

LinearProgram normalize_senses(const LinearProgram& lp) {
    LinearProgram out = lp;
    std::vector<RewriteStep> steps;
    if (out.objective_sense == ObjectiveSense::MAXIMIZE)
        out = apply_step(out, {Kind::NEGATE_OBJECTIVE});
    run_phase(out, steps, next_sense_fix, 2 * lp.constraints.size());
    return out;
}

CanonicalLp canonicalize(const LinearProgram& lp) {
    CanonicalLp out;
    out.lp = lp;
    out.provenance = pipeline(out.lp);
    return out;
}

}  // namespace dualkit
