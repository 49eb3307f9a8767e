#pragma once

#include "dualkit/lp.hpp"

namespace dualkit {

// One elementary rewrite. Steps carry enough data to be replayed on the
// original program; canonicalize() itself is implemented as a fold over
// apply_step, so replaying the provenance reproduces the output exactly.
struct RewriteStep {
    enum class Kind {
        ELIMINATE_SLACK,    // target=slack var, name1=equality row, name2="<="|">="
        NEGATE_OBJECTIVE,   // flip sense, negate objective coefficients and constant
        NEGATE_VARIABLE,    // target=var
        MOVE_LOWER_BOUND,   // target=var, name1=new row (x >= l), lower becomes -inf
        MOVE_UPPER_BOUND,   // target=var, name1=new row (-x >= -u), upper becomes +inf
        SPLIT_VARIABLE,     // target=free var, name1=positive part, name2=negative part
        FLIP_CONSTRAINT,    // target=row
        SPLIT_EQUALITY,     // target=EQ row (becomes >=), name1=negated twin row
        MATERIALIZE_BOUND,  // target=var with [0,inf), name1=new row (x >= 0)
    };
    Kind kind;
    std::string target;
    std::string name1;
    std::string name2;

    bool operator==(const RewriteStep&) const = default;
};

struct CanonicalLp {
    LinearProgram lp;
    std::vector<RewriteStep> provenance;
};

LinearProgram apply_step(const LinearProgram& lp, const RewriteStep& step);
LinearProgram replay(const LinearProgram& lp, const std::vector<RewriteStep>& steps);

// Removes slack variables until fixpoint. A slack has zero objective
// coefficient, exactly one nonzero coefficient sitting in an equality row,
// and a one-sided sign bound with finite side 0.
LinearProgram eliminate_slacks(const LinearProgram& lp);

// Variables bounded (-inf, u] with u finite are negated so the bound reads
// [-u, +inf).
LinearProgram flip_upper_sign_bounds(const LinearProgram& lp);

// Double-sided finite bounds move into explicit rows and the variable is
// freed; finite nonzero lower bounds likewise; every free variable is then
// split as a difference of positives.
LinearProgram split_nonstandard_vars(const LinearProgram& lp);

// Objective sense to MINIMIZE, LEQ rows flipped to GEQ, equalities split
// into GEQ pairs.
LinearProgram normalize_senses(const LinearProgram& lp);

// Full pipeline; output is minimization, all-GEQ, nonnegative variables
// with their sign bounds materialized as rows. Idempotent.
CanonicalLp canonicalize(const LinearProgram& lp);

// Slack detection predicate used by eliminate_slacks; exposed so tests can
// assert slack-freeness of canonical output.
bool has_slack_variable(const LinearProgram& lp);

}  // namespace dualkit
