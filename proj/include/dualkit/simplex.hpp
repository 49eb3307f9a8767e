#pragma once

#include <map>

#include "dualkit/lp.hpp"

namespace dualkit {

enum class SolveStatus { OPTIMAL, INFEASIBLE, UNBOUNDED, ITER_LIMIT };

const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::ITER_LIMIT;
    double value = 0.0;                    // defined iff OPTIMAL
    std::map<std::string, double> point;   // defined iff OPTIMAL
};

// Two-phase dense primal simplex with Bland's rule. Free variables are
// split, non-sign bounds become rows, inequalities are slacked. MAXIMIZE
// is solved by negation. ITER_LIMIT after 10*(m+n) pivots per phase.
SolveResult solve(const LinearProgram& lp);

// Independent oracle for n <= 3: enumerates intersections of constraint
// boundaries inside a large box; unboundedness is detected by comparing
// the optima of two box sizes. Throws on dimension > 3.
SolveResult solve_by_vertex_enumeration(const LinearProgram& lp);

}  // namespace dualkit
