#pragma once

#include <stdexcept>

#include "dualkit/graph.hpp"
#include "dualkit/simplex.hpp"

namespace dualkit {

// Edit costs. Substitution is 0 when the features agree within the global
// tolerance and 1 otherwise, which makes "distance 0" mean "data-equal up
// to permutation".
struct CostModel {
    double node_indel = 1.0;
    double edge_indel = 1.0;

    double node_substitute(const std::vector<double>& a, const std::vector<double>& b) const;
    double edge_substitute(double a, double b) const;
};

struct EditOp {
    enum class Type { INSERT, DELETE, SUBSTITUTE };
    enum class Side { VAR, CON, EDGE };
    Type type;
    Side side;
    std::string a_id;  // empty for insertions
    std::string b_id;  // empty for deletions
    double cost;
};

struct EditPath {
    std::vector<EditOp> operations;  // zero-cost substitutions omitted
    double total = 0.0;
};

struct GedBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultGedBudget = 60;

// Exact minimum-cost edit path via best-first search over partial node
// assignments with an admissible bound (feature-matching plus pending-edge
// counts). Sides never cross-match. Throws GedBudgetExceeded when the
// combined node count exceeds `budget`.
EditPath ged(const BipartiteLpGraph& a, const BipartiteLpGraph& b,
             const CostModel& cost = {}, int budget = kDefaultGedBudget);

// Canonical graph edit distance: GED between the canonical graphs of the
// two programs. Distance 0 (within atol) defines equivalence.
std::pair<double, EditPath> cged(const LinearProgram& a, const LinearProgram& b,
                                 int budget = 200);

struct NgedOptions {
    // Baseline canonicalization flips single-sided inequalities to a fixed
    // sense; the EOR-style variant leaves senses untouched.
    bool normalize_inequalities = true;
    ConstraintSense target_sense = ConstraintSense::GEQ;
};

// Size-normalized GED on NGED_COMPAT graphs, in [0,1].
double nged(const LinearProgram& a, const LinearProgram& b,
            const NgedOptions& opts = {}, int budget = 200);

// Optimal-value comparison ("execution accuracy"). Matches when both solve
// to OPTIMAL with values within tol, or share a non-OPTIMAL status.
struct ObjMatch {
    bool match = false;
    bool undecided = false;  // an ITER_LIMIT surfaced
    SolveStatus status_a = SolveStatus::ITER_LIMIT;
    SolveStatus status_b = SolveStatus::ITER_LIMIT;
};
ObjMatch obj_match(const LinearProgram& a, const LinearProgram& b, double tol = 1e-6);

struct MetricVerdict {
    double cged = 0.0;
    double nged = 0.0;
    bool obj = false;
    bool equivalent = false;
    EditPath edit_path;
    SolveStatus status_candidate = SolveStatus::ITER_LIMIT;
    SolveStatus status_truth = SolveStatus::ITER_LIMIT;
    bool cged_undecided = false;
    bool nged_undecided = false;
    bool obj_undecided = false;
};

MetricVerdict verdict(const LinearProgram& candidate, const LinearProgram& truth,
                      int budget = 200);

}  // namespace dualkit
