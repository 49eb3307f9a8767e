#pragma once

#include <functional>
#include <random>

#include "dualkit/ged.hpp"
#include "dualkit/lp.hpp"

namespace testutil {

using namespace dualkit;

// Production-planning example with p=(3,5), A=[[1,2],[2,1]], caps (10,8).
inline LinearProgram pp_primal() {
    LinearProgram lp;
    lp.objective_sense = ObjectiveSense::MAXIMIZE;
    lp.objective = {{"d", 3.0}, {"t", 5.0}};
    lp.variables = {{"d", 0.0, kInf}, {"t", 0.0, kInf}};
    lp.constraints = {
        {"wood", {{"d", 1.0}, {"t", 2.0}}, ConstraintSense::LEQ, 10.0},
        {"steel", {{"d", 2.0}, {"t", 1.0}}, ConstraintSense::LEQ, 8.0},
    };
    return lp;
}

// Its textbook dual: min 10 yw + 8 ys, A^T y >= p, y >= 0.
inline LinearProgram pp_dual() {
    LinearProgram lp;
    lp.objective = {{"yw", 10.0}, {"ys", 8.0}};
    lp.variables = {{"yw", 0.0, kInf}, {"ys", 0.0, kInf}};
    lp.constraints = {
        {"rd", {{"yw", 1.0}, {"ys", 2.0}}, ConstraintSense::GEQ, 3.0},
        {"rt", {{"yw", 2.0}, {"ys", 1.0}}, ConstraintSense::GEQ, 5.0},
    };
    return lp;
}

// Same dual written with nonnegative slacks turning the rows into equalities.
inline LinearProgram pp_dual_slacked() {
    LinearProgram lp;
    lp.objective = {{"yw", 10.0}, {"ys", 8.0}};
    lp.variables = {{"yw", 0.0, kInf}, {"ys", 0.0, kInf},
                    {"zd", 0.0, kInf}, {"zt", 0.0, kInf}};
    lp.constraints = {
        {"rd", {{"yw", 1.0}, {"ys", 2.0}, {"zd", -1.0}}, ConstraintSense::EQ, 3.0},
        {"rt", {{"yw", 2.0}, {"ys", 1.0}, {"zt", -1.0}}, ConstraintSense::EQ, 5.0},
    };
    return lp;
}

// min x1+x2 s.t. x1+x2+s = 1, s <= 0 (x1, x2 free).
inline LinearProgram slack_example_lhs() {
    LinearProgram lp;
    lp.objective = {{"x1", 1.0}, {"x2", 1.0}};
    lp.variables = {{"x1", -kInf, kInf}, {"x2", -kInf, kInf}, {"s", -kInf, 0.0}};
    lp.constraints = {
        {"c", {{"x1", 1.0}, {"x2", 1.0}, {"s", 1.0}}, ConstraintSense::EQ, 1.0}};
    return lp;
}

// min x1+x2 s.t. x1+x2 >= 1 (x1, x2 free).
inline LinearProgram slack_example_rhs() {
    LinearProgram lp;
    lp.objective = {{"x1", 1.0}, {"x2", 1.0}};
    lp.variables = {{"x1", -kInf, kInf}, {"x2", -kInf, kInf}};
    lp.constraints = {{"c", {{"x1", 1.0}, {"x2", 1.0}}, ConstraintSense::GEQ, 1.0}};
    return lp;
}

// min x1+x2 s.t. x1+x2 >= 1, x >= 0.
inline LinearProgram sign_example_lhs() {
    LinearProgram lp;
    lp.objective = {{"x1", 1.0}, {"x2", 1.0}};
    lp.variables = {{"x1", 0.0, kInf}, {"x2", 0.0, kInf}};
    lp.constraints = {{"c", {{"x1", 1.0}, {"x2", 1.0}}, ConstraintSense::GEQ, 1.0}};
    return lp;
}

// Same program with x1 written as a nonpositive variable.
inline LinearProgram sign_example_rhs() {
    LinearProgram lp;
    lp.objective = {{"x1", -1.0}, {"x2", 1.0}};
    lp.variables = {{"x1", -kInf, 0.0}, {"x2", 0.0, kInf}};
    lp.constraints = {{"c", {{"x1", -1.0}, {"x2", 1.0}}, ConstraintSense::GEQ, 1.0}};
    return lp;
}

// min x1+x2 s.t. x1+x2 >= 1, 1 <= x1 <= 2, x2 >= 0.
inline LinearProgram boxed_example_lhs() {
    LinearProgram lp;
    lp.objective = {{"x1", 1.0}, {"x2", 1.0}};
    lp.variables = {{"x1", 1.0, 2.0}, {"x2", 0.0, kInf}};
    lp.constraints = {{"c", {{"x1", 1.0}, {"x2", 1.0}}, ConstraintSense::GEQ, 1.0}};
    return lp;
}

// Same with x1 negated: -2 <= x1 <= -1.
inline LinearProgram boxed_example_rhs() {
    LinearProgram lp;
    lp.objective = {{"x1", -1.0}, {"x2", 1.0}};
    lp.variables = {{"x1", -2.0, -1.0}, {"x2", 0.0, kInf}};
    lp.constraints = {{"c", {{"x1", -1.0}, {"x2", 1.0}}, ConstraintSense::GEQ, 1.0}};
    return lp;
}

// min 5x1+4x2 s.t. 2x1+3x2 >= 1, x >= 0.
inline LinearProgram small_min_lp() {
    LinearProgram lp;
    lp.objective = {{"x1", 5.0}, {"x2", 4.0}};
    lp.variables = {{"x1", 0.0, kInf}, {"x2", 0.0, kInf}};
    lp.constraints = {{"c1", {{"x1", 2.0}, {"x2", 3.0}}, ConstraintSense::GEQ, 1.0}};
    return lp;
}

// Seeded random LP with small integer-or-half data; always validate()-clean.
inline LinearProgram random_lp(std::mt19937_64& rng, int max_vars = 4, int max_cons = 4) {
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    LinearProgram lp;
    lp.objective_sense = pick(2) ? ObjectiveSense::MAXIMIZE : ObjectiveSense::MINIMIZE;
    lp.objective_constant = (pick(7) - 3) * 0.5;
    const int n = 1 + pick(max_vars);
    for (int i = 1; i <= n; ++i) {
        Variable v{"x" + std::to_string(i), 0.0, kInf};
        switch (pick(6)) {
            case 0: break;                                  // [0, inf)
            case 1: v = {v.name, -kInf, 0.0}; break;        // (-inf, 0]
            case 2: v = {v.name, -kInf, kInf}; break;       // free
            case 3: {  // boxed
                const double lo = 0.5 * (pick(5) - 2);
                v = {v.name, lo, lo + 0.5 * (1 + pick(6))};
                break;
            }
            case 4: v = {v.name, 0.5 * (pick(5) - 2), kInf}; break;
            default: v = {v.name, -kInf, 0.5 * (pick(5) - 2)}; break;
        }
        lp.variables.push_back(v);
        if (pick(4) != 0) {
            const int c = pick(7) - 3;
            lp.objective[v.name] = c != 0 ? c : 1;
        }
    }
    const int m = pick(max_cons + 1);
    for (int j = 1; j <= m; ++j) {
        LinearConstraint c;
        c.name = "c" + std::to_string(j);
        for (int i = 1; i <= n; ++i)
            if (pick(3) != 0) {
                const int a = pick(7) - 3;
                if (a != 0) c.coefficients["x" + std::to_string(i)] = a;
            }
        c.sense = static_cast<ConstraintSense>(pick(3));
        c.rhs = 0.5 * (pick(13) - 6);
        lp.constraints.push_back(std::move(c));
    }
    return lp;
}

// Exhaustive GED by enumerating every node assignment; exact for tiny graphs.
inline double brute_force_ged(const BipartiteLpGraph& a, const BipartiteLpGraph& b,
                              const CostModel& cost = {}) {
    const int nvA = static_cast<int>(a.var_nodes.size());
    const int ncA = static_cast<int>(a.con_nodes.size());
    const int nvB = static_cast<int>(b.var_nodes.size());
    const int ncB = static_cast<int>(b.con_nodes.size());
    std::vector<int> vmap(nvA), cmap(ncA);
    std::vector<bool> used_v(nvB), used_c(ncB);
    double best = 1e18;

    auto evaluate = [&]() {
        double g = 0.0;
        for (int i = 0; i < nvA; ++i)
            g += vmap[i] < 0 ? cost.node_indel
                             : cost.node_substitute(a.var_nodes[i].feature,
                                                    b.var_nodes[vmap[i]].feature);
        for (int i = 0; i < ncA; ++i)
            g += cmap[i] < 0 ? cost.node_indel
                             : cost.node_substitute(a.con_nodes[i].feature,
                                                    b.con_nodes[cmap[i]].feature);
        for (int i = 0; i < nvB; ++i)
            if (!used_v[i]) g += cost.node_indel;
        for (int i = 0; i < ncB; ++i)
            if (!used_c[i]) g += cost.node_indel;
        std::vector<std::vector<char>> covered(nvB, std::vector<char>(ncB, 0));
        for (const auto& e : a.edges) {
            const int bv = vmap[e.var], bc = cmap[e.con];
            bool sub = false;
            double w = 0.0;
            if (bv >= 0 && bc >= 0)
                for (const auto& be : b.edges)
                    if (be.var == bv && be.con == bc) {
                        sub = true;
                        w = be.weight;
                        covered[bv][bc] = 1;
                        break;
                    }
            g += sub ? cost.edge_substitute(e.weight, w) : cost.edge_indel;
        }
        for (const auto& e : b.edges)
            if (!covered[e.var][e.con]) g += cost.edge_indel;
        best = std::min(best, g);
    };

    std::function<void(int)> assign_cons = [&](int i) {
        if (i == ncA) {
            evaluate();
            return;
        }
        cmap[i] = -1;
        assign_cons(i + 1);
        for (int j = 0; j < ncB; ++j) {
            if (used_c[j]) continue;
            used_c[j] = true;
            cmap[i] = j;
            assign_cons(i + 1);
            used_c[j] = false;
        }
    };
    std::function<void(int)> assign_vars = [&](int i) {
        if (i == nvA) {
            assign_cons(0);
            return;
        }
        vmap[i] = -1;
        assign_vars(i + 1);
        for (int j = 0; j < nvB; ++j) {
            if (used_v[j]) continue;
            used_v[j] = true;
            vmap[i] = j;
            assign_vars(i + 1);
            used_v[j] = false;
        }
    };
    assign_vars(0);
    return best;
}

// Seeded random small bipartite LP graph for GED oracle tests.
inline BipartiteLpGraph random_graph(std::mt19937_64& rng, int max_vars, int max_cons) {
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    BipartiteLpGraph g;
    const int nv = pick(max_vars + 1);
    const int nc = pick(max_cons + 1);
    for (int i = 0; i < nv; ++i)
        g.var_nodes.push_back({"v" + std::to_string(i), {double(pick(3))}});
    for (int i = 0; i < nc; ++i)
        g.con_nodes.push_back({"c" + std::to_string(i), {double(pick(3))}});
    for (int v = 0; v < nv; ++v)
        for (int c = 0; c < nc; ++c)
            if (pick(2)) g.edges.push_back({v, c, double(1 + pick(2))});
    return g;
}

}  // namespace testutil
