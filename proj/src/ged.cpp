#include "dualkit/ged.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <queue>

#include "dualkit/canonicalize.hpp"

namespace dualkit {

double CostModel::node_substitute(const std::vector<double>& a,
                                  const std::vector<double>& b) const {
    if (a.size() != b.size()) return 1.0;
    for (size_t i = 0; i < a.size(); ++i)
        if (!nearly_equal(a[i], b[i])) return 1.0;
    return 0.0;
}

double CostModel::edge_substitute(double a, double b) const {
    return nearly_equal(a, b) ? 0.0 : 1.0;
}

namespace {

constexpr int kMaxSideNodes = 256;
constexpr size_t kMaxExpansions = 4'000'000;

using Mask = std::bitset<kMaxSideNodes>;

struct SideData {
    int na = 0, nb = 0;
    std::vector<std::vector<bool>> feat_eq;  // [a][b]
};

// Maximum bipartite matching (Kuhn) on a feature-equality relation,
// restricted to the given remaining sets.
int max_matching(const SideData& side, const std::vector<int>& rem_a, const Mask& used_b) {
    std::vector<int> match_b(side.nb, -1);
    int result = 0;
    std::vector<char> visited(side.nb);
    std::function<bool(int)> try_kuhn = [&](int a) {
        for (int b = 0; b < side.nb; ++b) {
            if (used_b[b] || visited[b] || !side.feat_eq[a][b]) continue;
            visited[b] = 1;
            if (match_b[b] < 0 || try_kuhn(match_b[b])) {
                match_b[b] = a;
                return true;
            }
        }
        return false;
    };
    for (int a : rem_a) {
        std::fill(visited.begin(), visited.end(), 0);
        if (try_kuhn(a)) ++result;
    }
    return result;
}

struct Search {
    const BipartiteLpGraph& A;
    const BipartiteLpGraph& B;
    const CostModel& cost;

    int nvA, ncA, nvB, ncB;
    SideData var_side, con_side;
    std::vector<std::vector<double>> sub_var, sub_con;  // node substitution costs
    // B adjacency: weight matrix + presence
    std::vector<std::vector<double>> bw;
    std::vector<std::vector<char>> bhas;
    std::vector<std::vector<std::pair<int, double>>> a_con_adj;  // con -> (var, w)
    std::vector<std::vector<std::pair<int, double>>> b_con_adj;
    // var -> incident (con, weight), A side sorted by con
    std::vector<std::vector<std::pair<int, double>>> a_var_adj;
    std::vector<std::vector<std::pair<int, double>>> b_var_adj;
    std::vector<int> a_pending_after;  // # A edges with con endpoint >= given con pos
    double c_node_min, c_edge_min;

    struct State {
        double f, g;
        int pos;      // number of A nodes already processed (vars first, then cons)
        int parent;   // pool index
        int choice;   // B index or -1 (delete) taken to reach this state
        Mask used_var, used_con;
        int charged_b;  // B edges with both endpoints already matched
        size_t seq;
    };
    std::vector<State> pool;

    struct Cmp {
        const std::vector<State>* pool;
        bool operator()(int x, int y) const {
            const State& a = (*pool)[x];
            const State& b = (*pool)[y];
            if (a.f != b.f) return a.f > b.f;
            if (a.pos != b.pos) return a.pos < b.pos;  // prefer deeper
            return a.seq > b.seq;
        }
    };

    Search(const BipartiteLpGraph& a, const BipartiteLpGraph& b, const CostModel& c)
        : A(a), B(b), cost(c) {
        nvA = static_cast<int>(A.var_nodes.size());
        ncA = static_cast<int>(A.con_nodes.size());
        nvB = static_cast<int>(B.var_nodes.size());
        ncB = static_cast<int>(B.con_nodes.size());

        auto fill_side = [&](SideData& s, const std::vector<BipartiteLpGraph::Node>& an,
                             const std::vector<BipartiteLpGraph::Node>& bn,
                             std::vector<std::vector<double>>& subs) {
            s.na = static_cast<int>(an.size());
            s.nb = static_cast<int>(bn.size());
            s.feat_eq.assign(s.na, std::vector<bool>(s.nb));
            subs.assign(s.na, std::vector<double>(s.nb));
            for (int i = 0; i < s.na; ++i)
                for (int j = 0; j < s.nb; ++j) {
                    subs[i][j] = cost.node_substitute(an[i].feature, bn[j].feature);
                    s.feat_eq[i][j] = subs[i][j] == 0.0;
                }
        };
        fill_side(var_side, A.var_nodes, B.var_nodes, sub_var);
        fill_side(con_side, A.con_nodes, B.con_nodes, sub_con);

        bw.assign(nvB, std::vector<double>(ncB, 0.0));
        bhas.assign(nvB, std::vector<char>(ncB, 0));
        b_con_adj.assign(ncB, {});
        for (const auto& e : B.edges) {
            bw[e.var][e.con] = e.weight;
            bhas[e.var][e.con] = 1;
            b_con_adj[e.con].push_back({e.var, e.weight});
        }
        a_con_adj.assign(ncA, {});
        a_var_adj.assign(nvA, {});
        b_var_adj.assign(nvB, {});
        for (const auto& e : A.edges) {
            a_con_adj[e.con].push_back({e.var, e.weight});
            a_var_adj[e.var].push_back({e.con, e.weight});
        }
        for (const auto& e : B.edges) b_var_adj[e.var].push_back({e.con, e.weight});
        for (auto& v : a_var_adj) std::sort(v.begin(), v.end());

        a_pending_after.assign(ncA + 1, 0);
        for (int c2 = ncA - 1; c2 >= 0; --c2)
            a_pending_after[c2] = a_pending_after[c2 + 1] + static_cast<int>(a_con_adj[c2].size());

        c_node_min = std::min(1.0, cost.node_indel);
        c_edge_min = std::min(1.0, cost.edge_indel);
    }

    double heuristic(const State& s, const std::vector<int>& vmap) const {
        double h = 0.0;
        if (s.pos < nvA) {
            std::vector<int> rem;
            for (int i = s.pos; i < nvA; ++i) rem.push_back(i);
            const int ra = static_cast<int>(rem.size());
            const int rb = nvB - static_cast<int>(s.used_var.count());
            const int m = max_matching(var_side, rem, s.used_var);
            h += (std::max(ra, rb) - m) * c_node_min;
        } else {
            const int rb = nvB - static_cast<int>(s.used_var.count());
            h += rb * c_node_min;
        }
        const int first_con = std::max(0, s.pos - nvA);
        {
            std::vector<int> rem;
            for (int i = first_con; i < ncA; ++i) rem.push_back(i);
            const int ra = static_cast<int>(rem.size());
            const int rb = ncB - static_cast<int>(s.used_con.count());
            const int m = max_matching(con_side, rem, s.used_con);
            h += (std::max(ra, rb) - m) * c_node_min;
        }
        // Two admissible bounds on the not-yet-charged edge cost; every edge
        // has exactly one var endpoint, so the per-variable sum never counts
        // an edit twice. Per matched pair the bound is max(da,db) - k where
        // k is the exact maximum matching of weight-equal pending edges.
        const int pending_a = a_pending_after[first_con];
        const int pending_b = static_cast<int>(B.edges.size()) - s.charged_b;
        const double global_term = std::abs(pending_a - pending_b) * c_edge_min;
        double degree_term = 0.0;
        for (int av = 0; av < std::min(s.pos, nvA); ++av) {
            wa.clear();
            for (const auto& [c2, w] : a_var_adj[av])
                if (c2 >= first_con) wa.push_back(w);
            if (vmap[av] < 0) {
                degree_term += wa.size() * cost.edge_indel;
                continue;
            }
            wb.clear();
            for (const auto& [c2, w] : b_var_adj[vmap[av]])
                if (!s.used_con[c2]) wb.push_back(w);
            const int k = weight_match(wa, wb);
            degree_term +=
                (std::max(wa.size(), wb.size()) - static_cast<size_t>(k)) *
                std::min(c_edge_min, 1.0);
        }
        h += std::max(global_term, degree_term);
        return h;
    }

    mutable std::vector<double> wa, wb;  // scratch for the heuristic

    // Maximum matching between two weight lists under tolerance equality.
    static int weight_match(const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<int> match_b(b.size(), -1);
        std::vector<char> visited(b.size());
        std::function<bool(int)> go = [&](int i) {
            for (size_t j = 0; j < b.size(); ++j) {
                if (visited[j] || !nearly_equal(a[i], b[j])) continue;
                visited[j] = 1;
                if (match_b[j] < 0 || go(match_b[j])) {
                    match_b[j] = static_cast<int>(i);
                    return true;
                }
            }
            return false;
        };
        int res = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            std::fill(visited.begin(), visited.end(), 0);
            if (go(static_cast<int>(i))) ++res;
        }
        return res;
    }

    // Mapping of A var nodes to B var indices (-1 = deleted), reconstructed
    // from the parent chain; valid once pos >= nvA.
    std::vector<int> var_map_of(int state_idx) const {
        std::vector<int> m(nvA, -2);
        int cur = state_idx;
        while (cur >= 0) {
            const State& s = pool[cur];
            if (s.parent >= 0) {
                const int p = pool[s.parent].pos;
                if (p < nvA) m[p] = s.choice;
            }
            cur = s.parent;
        }
        return m;
    }

    std::vector<int> con_map_of(int state_idx) const {
        std::vector<int> m(ncA, -2);
        int cur = state_idx;
        while (cur >= 0) {
            const State& s = pool[cur];
            if (s.parent >= 0) {
                const int p = pool[s.parent].pos;
                if (p >= nvA) m[p - nvA] = s.choice;
            }
            cur = s.parent;
        }
        return m;
    }

    // Edge cost of assigning A con node `ac` to B con node `bc` (or deleting
    // it when bc < 0), given the var mapping.
    double con_edge_delta(int ac, int bc, const std::vector<int>& vmap,
                          const Mask& used_var, int* charged_b_inc) const {
        double delta = 0.0;
        *charged_b_inc = 0;
        if (bc < 0) {
            delta += cost.edge_indel * static_cast<double>(a_con_adj[ac].size());
            return delta;
        }
        for (const auto& [av, w] : a_con_adj[ac]) {
            const int bv = vmap[av];
            if (bv >= 0 && bhas[bv][bc])
                delta += cost.edge_substitute(w, bw[bv][bc]);
            else
                delta += cost.edge_indel;
        }
        for (const auto& [bv, w] : b_con_adj[bc]) {
            if (!used_var[bv]) continue;  // endpoint never matched: charged at the end
            // bv is the image of some matched A var; insert unless covered above.
            bool covered = false;
            for (const auto& [av, w2] : a_con_adj[ac])
                if (vmap[av] == bv) { covered = true; break; }
            ++*charged_b_inc;
            if (!covered) delta += cost.edge_indel;
        }
        return delta;
    }

    // Cost of inserting everything in B not yet covered once all A nodes
    // are processed.
    double closing_cost(const State& s) const {
        double delta = 0.0;
        delta += (nvB - static_cast<int>(s.used_var.count())) * cost.node_indel;
        delta += (ncB - static_cast<int>(s.used_con.count())) * cost.node_indel;
        delta += (static_cast<int>(B.edges.size()) - s.charged_b) * cost.edge_indel;
        return delta;
    }

    size_t seq = 1;

    // Generates every child of pool[cur] and hands its pool index to sink.
    template <typename Sink>
    void expand(int cur, Sink&& sink) {
        const int total = nvA + ncA;
        const State s = pool[cur];  // copy: pool may reallocate
        std::vector<int> vmap = var_map_of(cur);
        auto push_child = [&](int choice, double delta, int charged_inc) {
            State child = s;
            child.parent = cur;
            child.choice = choice;
            child.pos = s.pos + 1;
            child.g = s.g + delta;
            child.charged_b = s.charged_b + charged_inc;
            int restore = -3;
            if (s.pos < nvA) {
                if (choice >= 0) child.used_var.set(choice);
                restore = vmap[s.pos];
                vmap[s.pos] = choice;
            } else {
                if (choice >= 0) child.used_con.set(choice);
            }
            if (child.pos == total) {
                child.g += closing_cost(child);
                child.f = child.g;
            } else {
                child.f = child.g + heuristic(child, vmap);
            }
            if (s.pos < nvA) vmap[s.pos] = restore;
            child.seq = seq++;
            pool.push_back(child);
            sink(static_cast<int>(pool.size()) - 1);
        };

        if (s.pos < nvA) {
            const int av = s.pos;
            for (int bv = 0; bv < nvB; ++bv) {
                if (s.used_var[bv]) continue;
                push_child(bv, sub_var[av][bv], 0);
            }
            push_child(-1, cost.node_indel, 0);
        } else {
            const int ac = s.pos - nvA;
            for (int bc = 0; bc < ncB; ++bc) {
                if (s.used_con[bc]) continue;
                int inc = 0;
                const double d = con_edge_delta(ac, bc, vmap, s.used_var, &inc);
                push_child(bc, sub_con[ac][bc] + d, inc);
            }
            int inc = 0;
            const double d = con_edge_delta(ac, -1, vmap, s.used_var, &inc);
            push_child(-1, cost.node_indel + d, inc);
        }
    }

    // Depth-first descent always taking the lowest-f child; supplies the
    // branch-and-bound incumbent before the best-first phase starts.
    int greedy_descend() {
        const int total = nvA + ncA;
        int cur = 0;
        while (pool[cur].pos < total) {
            int best = -1;
            expand(cur, [&](int child) {
                if (best < 0 || pool[child].f < pool[best].f) best = child;
            });
            cur = best;
        }
        return cur;
    }

    EditPath run() {
        const int total = nvA + ncA;
        std::priority_queue<int, std::vector<int>, Cmp> open{Cmp{&pool}};
        pool.push_back({0.0, 0.0, 0, -1, 0, {}, {}, 0, 0});
        if (total == 0) {  // everything in B is inserted
            pool[0].g = pool[0].f = closing_cost(pool[0]);
            return reconstruct(0);
        }
        pool[0].f = heuristic(pool[0], std::vector<int>(nvA, -2));

        int incumbent = greedy_descend();
        double ub = pool[incumbent].g;

        open.push(0);
        size_t expansions = 0;
        while (!open.empty()) {
            const int cur = open.top();
            open.pop();
            if (pool[cur].f >= ub) continue;  // cannot beat the incumbent
            if (pool[cur].pos == total) return reconstruct(cur);
            if (++expansions > kMaxExpansions)
                throw std::runtime_error("ged: search limit exceeded");

            expand(cur, [&](int child) {
                if (pool[child].f >= ub) {
                    pool.pop_back();  // pruned; child is the newest entry
                    return;
                }
                if (pool[child].pos == total) {  // tighter incumbent
                    ub = pool[child].f;
                    incumbent = child;
                }
                open.push(child);
            });
        }
        return reconstruct(incumbent);
    }

    EditPath reconstruct(int goal) const {
        const auto vmap = var_map_of(goal);
        const auto cmap = con_map_of(goal);
        EditPath path;
        path.total = pool[goal].g;
        auto add = [&](EditOp::Type t, EditOp::Side side, std::string a_id, std::string b_id,
                       double c) {
            if (c > 0.0 || t != EditOp::Type::SUBSTITUTE)
                path.operations.push_back({t, side, std::move(a_id), std::move(b_id), c});
        };

        for (int i = 0; i < nvA; ++i) {
            if (vmap[i] < 0)
                add(EditOp::Type::DELETE, EditOp::Side::VAR, A.var_nodes[i].id, "", cost.node_indel);
            else
                add(EditOp::Type::SUBSTITUTE, EditOp::Side::VAR, A.var_nodes[i].id,
                    B.var_nodes[vmap[i]].id, sub_var[i][vmap[i]]);
        }
        for (int i = 0; i < ncA; ++i) {
            if (cmap[i] < 0)
                add(EditOp::Type::DELETE, EditOp::Side::CON, A.con_nodes[i].id, "", cost.node_indel);
            else
                add(EditOp::Type::SUBSTITUTE, EditOp::Side::CON, A.con_nodes[i].id,
                    B.con_nodes[cmap[i]].id, sub_con[i][cmap[i]]);
        }
        std::vector<char> bvar_used(nvB, 0), bcon_used(ncB, 0);
        for (int v : vmap)
            if (v >= 0) bvar_used[v] = 1;
        for (int c2 : cmap)
            if (c2 >= 0) bcon_used[c2] = 1;
        for (int i = 0; i < nvB; ++i)
            if (!bvar_used[i])
                add(EditOp::Type::INSERT, EditOp::Side::VAR, "", B.var_nodes[i].id, cost.node_indel);
        for (int i = 0; i < ncB; ++i)
            if (!bcon_used[i])
                add(EditOp::Type::INSERT, EditOp::Side::CON, "", B.con_nodes[i].id, cost.node_indel);

        auto edge_id = [](const BipartiteLpGraph& g, int v, int c2) {
            return g.var_nodes[v].id + "--" + g.con_nodes[c2].id;
        };
        std::vector<std::vector<char>> covered(nvB, std::vector<char>(ncB, 0));
        for (const auto& e : A.edges) {
            const int bv = vmap[e.var], bc = cmap[e.con];
            if (bv >= 0 && bc >= 0 && bhas[bv][bc]) {
                covered[bv][bc] = 1;
                add(EditOp::Type::SUBSTITUTE, EditOp::Side::EDGE, edge_id(A, e.var, e.con),
                    edge_id(B, bv, bc), cost.edge_substitute(e.weight, bw[bv][bc]));
            } else {
                add(EditOp::Type::DELETE, EditOp::Side::EDGE, edge_id(A, e.var, e.con), "",
                    cost.edge_indel);
            }
        }
        for (const auto& e : B.edges)
            if (!covered[e.var][e.con])
                add(EditOp::Type::INSERT, EditOp::Side::EDGE, "", edge_id(B, e.var, e.con),
                    cost.edge_indel);
        return path;
    }
};

LinearProgram nged_baseline(const LinearProgram& lp, const NgedOptions& opts) {
    LinearProgram out = lp;
    if (out.objective_sense == ObjectiveSense::MAXIMIZE)
        out = apply_step(out, {RewriteStep::Kind::NEGATE_OBJECTIVE});
    if (opts.normalize_inequalities) {
        const ConstraintSense from = opts.target_sense == ConstraintSense::GEQ
                                         ? ConstraintSense::LEQ
                                         : ConstraintSense::GEQ;
        for (const auto& c : lp.constraints)
            if (c.sense == from) out = flip_constraint(out, c.name);
    }
    return out;
}

}  // namespace

EditPath ged(const BipartiteLpGraph& a, const BipartiteLpGraph& b, const CostModel& cost,
             int budget) {
    const int combined = static_cast<int>(a.node_count() + b.node_count());
    if (combined > budget)
        throw GedBudgetExceeded("instance too large for exact GED: " + std::to_string(combined) +
                                " nodes exceeds budget " + std::to_string(budget));
    if (a.var_nodes.size() > kMaxSideNodes || a.con_nodes.size() > kMaxSideNodes ||
        b.var_nodes.size() > kMaxSideNodes || b.con_nodes.size() > kMaxSideNodes)
        throw GedBudgetExceeded("instance too large for exact GED");
    Search s(a, b, cost);
    return s.run();
}

std::pair<double, EditPath> cged(const LinearProgram& a, const LinearProgram& b, int budget) {
    const auto ga = build_graph(canonicalize(a).lp, GraphMode::CANONICAL);
    const auto gb = build_graph(canonicalize(b).lp, GraphMode::CANONICAL);
    EditPath path = ged(ga, gb, {}, budget);
    return {path.total, std::move(path)};
}

double nged(const LinearProgram& a, const LinearProgram& b, const NgedOptions& opts, int budget) {
    const auto ga = build_graph(nged_baseline(a, opts), GraphMode::NGED_COMPAT);
    const auto gb = build_graph(nged_baseline(b, opts), GraphMode::NGED_COMPAT);
    const double d = ged(ga, gb, {}, budget).total;
    const double denom = static_cast<double>(std::max(ga.size(), gb.size()));
    if (denom == 0.0) return 0.0;
    return std::min(1.0, d / denom);
}

ObjMatch obj_match(const LinearProgram& a, const LinearProgram& b, double tol) {
    ObjMatch out;
    const SolveResult ra = solve(a), rb = solve(b);
    out.status_a = ra.status;
    out.status_b = rb.status;
    if (ra.status == SolveStatus::ITER_LIMIT || rb.status == SolveStatus::ITER_LIMIT) {
        out.undecided = true;
        return out;
    }
    if (ra.status == SolveStatus::OPTIMAL && rb.status == SolveStatus::OPTIMAL)
        out.match = std::abs(ra.value - rb.value) <= tol * std::max(1.0, std::abs(ra.value));
    else
        out.match = ra.status == rb.status;
    return out;
}

MetricVerdict verdict(const LinearProgram& candidate, const LinearProgram& truth, int budget) {
    MetricVerdict v;
    try {
        auto [d, path] = cged(candidate, truth, budget);
        v.cged = d;
        v.edit_path = std::move(path);
        v.equivalent = d <= tol::atol();
    } catch (const GedBudgetExceeded&) {
        v.cged_undecided = true;
        v.equivalent = false;
    }
    try {
        v.nged = nged(candidate, truth, {}, budget);
    } catch (const GedBudgetExceeded&) {
        v.nged_undecided = true;
    }
    const ObjMatch om = obj_match(candidate, truth);
    v.obj = om.match;
    v.obj_undecided = om.undecided;
    v.status_candidate = om.status_a;
    v.status_truth = om.status_b;
    return v;
}

}  // namespace dualkit
