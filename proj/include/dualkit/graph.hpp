#pragma once

#include "dualkit/lp.hpp"

namespace dualkit {

// Bipartite variable/constraint graph of an LP. In CANONICAL mode variable
// nodes carry the single feature c_i and constraint nodes carry b_j; edges
// carry the nonzero coefficients a_ij. In NGED_COMPAT mode variable nodes
// carry (c_i, l_i, u_i) and constraint nodes the row interval (l_j, u_j).
struct BipartiteLpGraph {
    struct Node {
        std::string id;
        std::vector<double> feature;
    };
    struct Edge {
        int var;  // index into var_nodes
        int con;  // index into con_nodes
        double weight;
    };
    std::vector<Node> var_nodes;
    std::vector<Node> con_nodes;
    std::vector<Edge> edges;

    size_t node_count() const { return var_nodes.size() + con_nodes.size(); }
    size_t size() const { return node_count() + edges.size(); }
};

enum class GraphMode { CANONICAL, NGED_COMPAT };

// CANONICAL mode requires an all-GEQ program with materialized bounds
// (the canonicalize() output); NGED_COMPAT accepts any valid LP.
BipartiteLpGraph build_graph(const LinearProgram& lp, GraphMode mode);

// Deterministic DOT rendering with features as node labels and weights as
// edge labels.
std::string export_dot(const BipartiteLpGraph& g);

}  // namespace dualkit
