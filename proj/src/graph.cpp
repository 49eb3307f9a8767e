#include "dualkit/graph.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dualkit {

BipartiteLpGraph build_graph(const LinearProgram& lp, GraphMode mode) {
    if (mode == GraphMode::CANONICAL) {
        for (const auto& c : lp.constraints)
            if (c.sense != ConstraintSense::GEQ)
                throw std::invalid_argument("build_graph: CANONICAL mode requires all-GEQ rows");
        for (const auto& v : lp.variables)
            if (!(nearly_zero(v.lower) && v.upper == kInf))
                throw std::invalid_argument("build_graph: CANONICAL mode requires [0,inf) bounds");
    }

    BipartiteLpGraph g;
    std::map<std::string, int> var_idx;
    for (const auto& v : lp.variables) {
        double c = 0.0;
        if (auto it = lp.objective.find(v.name); it != lp.objective.end()) c = it->second;
        var_idx[v.name] = static_cast<int>(g.var_nodes.size());
        if (mode == GraphMode::CANONICAL)
            g.var_nodes.push_back({v.name, {c}});
        else
            g.var_nodes.push_back({v.name, {c, v.lower, v.upper}});
    }
    for (const auto& c : lp.constraints) {
        int ci = static_cast<int>(g.con_nodes.size());
        if (mode == GraphMode::CANONICAL) {
            g.con_nodes.push_back({c.name, {c.rhs}});
        } else {
            double lo = c.sense == ConstraintSense::LEQ ? -kInf : c.rhs;
            double hi = c.sense == ConstraintSense::GEQ ? kInf : c.rhs;
            g.con_nodes.push_back({c.name, {lo, hi}});
        }
        for (const auto& [vname, coef] : c.coefficients) {
            auto it = var_idx.find(vname);
            if (it == var_idx.end())
                throw std::invalid_argument("build_graph: row references undeclared variable");
            g.edges.push_back({it->second, ci, coef});
        }
    }
    return g;
}

namespace {
std::string fmt_feature(const std::vector<double>& f) {
    std::ostringstream os;
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) os << ",";
        if (f[i] == kInf) os << "inf";
        else if (f[i] == -kInf) os << "-inf";
        else {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%g", f[i]);
            os << buf;
        }
    }
    return os.str();
}
}  // namespace

std::string export_dot(const BipartiteLpGraph& g) {
    std::ostringstream os;
    os << "graph g {\n";
    for (const auto& n : g.var_nodes)
        os << "  \"v:" << n.id << "\" [shape=circle, label=\"" << fmt_feature(n.feature) << "\"];\n";
    for (const auto& n : g.con_nodes)
        os << "  \"c:" << n.id << "\" [shape=box, label=\"" << fmt_feature(n.feature) << "\"];\n";
    for (const auto& e : g.edges)
        os << "  \"v:" << g.var_nodes[e.var].id << "\" -- \"c:" << g.con_nodes[e.con].id
           << "\" [label=\"" << fmt_feature({e.weight}) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace dualkit
