#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualkit/canonicalize.hpp"
#include "dualkit/graph.hpp"
#include "util.hpp"

using namespace dualkit;

TEST_CASE("canonical graph of the slack-elimination result has 5 nodes") {
    // min x1+x2 s.t. x1+x2>=1 over free variables canonicalizes to a split
    // form; the worked example with x>=0 instead gives exactly 2+3 nodes.
    const auto c = canonicalize(testutil::sign_example_lhs());
    const auto g = build_graph(c.lp, GraphMode::CANONICAL);
    CHECK(g.var_nodes.size() == 2);
    CHECK(g.con_nodes.size() == 3);  // main row + two materialized bounds
    CHECK(g.node_count() == 5);
    CHECK(g.edges.size() == 4);
}

TEST_CASE("canonical features are c_i and b_j only") {
    const auto c = canonicalize(testutil::sign_example_lhs());
    const auto g = build_graph(c.lp, GraphMode::CANONICAL);
    for (const auto& n : g.var_nodes) REQUIRE(n.feature.size() == 1);
    for (const auto& n : g.con_nodes) REQUIRE(n.feature.size() == 1);
}

TEST_CASE("canonical mode rejects non-canonical programs") {
    CHECK_THROWS(build_graph(testutil::pp_primal(), GraphMode::CANONICAL));
    CHECK_THROWS(build_graph(testutil::boxed_example_lhs(), GraphMode::CANONICAL));
}

TEST_CASE("nged-compat features carry bounds and row intervals") {
    const auto g = build_graph(testutil::boxed_example_lhs(), GraphMode::NGED_COMPAT);
    REQUIRE(g.var_nodes.size() == 2);
    REQUIRE(g.var_nodes[0].feature.size() == 3);  // (c, l, u)
    CHECK(g.var_nodes[0].feature[1] == 1.0);
    CHECK(g.var_nodes[0].feature[2] == 2.0);
    REQUIRE(g.con_nodes.size() == 1);
    REQUIRE(g.con_nodes[0].feature.size() == 2);  // (l_j, u_j)
    CHECK(g.con_nodes[0].feature[0] == 1.0);
    CHECK(g.con_nodes[0].feature[1] == kInf);
}

TEST_CASE("row interval encodings per sense") {
    auto lp = testutil::sign_example_lhs();
    lp.constraints[0].sense = ConstraintSense::LEQ;
    auto g = build_graph(lp, GraphMode::NGED_COMPAT);
    CHECK(g.con_nodes[0].feature[0] == -kInf);
    CHECK(g.con_nodes[0].feature[1] == 1.0);
    lp.constraints[0].sense = ConstraintSense::EQ;
    g = build_graph(lp, GraphMode::NGED_COMPAT);
    CHECK(g.con_nodes[0].feature[0] == 1.0);
    CHECK(g.con_nodes[0].feature[1] == 1.0);
}

TEST_CASE("edges mirror the nonzero coefficients") {
    const auto g = build_graph(testutil::pp_primal(), GraphMode::NGED_COMPAT);
    CHECK(g.edges.size() == 4);
    for (const auto& e : g.edges) CHECK(e.weight != 0.0);
}

TEST_CASE("dot export is deterministic and complete") {
    const auto g = build_graph(testutil::pp_primal(), GraphMode::NGED_COMPAT);
    const std::string dot = export_dot(g);
    CHECK(dot == export_dot(g));
    CHECK(dot.find("\"v:d\"") != std::string::npos);
    CHECK(dot.find("\"c:wood\"") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);
}
