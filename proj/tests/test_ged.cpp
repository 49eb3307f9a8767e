#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualkit/ged.hpp"
#include "util.hpp"

using namespace dualkit;

TEST_CASE("identical graphs have distance zero") {
    const auto g = build_graph(testutil::pp_primal(), GraphMode::NGED_COMPAT);
    const EditPath p = ged(g, g);
    CHECK(p.total == 0.0);
    CHECK(p.operations.empty());
}

TEST_CASE("single node and edge differences") {
    BipartiteLpGraph a, b;
    a.var_nodes = {{"v0", {1.0}}};
    b = a;
    b.var_nodes.push_back({"v1", {2.0}});
    CHECK(ged(a, b).total == 1.0);  // one insertion

    b = a;
    b.var_nodes[0].feature = {3.0};
    CHECK(ged(a, b).total == 1.0);  // one substitution

    a.con_nodes = {{"c0", {0.0}}};
    b = a;
    a.edges = {{0, 0, 2.0}};
    CHECK(ged(a, b).total == 1.0);  // one edge deletion
    b.edges = {{0, 0, 5.0}};
    CHECK(ged(a, b).total == 1.0);  // edge weight substitution
}

TEST_CASE("permutation invariance") {
    auto a = build_graph(testutil::pp_primal(), GraphMode::NGED_COMPAT);
    auto b = a;
    std::swap(b.var_nodes[0], b.var_nodes[1]);
    for (auto& e : b.edges) e.var = 1 - e.var;
    CHECK(ged(a, b).total == 0.0);
}

TEST_CASE("edit path total matches the sum of its operations") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const auto a = testutil::random_graph(rng, 3, 3);
        const auto b = testutil::random_graph(rng, 3, 3);
        const EditPath p = ged(a, b);
        double sum = 0.0;
        for (const auto& op : p.operations) sum += op.cost;
        CAPTURE(i);
        REQUIRE(p.total == doctest::Approx(sum));
    }
}

TEST_CASE("search equals brute force on small graphs") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        const auto a = testutil::random_graph(rng, 2, 2);
        const auto b = testutil::random_graph(rng, 2, 2);
        CAPTURE(i);
        REQUIRE(ged(a, b).total == doctest::Approx(testutil::brute_force_ged(a, b)));
    }
}

TEST_CASE("budget gate") {
    BipartiteLpGraph a;
    for (int i = 0; i < 40; ++i) a.var_nodes.push_back({"v" + std::to_string(i), {0.0}});
    CHECK_THROWS_AS(ged(a, a), GedBudgetExceeded);  // 80 combined > 60
    CHECK_NOTHROW(ged(a, a, {}, 100));
}

TEST_CASE("cged treats the worked convention pairs as equivalent") {
    CHECK(cged(testutil::pp_dual(), testutil::pp_dual_slacked()).first == 0.0);
    CHECK(cged(testutil::sign_example_lhs(), testutil::sign_example_rhs()).first == 0.0);
    CHECK(cged(testutil::boxed_example_lhs(), testutil::boxed_example_rhs()).first == 0.0);
}

TEST_CASE("cged separates genuinely different programs") {
    auto wrong = testutil::pp_dual();
    wrong.constraints[0].rhs = 4.0;
    CHECK(cged(testutil::pp_dual(), wrong).first > 0.0);
}

TEST_CASE("nged flags the slacked dual as different") {
    // the convention difference is exactly what NGED cannot see past
    const double d = nged(testutil::pp_dual(), testutil::pp_dual_slacked());
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
    CHECK(nged(testutil::pp_dual(), testutil::pp_dual()) == 0.0);
}

TEST_CASE("nged inequality normalization is optional") {
    auto flipped = flip_constraint(testutil::sign_example_lhs(), "c");
    NgedOptions normalize;  // default: flip to >=
    CHECK(nged(testutil::sign_example_lhs(), flipped, normalize) == 0.0);
    NgedOptions keep;
    keep.normalize_inequalities = false;
    CHECK(nged(testutil::sign_example_lhs(), flipped, keep) > 0.0);
}

TEST_CASE("obj_match compares values and statuses") {
    CHECK(obj_match(testutil::pp_primal(), testutil::pp_dual()).match);  // both 26
    auto worse = testutil::pp_primal();
    worse.objective["d"] = 1.0;
    CHECK(!obj_match(testutil::pp_primal(), worse).match);

    LinearProgram unbounded;
    unbounded.objective_sense = ObjectiveSense::MAXIMIZE;
    unbounded.objective = {{"x", 1.0}};
    unbounded.variables = {{"x", 0.0, kInf}};
    const auto m = obj_match(unbounded, unbounded);
    CHECK(m.match);
    CHECK(m.status_a == SolveStatus::UNBOUNDED);
}

TEST_CASE("verdict aggregates all three metrics") {
    const MetricVerdict v = verdict(testutil::pp_dual_slacked(), testutil::pp_dual());
    CHECK(v.cged == 0.0);
    CHECK(v.nged > 0.0);
    CHECK(v.obj);
    CHECK(v.equivalent);

    auto wrong = testutil::pp_dual();
    wrong.objective["yw"] = 1.0;
    const MetricVerdict w = verdict(wrong, testutil::pp_dual());
    CHECK(w.cged > 0.0);
    CHECK(!w.equivalent);
}
