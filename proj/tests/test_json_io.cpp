#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "dualkit/mps.hpp"
#include "util.hpp"

using namespace dualkit;

TEST_CASE("golden document") {
    const std::string text = R"({
      "version": "dualkit-lp/1",
      "objective_sense": "max",
      "objective_constant": 0,
      "objective": {"d": 3, "t": 5},
      "variables": [
        {"name": "d", "lower": 0, "upper": "inf"},
        {"name": "t", "lower": 0, "upper": "inf"}
      ],
      "constraints": [
        {"name": "wood", "coefs": {"d": 1, "t": 2}, "sense": "<=", "rhs": 10},
        {"name": "steel", "coefs": {"d": 2, "t": 1}, "sense": "<=", "rhs": 8}
      ]
    })";
    CHECK(parse_json(text) == testutil::pp_primal());
}

TEST_CASE("writer output carries the schema version") {
    const auto j = nlohmann::json::parse(write_json(testutil::pp_primal()));
    CHECK(j.at("version") == "dualkit-lp/1");
    CHECK(j.at("objective_sense") == "max");
}

TEST_CASE("infinite bounds use string sentinels") {
    LinearProgram lp;
    lp.variables = {{"x", -kInf, kInf}};
    const auto j = nlohmann::json::parse(write_json(lp));
    CHECK(j.at("variables").at(0).at("lower") == "-inf");
    CHECK(j.at("variables").at(0).at("upper") == "inf");
    CHECK(parse_json(write_json(lp)) == lp);
}

TEST_CASE("unknown fields are rejected with a pointer path") {
    const std::string text = R"({
      "version": "dualkit-lp/1",
      "objective_sense": "min",
      "objective_constant": 0,
      "objective": {},
      "variables": [{"name": "x", "lower": 0, "upper": "inf", "typo": 1}],
      "constraints": []
    })";
    try {
        parse_json(text);
        FAIL("expected JsonError");
    } catch (const JsonError& e) {
        CHECK(e.path.find("/variables/0") != std::string::npos);
        CHECK(std::string(e.what()).find("typo") != std::string::npos);
    }
}

TEST_CASE("wrong schema version is rejected") {
    CHECK_THROWS_AS(parse_json(R"({"version": "dualkit-lp/9"})"), JsonError);
    CHECK_THROWS_AS(parse_json("[]"), JsonError);
    CHECK_THROWS_AS(parse_json("not json at all"), JsonError);
}

TEST_CASE("bad enum values are rejected") {
    const std::string tmpl = R"({
      "version": "dualkit-lp/1",
      "objective_sense": "SENSE",
      "objective_constant": 0,
      "objective": {},
      "variables": [],
      "constraints": []
    })";
    auto with_sense = [&](const std::string& s) {
        std::string t = tmpl;
        return t.replace(t.find("SENSE"), 5, s);
    };
    CHECK_NOTHROW(parse_json(with_sense("min")));
    CHECK_THROWS_AS(parse_json(with_sense("MINIMIZE")), JsonError);
}

TEST_CASE("round-trip is exact on random programs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const LinearProgram lp = testutil::random_lp(rng);
        CAPTURE(i);
        REQUIRE(parse_json(write_json(lp)) == lp);
    }
}

TEST_CASE("json and mps agree through cross conversion") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const LinearProgram lp = testutil::random_lp(rng);
        REQUIRE(parse_mps(write_mps(parse_json(write_json(lp)))) == lp);
    }
}
