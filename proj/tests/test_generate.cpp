#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dualkit/generate.hpp"
#include "dualkit/mps.hpp"
#include "dualkit/simplex.hpp"
#include "util.hpp"

using namespace dualkit;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}
}  // namespace

TEST_CASE("2d catalog: every instance is a valid bounded 2-variable program") {
    int total_rows = 0, max_rows = 0;
    for (int s = 1; s <= kNum2dShapes; ++s)
        for (int o = 1; o <= kNum2dObjectives; ++o) {
            const LinearProgram lp = gen_2d(s, o);
            CAPTURE(s);
            CAPTURE(o);
            REQUIRE(validate(lp).empty());
            REQUIRE(lp.variables.size() == 2);
            CHECK(lp.objective_sense == ObjectiveSense::MAXIMIZE);
            for (const auto& v : lp.variables) {
                CHECK(v.lower == 0.0);
                CHECK(v.upper == kInf);
            }
            const SolveResult r = solve(lp);
            REQUIRE(r.status == SolveStatus::OPTIMAL);
            if (o == 1) {
                total_rows += static_cast<int>(lp.constraints.size());
                max_rows = std::max(max_rows, static_cast<int>(lp.constraints.size()));
            }
        }
    // catalog envelope: small row counts, a handful of larger shapes
    CHECK(total_rows == 205);
    CHECK(max_rows == 12);
    CHECK(total_rows / double(kNum2dShapes) == doctest::Approx(5.69).epsilon(0.01));
}

TEST_CASE("2d catalog indices are validated and deterministic") {
    CHECK_THROWS_AS(gen_2d(0, 1), std::out_of_range);
    CHECK_THROWS_AS(gen_2d(kNum2dShapes + 1, 1), std::out_of_range);
    CHECK_THROWS_AS(gen_2d(1, 0), std::out_of_range);
    CHECK(gen_2d(7, 2) == gen_2d(7, 2));
    CHECK(gen_2d(7, 2) != gen_2d(7, 3));
}

TEST_CASE("co families stay inside the size envelope and solve") {
    for (CoFamily f : kAllCoFamilies)
        for (std::uint64_t seed : {1ull, 9ull, 17ull}) {
            CAPTURE(to_string(f));
            const LinearProgram lp = gen_co(f, 3, seed);
            REQUIRE(validate(lp).empty());
            CHECK(lp.variables.size() <= 5);
            CHECK(lp.constraints.size() <= 6);
            CHECK(solve(lp).status == SolveStatus::OPTIMAL);
            CHECK(lp == gen_co(f, 3, seed));
        }
    CHECK_THROWS_AS(gen_co(CoFamily::MAX_CUT, 99, 1), std::out_of_range);
}

TEST_CASE("gen_dataset produces the full catalog with per-type injections") {
    GenConfig cfg;
    cfg.co_count = 14;
    cfg.error_types = {ErrorType::MISSING_VARIABLE, ErrorType::WRONG_OBJECTIVE_SENSE};
    const auto samples = gen_dataset(cfg);
    REQUIRE(samples.size() == 108 + 14);
    CHECK(samples[0].id == "2d_s01_o1");
    CHECK(samples[108].source == SampleSource::CO_SMALL);
    for (const auto& s : samples) {
        CAPTURE(s.id);
        REQUIRE(s.erroneous_duals.size() <= cfg.error_types.size());
        REQUIRE(!s.dual.variables.empty());
        for (const auto& rec : s.erroneous_duals)
            REQUIRE(validate(rec.mutated).empty());
    }
    // deterministic end to end
    const auto again = gen_dataset(cfg);
    REQUIRE(again.size() == samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        CHECK(samples[i].primal == again[i].primal);
        CHECK(samples[i].dual == again[i].dual);
    }
}

TEST_CASE("ingest wraps parseable files and reports the rest") {
    const fs::path dir = fs::temp_directory_path() / "dualkit_ingest_test";
    fs::create_directories(dir);
    std::ofstream(dir / "good.mps") << write_mps(testutil::pp_primal());
    std::ofstream(dir / "good.json") << write_json(testutil::small_min_lp());
    std::ofstream(dir / "bad.mps") << "ROWS\nnot an mps file\n";
    const IngestResult r =
        ingest({dir / "good.mps", dir / "good.json", dir / "bad.mps"}, "ext");
    REQUIRE(r.samples.size() == 2);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].first == (dir / "bad.mps").string());
    CHECK(r.samples[0].source == SampleSource::IMPORTED);
    CHECK(r.samples[0].id == "ext_good");
    CHECK(cged(r.samples[1].primal, testutil::small_min_lp()).first == 0.0);
    fs::remove_all(dir);
}

TEST_CASE("write_dataset lays out files and a manifest, byte-stable") {
    GenConfig cfg;
    cfg.two_d = false;
    cfg.co_count = 3;
    cfg.error_types = {ErrorType::MISSING_CONSTRAINT};
    const auto samples = gen_dataset(cfg);

    const fs::path dir = fs::temp_directory_path() / "dualkit_ds_test";
    fs::remove_all(dir);
    write_dataset(samples, dir);
    REQUIRE(fs::exists(dir / "manifest.json"));
    for (const auto& s : samples) {
        CAPTURE(s.id);
        REQUIRE(fs::exists(dir / s.id / "primal.mps"));
        REQUIRE(fs::exists(dir / s.id / "dual.mps"));
        CHECK(cged(parse_mps(slurp(dir / s.id / "primal.mps")), s.primal).first == 0.0);
        for (const auto& rec : s.erroneous_duals)
            REQUIRE(fs::exists(dir / s.id / "errors" /
                               (std::string(to_string(rec.error)) + ".mps")));
    }
    const std::string manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("dualkit-dataset/1") != std::string::npos);

    const fs::path dir2 = fs::temp_directory_path() / "dualkit_ds_test2";
    fs::remove_all(dir2);
    write_dataset(samples, dir2);
    CHECK(slurp(dir2 / "manifest.json") == manifest);
    CHECK(slurp(dir2 / samples[0].id / "dual.mps") ==
          slurp(dir / samples[0].id / "dual.mps"));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}
