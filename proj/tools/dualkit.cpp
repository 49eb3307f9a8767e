#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dualkit/canonicalize.hpp"
#include "dualkit/dualize.hpp"
#include "dualkit/ged.hpp"
#include "dualkit/generate.hpp"
#include "dualkit/graph.hpp"
#include "dualkit/inject.hpp"
#include "dualkit/mps.hpp"
#include "dualkit/simplex.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Exit codes shared by all subcommands:
//   0 success / equivalent      1 not equivalent (check)
//   2 parse or I/O failure      3 dualization method disagreement
//   4 GED budget exceeded       5 other module error
enum ExitCode { EXIT_EQUIV = 0, EXIT_NOT_EQUIV = 1, EXIT_PARSE = 2,
                EXIT_DISAGREE = 3, EXIT_BUDGET = 4, EXIT_MODULE = 5 };

struct CliError {
    int code;
    std::string message;
};

bool is_json_format(const fs::path& p, const std::string& override_fmt) {
    if (override_fmt == "json") return true;
    if (override_fmt == "mps") return false;
    return p.extension() == ".json";
}

dualkit::LinearProgram read_lp(const fs::path& path, const std::string& fmt) {
    std::ifstream in(path);
    if (!in) throw CliError{EXIT_PARSE, "cannot open " + path.string()};
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return is_json_format(path, fmt) ? dualkit::parse_json(buf.str())
                                         : dualkit::parse_mps(buf.str());
    } catch (const std::exception& e) {
        throw CliError{EXIT_PARSE, path.string() + ": " + e.what()};
    }
}

// Atomic write: nothing at `path` changes unless the full write succeeds.
void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw CliError{EXIT_PARSE, "cannot write " + tmp.string()};
        out << text;
    }
    fs::rename(tmp, path);
}

void emit_lp(const dualkit::LinearProgram& lp, const std::string& out,
             const std::string& fmt) {
    const std::string text = is_json_format(out, fmt) ? dualkit::write_json(lp)
                                                      : dualkit::write_mps(lp);
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

int cmd_dualize(const std::string& input, const std::string& method,
                const std::string& out, const std::string& in_fmt,
                const std::string& out_fmt) {
    auto lp = read_lp(input, in_fmt);
    dualkit::LinearProgram dual;
    try {
        if (method == "sf")
            dual = dualkit::dualize(lp, dualkit::DualizationMethod::STANDARD_FORM).dual;
        else if (method == "sob")
            dual = dualkit::dualize(lp, dualkit::DualizationMethod::SOB).dual;
        else
            dual = dualkit::dualize_checked(lp).dual;
    } catch (const dualkit::MethodDisagreement& e) {
        std::cerr << e.what() << "\n";
        return EXIT_DISAGREE;
    }
    emit_lp(dual, out, out_fmt);
    return EXIT_EQUIV;
}

int cmd_check(const std::string& candidate, const std::string& truth,
              const std::string& metric, bool as_json, const std::string& fmt) {
    auto cand = read_lp(candidate, fmt);
    auto ref = read_lp(truth, fmt);
    try {
        dualkit::MetricVerdict v;
        if (metric == "all") {
            v = dualkit::verdict(cand, ref);
        } else if (metric == "cged") {
            auto [d, path] = dualkit::cged(cand, ref);
            v.cged = d;
            v.edit_path = std::move(path);
            v.equivalent = d <= dualkit::tol::atol();
        } else if (metric == "nged") {
            v.nged = dualkit::nged(cand, ref);
            v.equivalent = v.nged <= dualkit::tol::atol();
        } else {  // obj
            auto m = dualkit::obj_match(cand, ref);
            v.obj = m.match;
            v.obj_undecided = m.undecided;
            v.status_candidate = m.status_a;
            v.status_truth = m.status_b;
            v.equivalent = m.match;
        }
        if (as_json) {
            ordered_json j;
            j["version"] = "dualkit-report/1";
            j["metric"] = metric;
            j["equivalent"] = v.equivalent;
            if (metric == "all" || metric == "cged") j["cged"] = v.cged;
            if (metric == "all" || metric == "nged") j["nged"] = v.nged;
            if (metric == "all" || metric == "obj") {
                j["obj_match"] = v.obj;
                j["status_candidate"] = to_string(v.status_candidate);
                j["status_truth"] = to_string(v.status_truth);
            }
            ordered_json ops = ordered_json::array();
            for (const auto& op : v.edit_path.operations) {
                const char* type = op.type == dualkit::EditOp::Type::INSERT ? "insert"
                                   : op.type == dualkit::EditOp::Type::DELETE
                                       ? "delete"
                                       : "substitute";
                const char* side = op.side == dualkit::EditOp::Side::VAR   ? "var"
                                   : op.side == dualkit::EditOp::Side::CON ? "con"
                                                                           : "edge";
                ops.push_back({{"type", type}, {"side", side}, {"a", op.a_id},
                               {"b", op.b_id}, {"cost", op.cost}});
            }
            j["edit_path"] = std::move(ops);
            std::cout << j.dump(2) << "\n";
        } else {
            if (metric == "all" || metric == "cged")
                std::cout << "cged " << v.cged << "\n";
            if (metric == "all" || metric == "nged")
                std::cout << "nged " << v.nged << "\n";
            if (metric == "all" || metric == "obj")
                std::cout << "obj_match " << (v.obj ? "true" : "false") << "\n";
            std::cout << "equivalent " << (v.equivalent ? "true" : "false") << "\n";
        }
        return v.equivalent ? EXIT_EQUIV : EXIT_NOT_EQUIV;
    } catch (const dualkit::GedBudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return EXIT_BUDGET;
    }
}

int cmd_inject(const std::string& input, const std::string& error,
               std::uint64_t seed, const std::string& out, const std::string& fmt) {
    auto lp = read_lp(input, fmt);
    try {
        auto rec = dualkit::inject(lp, dualkit::error_type_from_string(error), seed);
        emit_lp(rec.mutated, out, fmt);
        std::cerr << "injected " << to_string(rec.error) << " at " << rec.location
                  << " (seed " << rec.seed << ", attempts " << rec.attempts << ")\n";
        return EXIT_EQUIV;
    } catch (const dualkit::InjectError& e) {
        std::cerr << e.what() << "\n";
        return EXIT_MODULE;
    }
}

dualkit::GenConfig load_config(const std::string& path) {
    dualkit::GenConfig cfg;
    cfg.two_d = true;
    if (path.empty()) {
        for (auto t : dualkit::kAllErrorTypes) cfg.error_types.push_back(t);
        return cfg;
    }
    std::ifstream in(path);
    if (!in) throw CliError{EXIT_PARSE, "cannot open " + path};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw CliError{EXIT_PARSE, path + ": " + e.what()};
    }
    cfg.two_d = j.value("two_d", true);
    cfg.co_count = j.value("co_count", 0);
    cfg.co_seed = j.value("co_seed", std::uint64_t{1});
    cfg.error_seed = j.value("error_seed", std::uint64_t{1});
    for (const auto& t : j.value("error_types", std::vector<std::string>{}))
        cfg.error_types.push_back(dualkit::error_type_from_string(t));
    return cfg;
}

int cmd_gen(const std::string& config, const std::string& out_dir) {
    auto samples = dualkit::gen_dataset(load_config(config));
    dualkit::write_dataset(samples, out_dir);
    std::cout << "wrote " << samples.size() << " samples to " << out_dir << "\n";
    return EXIT_EQUIV;
}

int cmd_solve(const std::string& input, const std::string& fmt) {
    auto res = dualkit::solve(read_lp(input, fmt));
    std::cout << to_string(res.status);
    if (res.status == dualkit::SolveStatus::OPTIMAL) std::cout << " " << res.value;
    std::cout << "\n";
    return EXIT_EQUIV;
}

int cmd_graph(const std::string& input, bool canonical, const std::string& dot_out,
              const std::string& fmt) {
    auto lp = read_lp(input, fmt);
    dualkit::BipartiteLpGraph g =
        canonical
            ? dualkit::build_graph(dualkit::canonicalize(lp).lp,
                                   dualkit::GraphMode::CANONICAL)
            : dualkit::build_graph(lp, dualkit::GraphMode::NGED_COMPAT);
    const std::string dot = dualkit::export_dot(g);
    if (dot_out.empty() || dot_out == "-")
        std::cout << dot;
    else
        write_file(dot_out, dot);
    return EXIT_EQUIV;
}

// Batch report over a generated dataset: each stored dual is checked
// against the recomputed ground truth; aggregates follow from the rows.
int cmd_report(const std::string& dir) {
    ordered_json rows = ordered_json::array();
    int n = 0, cged_zero = 0, nged_zero = 0, obj_ok = 0, failures = 0;
    std::vector<fs::path> sample_dirs;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_directory()) sample_dirs.push_back(e.path());
    std::sort(sample_dirs.begin(), sample_dirs.end());
    for (const auto& sdir : sample_dirs) {
        ordered_json row;
        row["id"] = sdir.filename().string();
        try {
            auto primal = read_lp(sdir / "primal.mps", "mps");
            auto stored = read_lp(sdir / "dual.mps", "mps");
            auto truth = dualkit::dualize_checked(primal).dual;
            auto v = dualkit::verdict(stored, truth);
            row["cged"] = v.cged;
            row["nged"] = v.nged;
            row["obj_match"] = v.obj;
            row["equivalent"] = v.equivalent;
            ++n;
            if (v.cged <= dualkit::tol::atol()) ++cged_zero;
            if (v.nged <= dualkit::tol::atol()) ++nged_zero;
            if (v.obj) ++obj_ok;
        } catch (const std::exception& e) {
            row["error"] = e.what();
            ++failures;
        } catch (const CliError& e) {
            row["error"] = e.message;
            ++failures;
        }
        rows.push_back(std::move(row));
    }
    ordered_json j;
    j["version"] = "dualkit-report/1";
    j["rows"] = std::move(rows);
    j["aggregates"] = {{"samples", n},
                       {"failures", failures},
                       {"cged_accuracy", n ? double(cged_zero) / n : 0.0},
                       {"nged_accuracy", n ? double(nged_zero) / n : 0.0},
                       {"obj_accuracy", n ? double(obj_ok) / n : 0.0}};
    std::cout << j.dump(2) << "\n";
    return failures == 0 ? EXIT_EQUIV : EXIT_NOT_EQUIV;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* atol_env = std::getenv("DUALKIT_ATOL"))
        dualkit::tol::set_atol(std::atof(atol_env));

    CLI::App app{"dualkit: LP dualization, canonicalization and equivalence metrics"};
    app.require_subcommand(1);

    std::string input, truth, out, method = "checked", metric = "all";
    std::string in_fmt, out_fmt, error_type, config, dot_out;
    std::uint64_t seed = 1;
    bool as_json = false, canonical = false;

    auto* dualize = app.add_subcommand("dualize", "Write the dual of an LP");
    dualize->add_option("input", input)->required();
    dualize->add_option("--method", method)->check(CLI::IsMember({"sf", "sob", "checked"}));
    dualize->add_option("--out", out);
    dualize->add_option("--format", in_fmt)->check(CLI::IsMember({"mps", "json"}));
    dualize->add_option("--out-format", out_fmt)->check(CLI::IsMember({"mps", "json"}));

    auto* check = app.add_subcommand("check", "Compare a candidate LP against a truth LP");
    check->add_option("candidate", input)->required();
    check->add_option("truth", truth)->required();
    check->add_option("--metric", metric)
        ->check(CLI::IsMember({"cged", "nged", "obj", "all"}));
    check->add_flag("--json", as_json);
    check->add_option("--format", in_fmt)->check(CLI::IsMember({"mps", "json"}));

    auto* inject = app.add_subcommand("inject", "Inject one labeled formulation error");
    inject->add_option("input", input)->required();
    inject->add_option("--error", error_type)->required();
    inject->add_option("--seed", seed);
    inject->add_option("--out", out);
    inject->add_option("--format", in_fmt)->check(CLI::IsMember({"mps", "json"}));

    auto* gen = app.add_subcommand("gen", "Generate a primal/dual/error dataset");
    gen->add_option("--config", config);
    gen->add_option("--out", out)->required();

    auto* solve = app.add_subcommand("solve", "Solve an LP with the built-in simplex");
    solve->add_option("input", input)->required();
    solve->add_option("--format", in_fmt)->check(CLI::IsMember({"mps", "json"}));

    auto* graph = app.add_subcommand("graph", "Export the bipartite LP graph as DOT");
    graph->add_option("input", input)->required();
    graph->add_flag("--canonical", canonical);
    graph->add_option("--dot", dot_out);
    graph->add_option("--format", in_fmt)->check(CLI::IsMember({"mps", "json"}));

    auto* report = app.add_subcommand("report", "Re-verify a dataset and print a report");
    report->add_option("dir", input)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dualize->parsed()) return cmd_dualize(input, method, out, in_fmt, out_fmt);
        if (check->parsed()) return cmd_check(input, truth, metric, as_json, in_fmt);
        if (inject->parsed()) return cmd_inject(input, error_type, seed, out, in_fmt);
        if (gen->parsed()) return cmd_gen(config, out);
        if (solve->parsed()) return cmd_solve(input, in_fmt);
        if (graph->parsed()) return cmd_graph(input, canonical, dot_out, in_fmt);
        if (report->parsed()) return cmd_report(input);
    } catch (const CliError& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const dualkit::MethodDisagreement& e) {
        std::cerr << e.what() << "\n";
        return EXIT_DISAGREE;
    } catch (const dualkit::GedBudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return EXIT_BUDGET;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return EXIT_MODULE;
    }
    return EXIT_EQUIV;
}
