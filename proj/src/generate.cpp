#include "dualkit/generate.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "dualkit/dualize.hpp"
#include "dualkit/mps.hpp"
#include <json.hpp>

namespace dualkit {

namespace {

struct Facet {
    double a1, a2, rhs;  // a1*x1 + a2*x2 <= rhs
};

// 36 polytopes in the nonnegative quadrant: k-gon caps at three
// scales/offsets (1-18), boxes (19-22), simplices (23-25), irregular
// clipped polygons (26-36). Every shape is bounded and has (0.5, 0.5)
// in its interior.
std::vector<Facet> shape_facets(int shape) {
    if (shape >= 1 && shape <= 18) {
        static constexpr double dirs[8][2] = {{1, 1}, {1, 0}, {0, 1}, {2, 1},
                                              {1, 2}, {3, 1}, {1, 3}, {4, 1}};
        const int k = 3 + (shape - 1) / 3;   // 3..8 cap directions
        const int variant = (shape - 1) % 3;
        std::vector<Facet> out;
        for (int i = 0; i < k; ++i) {
            const double a1 = dirs[i][0], a2 = dirs[i][1];
            double rhs = a1 + a2;
            if (variant == 1) rhs *= 2;
            if (variant == 2) rhs += i;
            out.push_back({a1, a2, rhs});
        }
        return out;
    }
    switch (shape) {
        case 19: return {{1, 0, 1}, {0, 1, 1}};  // unit square
        case 20: return {{1, 0, 2}, {0, 1, 1}};
        case 21: return {{2, 0, 3}, {0, 2, 5}};
        case 22: return {{1, 0, 1}, {0, 1, 1}, {2, 2, 3}};
        case 23: return {{1, 1, 1}};  // simplices
        case 24: return {{1, 2, 2}};
        case 25: return {{2, 1, 2}};
        case 26: return {{1, 1, 4}, {2, 1, 5}, {1, 3, 6}, {1, 0, 2}, {0, 1, 2}, {3, 2, 8}};
        case 27:
            return {{1, 1, 3},  {-1, 1, 1}, {1, -1, 1}, {1, 0, 2},
                    {0, 1, 2},  {2, 3, 7},  {3, 2, 7}};
        case 28:
            return {{3, 1, 6}, {1, 3, 6}, {1, 1, 3}, {2, 1, 5}, {1, 2, 5}, {1, 0, 2}};
        case 29:
            return {{1, 1, 5}, {-1, 2, 4}, {2, -1, 4}, {1, 0, 3},
                    {0, 1, 3}, {3, 2, 9},  {2, 3, 9},  {4, 3, 13}};
        case 30:
            return {{1, 2, 6}, {2, 1, 6}, {1, 1, 4}, {-1, 1, 2}, {1, -1, 2},
                    {1, 0, 3}, {0, 1, 3}};
        case 31:
            return {{1, 1, 6}, {1, 2, 8},  {2, 1, 8}, {1, 3, 9},
                    {3, 1, 9}, {1, 4, 10}, {4, 1, 10}, {1, 0, 4}};
        case 32:
            return {{1, 1, 4}, {-2, 1, 2}, {1, -2, 2}, {1, 0, 3},
                    {0, 1, 3}, {2, 1, 6},  {1, 2, 6},  {3, 4, 12}};
        case 33:
            return {{1, 1, 7},  {1, 0, 5},  {0, 1, 5},  {2, 1, 9},  {1, 2, 9},
                    {3, 1, 11}, {1, 3, 11}, {-1, 1, 3}, {1, -1, 3}, {4, 4, 25}};
        case 34:
            return {{1, 1, 5},  {1, 0, 4},  {0, 1, 4},  {2, 1, 7},
                    {1, 2, 7},  {3, 2, 10}, {2, 3, 10}, {4, 1, 12},
                    {1, 4, 12}, {5, 5, 26}, {5, 4, 24}};
        case 35:
            return {{1, 1, 6},  {1, 0, 5},  {0, 1, 5},  {2, 1, 8},
                    {1, 2, 8},  {3, 1, 10}, {1, 3, 10}, {-1, 2, 5},
                    {2, -1, 5}, {4, 3, 15}, {3, 4, 15}};
        default:  // 36
            return {{1, 1, 8},  {1, 0, 6},  {0, 1, 6},  {2, 1, 10},
                    {1, 2, 10}, {3, 1, 12}, {1, 3, 12}, {4, 1, 14},
                    {1, 4, 14}, {-1, 1, 4}, {1, -1, 4}, {5, 4, 22}};
    }
}

constexpr double kObjectives[3][2] = {{1, 1}, {2, -1}, {-1, 3}};

std::string pad(int n, int width) {
    std::string s = std::to_string(n);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

}  // namespace

LinearProgram gen_2d(int shape, int objective) {
    if (shape < 1 || shape > kNum2dShapes)
        throw std::out_of_range("shape id " + std::to_string(shape) + " not in 1..36");
    if (objective < 1 || objective > kNum2dObjectives)
        throw std::out_of_range("objective id " + std::to_string(objective) +
                                " not in 1..3");
    LinearProgram lp;
    lp.objective_sense = ObjectiveSense::MAXIMIZE;
    lp.variables = {{"x1", 0.0, kInf}, {"x2", 0.0, kInf}};
    const double* obj = kObjectives[objective - 1];
    if (obj[0] != 0) lp.objective["x1"] = obj[0];
    if (obj[1] != 0) lp.objective["x2"] = obj[1];
    int i = 0;
    for (const Facet& f : shape_facets(shape)) {
        LinearConstraint c;
        c.name = "c" + std::to_string(++i);
        if (f.a1 != 0) c.coefficients["x1"] = f.a1;
        if (f.a2 != 0) c.coefficients["x2"] = f.a2;
        c.sense = ConstraintSense::LEQ;
        c.rhs = f.rhs;
        lp.constraints.push_back(std::move(c));
    }
    return lp;
}

const char* to_string(CoFamily f) {
    switch (f) {
        case CoFamily::MAX_INDEPENDENT_SET: return "max_independent_set";
        case CoFamily::MULTIDIM_KNAPSACK: return "multidim_knapsack";
        case CoFamily::MAX_CUT: return "max_cut";
        case CoFamily::MAX_CLIQUE: return "max_clique";
        case CoFamily::MIN_VERTEX_COVER: return "min_vertex_cover";
        case CoFamily::PACKING: return "packing";
        default: return "production_planning";
    }
}

const char* to_string(SampleSource s) {
    switch (s) {
        case SampleSource::TWO_D: return "2d";
        case SampleSource::CO_SMALL: return "co_small";
        default: return "imported";
    }
}

namespace {

int clamp_size(int size, int lo, int hi) {
    if (size < lo || size > hi)
        throw std::out_of_range("size " + std::to_string(size) + " not in " +
                                std::to_string(lo) + ".." + std::to_string(hi));
    return size;
}

using Rng = std::mt19937_64;

std::vector<std::pair<int, int>> random_edges(int n, Rng& rng, size_t max_edges) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 2 == 0) edges.emplace_back(i, j);
    if (edges.empty()) edges.emplace_back(0, 1);
    if (edges.size() > max_edges) edges.resize(max_edges);
    return edges;
}

void add_binary_vars(LinearProgram& lp, int n, const char* prefix = "x") {
    for (int i = 1; i <= n; ++i)
        lp.variables.push_back({prefix + std::to_string(i), 0.0, 1.0});
}

LinearConstraint pair_row(const std::string& name, int u, int v,
                          ConstraintSense sense, double rhs) {
    LinearConstraint c;
    c.name = name;
    c.coefficients["x" + std::to_string(u + 1)] = 1.0;
    c.coefficients["x" + std::to_string(v + 1)] = 1.0;
    c.sense = sense;
    c.rhs = rhs;
    return c;
}

}  // namespace

LinearProgram gen_co(CoFamily family, int size, std::uint64_t seed) {
    Rng rng(seed);
    LinearProgram lp;
    lp.objective_sense = ObjectiveSense::MAXIMIZE;
    switch (family) {
        case CoFamily::MAX_INDEPENDENT_SET: {
            const int n = clamp_size(size, 3, 5);
            add_binary_vars(lp, n);
            for (int i = 1; i <= n; ++i) lp.objective["x" + std::to_string(i)] = 1.0;
            int e = 0;
            for (auto [u, v] : random_edges(n, rng, 6))
                lp.constraints.push_back(
                    pair_row("e" + std::to_string(++e), u, v, ConstraintSense::LEQ, 1.0));
            break;
        }
        case CoFamily::MULTIDIM_KNAPSACK: {
            const int n = clamp_size(size, 1, 5);
            const int m = 1 + static_cast<int>(rng() % 3);
            add_binary_vars(lp, n);
            for (int i = 1; i <= n; ++i)
                lp.objective["x" + std::to_string(i)] = 1.0 + static_cast<double>(rng() % 9);
            for (int r = 1; r <= m; ++r) {
                LinearConstraint c;
                c.name = "cap" + std::to_string(r);
                double sum = 0, maxw = 0;
                for (int i = 1; i <= n; ++i) {
                    const double w = 1.0 + static_cast<double>(rng() % 5);
                    c.coefficients["x" + std::to_string(i)] = w;
                    sum += w;
                    maxw = std::max(maxw, w);
                }
                c.sense = ConstraintSense::LEQ;
                c.rhs = std::max(maxw, std::floor(sum / 2));
                lp.constraints.push_back(std::move(c));
            }
            break;
        }
        case CoFamily::MAX_CUT: {
            clamp_size(size, 2, 3);  // triangle graph, two random edges
            static constexpr int tri[3][2] = {{0, 1}, {1, 2}, {0, 2}};
            const int first = static_cast<int>(rng() % 3);
            const int second = (first + 1 + static_cast<int>(rng() % 2)) % 3;
            add_binary_vars(lp, 3);
            int e = 0;
            for (int ei : {first, second}) {
                const std::string z = "z" + std::to_string(++e);
                lp.variables.push_back({z, 0.0, 1.0});
                lp.objective[z] = 1.0 + static_cast<double>(rng() % 3);
                const std::string xu = "x" + std::to_string(tri[ei][0] + 1);
                const std::string xv = "x" + std::to_string(tri[ei][1] + 1);
                LinearConstraint lo;  // z_e <= x_u + x_v
                lo.name = "cut" + std::to_string(e) + "a";
                lo.coefficients = {{z, 1.0}, {xu, -1.0}, {xv, -1.0}};
                lo.sense = ConstraintSense::LEQ;
                lo.rhs = 0.0;
                LinearConstraint hi;  // z_e <= 2 - x_u - x_v
                hi.name = "cut" + std::to_string(e) + "b";
                hi.coefficients = {{z, 1.0}, {xu, 1.0}, {xv, 1.0}};
                hi.sense = ConstraintSense::LEQ;
                hi.rhs = 2.0;
                lp.constraints.push_back(std::move(lo));
                lp.constraints.push_back(std::move(hi));
            }
            break;
        }
        case CoFamily::MAX_CLIQUE: {
            const int n = clamp_size(size, 3, 5);
            add_binary_vars(lp, n);
            for (int i = 1; i <= n; ++i) lp.objective["x" + std::to_string(i)] = 1.0;
            // Rows are the complement graph's edges.
            auto edges = random_edges(n, rng, n * (n - 1) / 2);
            auto has_edge = [&](int u, int v) {
                for (auto [a, b] : edges)
                    if (a == u && b == v) return true;
                return false;
            };
            std::vector<std::pair<int, int>> non_edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!has_edge(i, j)) non_edges.emplace_back(i, j);
            if (non_edges.empty()) non_edges.assign({edges.back()});
            if (non_edges.size() > 6) non_edges.resize(6);
            int e = 0;
            for (auto [u, v] : non_edges)
                lp.constraints.push_back(pair_row("ne" + std::to_string(++e), u, v,
                                                  ConstraintSense::LEQ, 1.0));
            break;
        }
        case CoFamily::MIN_VERTEX_COVER: {
            const int n = clamp_size(size, 3, 5);
            lp.objective_sense = ObjectiveSense::MINIMIZE;
            add_binary_vars(lp, n);
            for (int i = 1; i <= n; ++i)
                lp.objective["x" + std::to_string(i)] = 1.0 + static_cast<double>(rng() % 3);
            int e = 0;
            for (auto [u, v] : random_edges(n, rng, 6))
                lp.constraints.push_back(
                    pair_row("e" + std::to_string(++e), u, v, ConstraintSense::GEQ, 1.0));
            break;
        }
        case CoFamily::PACKING: {
            const int n = clamp_size(size, 1, 4);
            const int m = 2 + static_cast<int>(rng() % 2);
            for (int i = 1; i <= n; ++i) {
                lp.variables.push_back({"x" + std::to_string(i), 0.0, kInf});
                lp.objective["x" + std::to_string(i)] = 1.0 + static_cast<double>(rng() % 5);
            }
            std::vector<LinearConstraint> rows(m);
            for (int r = 0; r < m; ++r) {
                rows[r].name = "r" + std::to_string(r + 1);
                rows[r].sense = ConstraintSense::LEQ;
                rows[r].rhs = 4.0 + static_cast<double>(rng() % 6);
                for (int i = 1; i <= n; ++i) {
                    const double a = static_cast<double>(rng() % 4);
                    if (a != 0) rows[r].coefficients["x" + std::to_string(i)] = a;
                }
            }
            // keep the program bounded: every column needs a positive entry
            for (int i = 1; i <= n; ++i) {
                const std::string x = "x" + std::to_string(i);
                bool covered = false;
                for (const auto& r : rows) covered = covered || r.coefficients.count(x);
                if (!covered) rows[0].coefficients[x] = 1.0 + static_cast<double>(rng() % 3);
            }
            lp.constraints = std::move(rows);
            break;
        }
        case CoFamily::PRODUCTION_PLANNING: {
            const int p = clamp_size(size, 2, 3);
            for (int i = 1; i <= p; ++i) {
                lp.variables.push_back({"x" + std::to_string(i), 0.0, kInf});
                lp.objective["x" + std::to_string(i)] = 2.0 + static_cast<double>(rng() % 8);
            }
            for (int r = 1; r <= 2; ++r) {
                LinearConstraint c;
                c.name = "res" + std::to_string(r);
                for (int i = 1; i <= p; ++i)
                    c.coefficients["x" + std::to_string(i)] =
                        1.0 + static_cast<double>(rng() % 4);
                c.sense = ConstraintSense::LEQ;
                c.rhs = 10.0 + static_cast<double>(rng() % 20);
                lp.constraints.push_back(std::move(c));
            }
            break;
        }
    }
    return lp;
}

namespace {

DatasetSample make_sample(std::string id, SampleSource source, LinearProgram primal) {
    DatasetSample s;
    s.id = std::move(id);
    s.source = source;
    s.dual = dualize_checked(primal).dual;
    s.primal = std::move(primal);
    return s;
}

}  // namespace

std::vector<DatasetSample> gen_dataset(const GenConfig& config) {
    std::vector<DatasetSample> samples;
    if (config.two_d)
        for (int shape = 1; shape <= kNum2dShapes; ++shape)
            for (int obj = 1; obj <= kNum2dObjectives; ++obj)
                samples.push_back(make_sample("2d_s" + pad(shape, 2) + "_o" +
                                                  std::to_string(obj),
                                              SampleSource::TWO_D,
                                              gen_2d(shape, obj)));
    for (int i = 0; i < config.co_count; ++i) {
        const CoFamily family = kAllCoFamilies[i % 7];
        const bool pair_based = family == CoFamily::MAX_INDEPENDENT_SET ||
                                family == CoFamily::MAX_CLIQUE ||
                                family == CoFamily::MIN_VERTEX_COVER;
        const int size = (pair_based ? 3 : 2) + (i / 7) % 2;
        samples.push_back(make_sample("co_" + pad(i, 3) + "_" + to_string(family),
                                      SampleSource::CO_SMALL,
                                      gen_co(family, size, config.co_seed + i)));
    }
    for (size_t si = 0; si < samples.size(); ++si)
        for (size_t ti = 0; ti < config.error_types.size(); ++ti)
            samples[si].erroneous_duals.push_back(
                inject(samples[si].dual, config.error_types[ti],
                       config.error_seed + 1000003 * si + 9973 * ti));
    return samples;
}

IngestResult ingest(const std::vector<std::filesystem::path>& lp_files,
                    const std::string& source_tag) {
    IngestResult out;
    for (const auto& path : lp_files) {
        try {
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot open file");
            std::ostringstream buf;
            buf << in.rdbuf();
            LinearProgram lp = path.extension() == ".json" ? parse_json(buf.str())
                                                           : parse_mps(buf.str());
            out.samples.push_back(make_sample(source_tag + "_" + path.stem().string(),
                                              SampleSource::IMPORTED, std::move(lp)));
        } catch (const std::exception& e) {
            out.skipped.emplace_back(path.string(), e.what());
        }
    }
    return out;
}

void write_dataset(const std::vector<DatasetSample>& samples,
                   const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    auto dump = [](const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        out << text;
    };
    nlohmann::ordered_json manifest;
    manifest["version"] = "dualkit-dataset/1";
    manifest["samples"] = nlohmann::ordered_json::array();
    for (const auto& s : samples) {
        const fs::path sdir = dir / s.id;
        fs::create_directories(sdir);
        dump(sdir / "primal.mps", write_mps(s.primal));
        dump(sdir / "dual.mps", write_mps(s.dual));
        nlohmann::ordered_json entry;
        entry["id"] = s.id;
        entry["source"] = to_string(s.source);
        entry["errors"] = nlohmann::ordered_json::array();
        if (!s.erroneous_duals.empty()) fs::create_directories(sdir / "errors");
        for (const auto& rec : s.erroneous_duals) {
            dump(sdir / "errors" / (std::string(to_string(rec.error)) + ".mps"),
                 write_mps(rec.mutated));
            entry["errors"].push_back({{"type", to_string(rec.error)},
                                       {"location", rec.location},
                                       {"seed", rec.seed},
                                       {"attempts", rec.attempts}});
        }
        manifest["samples"].push_back(std::move(entry));
    }
    dump(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace dualkit
