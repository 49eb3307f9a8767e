#include "dualkit/mps.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace dualkit {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

double parse_number(const std::string& tok, int line) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line, "expected a number, got '" + tok + "'");
    return v;
}

enum Section { NONE, NAME, OBJSENSE, ROWS, COLUMNS, RHS, RANGES, BOUNDS, ENDATA };

struct RowInfo {
    char type;  // 'N','L','G','E'
    int order;  // position among non-objective rows
};

}  // namespace

LinearProgram parse_mps(const std::string& text) {
    LinearProgram lp;
    std::map<std::string, RowInfo> rows;
    std::string obj_row;
    std::vector<std::string> row_order;
    std::map<std::string, int> var_index;
    std::map<std::string, std::map<std::string, double>> col_entries;  // row -> (var -> coef)
    std::map<std::string, double> obj_entries;
    std::map<std::string, double> rhs_map;
    double obj_rhs = 0.0;
    std::map<std::string, double> range_map;
    struct BoundSpec { std::optional<double> lower, upper; std::vector<std::string> codes; };
    std::map<std::string, BoundSpec> bounds;

    Section section = NONE;
    bool pending_objsense_value = false;
    bool saw_endata = false;
    std::istringstream input(text);
    std::string line;
    int lineno = 0;

    auto require_order = [&](Section next, int ln) {
        if (saw_endata) throw ParseError(ln, "content after ENDATA");
        if (next <= section)
            throw ParseError(ln, "section out of order");
        section = next;
    };
    auto set_objsense = [&](const std::string& tok, int ln) {
        if (tok == "MAX" || tok == "MAXIMIZE")
            lp.objective_sense = ObjectiveSense::MAXIMIZE;
        else if (tok == "MIN" || tok == "MINIMIZE")
            lp.objective_sense = ObjectiveSense::MINIMIZE;
        else
            throw ParseError(ln, "unknown objective sense '" + tok + "'");
    };

    while (std::getline(input, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '*') continue;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];

        if (head == "NAME") {
            require_order(NAME, lineno);
            continue;  // document name ignored
        }
        if (head == "OBJSENSE") {
            require_order(OBJSENSE, lineno);
            if (toks.size() > 1)
                set_objsense(toks[1], lineno);
            else
                pending_objsense_value = true;
            continue;
        }
        if (head == "ROWS") { require_order(ROWS, lineno); continue; }
        if (head == "COLUMNS") { require_order(COLUMNS, lineno); continue; }
        if (head == "RHS") { require_order(RHS, lineno); continue; }
        if (head == "RANGES") { require_order(RANGES, lineno); continue; }
        if (head == "BOUNDS") { require_order(BOUNDS, lineno); continue; }
        if (head == "ENDATA") {
            if (section < ROWS) throw ParseError(lineno, "ENDATA before ROWS");
            saw_endata = true;
            section = ENDATA;
            continue;
        }

        if (saw_endata) throw ParseError(lineno, "content after ENDATA");

        switch (section) {
            case OBJSENSE: {
                if (!pending_objsense_value)
                    throw ParseError(lineno, "unexpected data in OBJSENSE section");
                set_objsense(head, lineno);
                pending_objsense_value = false;
                break;
            }
            case ROWS: {
                if (toks.size() != 2) throw ParseError(lineno, "ROWS entry needs type and name");
                char type;
                if (head == "N") type = 'N';
                else if (head == "L") type = 'L';
                else if (head == "G") type = 'G';
                else if (head == "E") type = 'E';
                else throw ParseError(lineno, "unknown row type '" + head + "'");
                const std::string& rname = toks[1];
                if (rows.count(rname)) throw ParseError(lineno, "duplicate row '" + rname + "'");
                if (type == 'N') {
                    if (!obj_row.empty()) throw ParseError(lineno, "more than one objective (N) row");
                    obj_row = rname;
                    rows[rname] = {type, -1};
                } else {
                    rows[rname] = {type, static_cast<int>(row_order.size())};
                    row_order.push_back(rname);
                }
                break;
            }
            case COLUMNS: {
                if (toks.size() < 3 || toks.size() % 2 == 0)
                    throw ParseError(lineno, "COLUMNS entry needs column then row/value pairs");
                const std::string& col = head;
                if (!var_index.count(col)) {
                    var_index[col] = static_cast<int>(lp.variables.size());
                    lp.variables.push_back({col, 0.0, kInf});
                }
                for (size_t i = 1; i + 1 < toks.size(); i += 2) {
                    const std::string& rname = toks[i];
                    double v = parse_number(toks[i + 1], lineno);
                    auto it = rows.find(rname);
                    if (it == rows.end())
                        throw ParseError(lineno, "unknown row '" + rname + "'");
                    if (it->second.type == 'N')
                        obj_entries[col] += v;
                    else
                        col_entries[rname][col] += v;
                }
                break;
            }
            case RHS: {
                // Optional set name: present when the first token is not a row.
                size_t start = rows.count(head) ? 0 : 1;
                if ((toks.size() - start) % 2 != 0 || toks.size() - start == 0)
                    throw ParseError(lineno, "RHS entry needs row/value pairs");
                for (size_t i = start; i + 1 < toks.size(); i += 2) {
                    const std::string& rname = toks[i];
                    double v = parse_number(toks[i + 1], lineno);
                    auto it = rows.find(rname);
                    if (it == rows.end())
                        throw ParseError(lineno, "unknown row '" + rname + "'");
                    if (it->second.type == 'N')
                        obj_rhs = v;
                    else
                        rhs_map[rname] = v;
                }
                break;
            }
            case RANGES: {
                size_t start = rows.count(head) ? 0 : 1;
                if ((toks.size() - start) % 2 != 0 || toks.size() - start == 0)
                    throw ParseError(lineno, "RANGES entry needs row/value pairs");
                for (size_t i = start; i + 1 < toks.size(); i += 2) {
                    const std::string& rname = toks[i];
                    double v = parse_number(toks[i + 1], lineno);
                    auto it = rows.find(rname);
                    if (it == rows.end() || it->second.type == 'N')
                        throw ParseError(lineno, "unknown row '" + rname + "'");
                    range_map[rname] = v;
                }
                break;
            }
            case BOUNDS: {
                const std::string& code = head;
                bool has_value = code == "LO" || code == "UP" || code == "FX";
                bool is_flag = code == "FR" || code == "MI" || code == "PL";
                if (!has_value && !is_flag)
                    throw ParseError(lineno, "unknown bound code '" + code + "'");
                std::string col;
                double value = 0.0;
                size_t expect = has_value ? 3 : 2;  // without set name
                if (toks.size() == expect) {
                    col = toks[1];
                    if (has_value) value = parse_number(toks[2], lineno);
                } else if (toks.size() == expect + 1) {
                    col = toks[2];
                    if (has_value) value = parse_number(toks[3], lineno);
                } else {
                    throw ParseError(lineno, "malformed BOUNDS entry");
                }
                if (!var_index.count(col))
                    throw ParseError(lineno, "unknown column '" + col + "'");
                BoundSpec& b = bounds[col];
                for (const auto& prev : b.codes)
                    if (prev == code)
                        throw ParseError(lineno, "duplicate bound code " + code + " for '" + col + "'");
                b.codes.push_back(code);
                if (code == "LO") b.lower = value;
                else if (code == "UP") b.upper = value;
                else if (code == "FX") { b.lower = value; b.upper = value; }
                else if (code == "FR") { b.lower = -kInf; b.upper = kInf; }
                else if (code == "MI") b.lower = -kInf;
                else b.upper = kInf;  // PL
                break;
            }
            default:
                throw ParseError(lineno, "data outside any section");
        }
    }
    if (!saw_endata) throw ParseError(lineno, "missing ENDATA");
    if (obj_row.empty()) throw ParseError(lineno, "missing objective (N) row");

    lp.objective = pruned(SparseVec(obj_entries.begin(), obj_entries.end()));
    lp.objective_constant = -obj_rhs;

    for (const auto& rname : row_order) {
        const RowInfo& info = rows[rname];
        LinearConstraint c;
        c.name = rname;
        if (auto it = col_entries.find(rname); it != col_entries.end())
            c.coefficients = pruned(SparseVec(it->second.begin(), it->second.end()));
        c.sense = info.type == 'L' ? ConstraintSense::LEQ
                : info.type == 'G' ? ConstraintSense::GEQ
                                   : ConstraintSense::EQ;
        double b = rhs_map.count(rname) ? rhs_map[rname] : 0.0;
        c.rhs = b;

        auto rit = range_map.find(rname);
        if (rit == range_map.end()) {
            lp.constraints.push_back(std::move(c));
            continue;
        }
        // RANGES expansion: row becomes the interval [lo, hi].
        const double r = rit->second;
        double lo, hi;
        if (info.type == 'L') { lo = b - std::abs(r); hi = b; }
        else if (info.type == 'G') { lo = b; hi = b + std::abs(r); }
        else { lo = r >= 0 ? b : b + r; hi = r >= 0 ? b + r : b; }

        LinearConstraint main = c, extra = c;
        if (info.type == 'L') {
            main.rhs = hi;
            extra.name = rname + "_lo";
            extra.sense = ConstraintSense::GEQ;
            extra.rhs = lo;
        } else if (info.type == 'G') {
            main.rhs = lo;
            extra.name = rname + "_hi";
            extra.sense = ConstraintSense::LEQ;
            extra.rhs = hi;
        } else {
            main.sense = ConstraintSense::GEQ;
            main.rhs = lo;
            extra.name = rname + "_hi";
            extra.sense = ConstraintSense::LEQ;
            extra.rhs = hi;
        }
        lp.constraints.push_back(std::move(main));
        lp.constraints.push_back(std::move(extra));
    }

    for (const auto& [col, b] : bounds) {
        Variable& v = lp.variables[var_index[col]];
        if (b.lower) v.lower = *b.lower;
        if (b.upper) v.upper = *b.upper;
    }
    return lp;
}

std::string write_mps(const LinearProgram& lp) {
    // Objective row name chosen to avoid clashing with constraint names.
    std::string obj_row = "OBJ";
    while (lp.find_constraint(obj_row)) obj_row += "_";

    std::ostringstream os;
    os << "NAME lp\n";
    if (lp.objective_sense == ObjectiveSense::MAXIMIZE)
        os << "OBJSENSE\n    MAX\n";
    os << "ROWS\n";
    os << " N " << obj_row << "\n";
    for (const auto& c : lp.constraints) {
        char t = c.sense == ConstraintSense::LEQ ? 'L'
               : c.sense == ConstraintSense::GEQ ? 'G' : 'E';
        os << " " << t << " " << c.name << "\n";
    }
    os << "COLUMNS\n";
    for (const auto& v : lp.variables) {
        bool wrote = false;
        if (auto it = lp.objective.find(v.name); it != lp.objective.end()) {
            os << "    " << v.name << " " << obj_row << " " << fmt17(it->second) << "\n";
            wrote = true;
        }
        for (const auto& c : lp.constraints)
            if (auto it = c.coefficients.find(v.name); it != c.coefficients.end()) {
                os << "    " << v.name << " " << c.name << " " << fmt17(it->second) << "\n";
                wrote = true;
            }
        if (!wrote)  // keep the column declared so the variable survives a round trip
            os << "    " << v.name << " " << obj_row << " 0\n";
    }
    os << "RHS\n";
    if (lp.objective_constant != 0.0)
        os << "    rhs " << obj_row << " " << fmt17(-lp.objective_constant) << "\n";
    for (const auto& c : lp.constraints)
        if (c.rhs != 0.0)
            os << "    rhs " << c.name << " " << fmt17(c.rhs) << "\n";

    std::ostringstream bs;
    for (const auto& v : lp.variables) {
        const bool lo_inf = std::isinf(v.lower), up_inf = std::isinf(v.upper);
        if (v.lower == 0.0 && up_inf) continue;  // MPS default
        if (lo_inf && up_inf) {
            bs << " FR BND " << v.name << "\n";
        } else if (lo_inf) {
            bs << " MI BND " << v.name << "\n";
            bs << " UP BND " << v.name << " " << fmt17(v.upper) << "\n";
        } else if (v.lower == v.upper) {
            bs << " FX BND " << v.name << " " << fmt17(v.lower) << "\n";
        } else {
            if (v.lower != 0.0)
                bs << " LO BND " << v.name << " " << fmt17(v.lower) << "\n";
            if (!up_inf)
                bs << " UP BND " << v.name << " " << fmt17(v.upper) << "\n";
        }
    }
    if (!bs.str().empty()) os << "BOUNDS\n" << bs.str();
    os << "ENDATA\n";
    return os.str();
}

}  // namespace dualkit
