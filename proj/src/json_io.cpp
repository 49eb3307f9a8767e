#include <json.hpp>

#include "dualkit/mps.hpp"

namespace dualkit {

namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "dualkit-lp/1";

json bound_to_json(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double bound_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw JsonError(path, "expected a number or \"inf\"/\"-inf\"");
    }
    if (!j.is_number()) throw JsonError(path, "expected a number or \"inf\"/\"-inf\"");
    return j.get<double>();
}

void check_fields(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok) throw JsonError(path + "/" + key, "unknown field");
    }
}

const json& field(const json& obj, const std::string& path, const char* name) {
    auto it = obj.find(name);
    if (it == obj.end()) throw JsonError(path + "/" + name, "missing field");
    return *it;
}

SparseVec coeffs_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw JsonError(path, "expected an object");
    SparseVec out;
    for (const auto& [key, val] : j.items()) {
        if (!val.is_number()) throw JsonError(path + "/" + key, "expected a number");
        out[key] = val.get<double>();
    }
    return pruned(std::move(out));
}

}  // namespace

LinearProgram parse_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw JsonError("", e.what());
    }
    if (!j.is_object()) throw JsonError("", "expected a JSON object");
    check_fields(j, "", {"version", "objective_sense", "objective_constant",
                         "objective", "variables", "constraints"});
    if (field(j, "", "version").get<std::string>() != kSchemaVersion)
        throw JsonError("/version", "unsupported schema version");

    LinearProgram lp;
    const auto sense = field(j, "", "objective_sense").get<std::string>();
    if (sense == "min") lp.objective_sense = ObjectiveSense::MINIMIZE;
    else if (sense == "max") lp.objective_sense = ObjectiveSense::MAXIMIZE;
    else throw JsonError("/objective_sense", "expected \"min\" or \"max\"");

    const json& k = field(j, "", "objective_constant");
    if (!k.is_number()) throw JsonError("/objective_constant", "expected a number");
    lp.objective_constant = k.get<double>();
    lp.objective = coeffs_from_json(field(j, "", "objective"), "/objective");

    const json& vars = field(j, "", "variables");
    if (!vars.is_array()) throw JsonError("/variables", "expected an array");
    for (size_t i = 0; i < vars.size(); ++i) {
        const std::string path = "/variables/" + std::to_string(i);
        const json& v = vars[i];
        if (!v.is_object()) throw JsonError(path, "expected an object");
        check_fields(v, path, {"name", "lower", "upper"});
        lp.variables.push_back({field(v, path, "name").get<std::string>(),
                                bound_from_json(field(v, path, "lower"), path + "/lower"),
                                bound_from_json(field(v, path, "upper"), path + "/upper")});
    }

    const json& cons = field(j, "", "constraints");
    if (!cons.is_array()) throw JsonError("/constraints", "expected an array");
    for (size_t i = 0; i < cons.size(); ++i) {
        const std::string path = "/constraints/" + std::to_string(i);
        const json& c = cons[i];
        if (!c.is_object()) throw JsonError(path, "expected an object");
        check_fields(c, path, {"name", "coefs", "sense", "rhs"});
        LinearConstraint lc;
        lc.name = field(c, path, "name").get<std::string>();
        lc.coefficients = coeffs_from_json(field(c, path, "coefs"), path + "/coefs");
        const auto s = field(c, path, "sense").get<std::string>();
        if (s == "<=") lc.sense = ConstraintSense::LEQ;
        else if (s == ">=") lc.sense = ConstraintSense::GEQ;
        else if (s == "=") lc.sense = ConstraintSense::EQ;
        else throw JsonError(path + "/sense", "expected \"<=\", \"=\" or \">=\"");
        const json& rhs = field(c, path, "rhs");
        if (!rhs.is_number()) throw JsonError(path + "/rhs", "expected a number");
        lc.rhs = rhs.get<double>();
        lp.constraints.push_back(std::move(lc));
    }
    return lp;
}

std::string write_json(const LinearProgram& lp) {
    json j;
    j["version"] = kSchemaVersion;
    j["objective_sense"] = lp.objective_sense == ObjectiveSense::MINIMIZE ? "min" : "max";
    j["objective_constant"] = lp.objective_constant;
    j["objective"] = json::object();
    for (const auto& [name, coef] : lp.objective) j["objective"][name] = coef;
    j["variables"] = json::array();
    for (const auto& v : lp.variables)
        j["variables"].push_back({{"name", v.name},
                                  {"lower", bound_to_json(v.lower)},
                                  {"upper", bound_to_json(v.upper)}});
    j["constraints"] = json::array();
    for (const auto& c : lp.constraints) {
        json coefs = json::object();
        for (const auto& [name, coef] : c.coefficients) coefs[name] = coef;
        j["constraints"].push_back({{"name", c.name},
                                    {"coefs", std::move(coefs)},
                                    {"sense", to_string(c.sense)},
                                    {"rhs", c.rhs}});
    }
    return j.dump(2) + "\n";
}

}  // namespace dualkit
