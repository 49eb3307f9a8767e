#include "dualkit/inject.hpp"

#include <random>

#include "dualkit/ged.hpp"

namespace dualkit {

const char* to_string(ErrorType t) {
    switch (t) {
        case ErrorType::WRONG_OBJECTIVE_SENSE: return "wrong_objective_sense";
        case ErrorType::MISSING_VARIABLE: return "missing_variable";
        case ErrorType::MISSING_CONSTRAINT: return "missing_constraint";
        case ErrorType::FLIPPED_CONSTRAINT_SENSE: return "flipped_constraint_sense";
        default: return "flipped_bound_sense";
    }
}

ErrorType error_type_from_string(const std::string& s) {
    for (ErrorType t : kAllErrorTypes)
        if (s == to_string(t)) return t;
    throw InjectError("unknown error type '" + s + "'");
}

namespace {

bool is_sign_bound(const Variable& v) {
    return (nearly_zero(v.lower) && v.upper == kInf) ||
           (v.lower == -kInf && nearly_zero(v.upper));
}

std::vector<std::string> eligible_targets(const LinearProgram& lp, ErrorType etype) {
    std::vector<std::string> out;
    switch (etype) {
        case ErrorType::WRONG_OBJECTIVE_SENSE:
            out.push_back("objective");
            break;
        case ErrorType::MISSING_VARIABLE:
            for (const auto& v : lp.variables) out.push_back(v.name);
            break;
        case ErrorType::MISSING_CONSTRAINT:
            for (const auto& c : lp.constraints) out.push_back(c.name);
            break;
        case ErrorType::FLIPPED_CONSTRAINT_SENSE:
            for (const auto& c : lp.constraints)
                if (c.sense != ConstraintSense::EQ) out.push_back(c.name);
            break;
        case ErrorType::FLIPPED_BOUND_SENSE:
            for (const auto& v : lp.variables)
                if (is_sign_bound(v)) out.push_back(v.name);
            break;
    }
    return out;
}

LinearProgram mutate(const LinearProgram& lp, ErrorType etype, const std::string& target) {
    LinearProgram out = lp;
    switch (etype) {
        case ErrorType::WRONG_OBJECTIVE_SENSE:
            out.objective_sense = out.objective_sense == ObjectiveSense::MINIMIZE
                                      ? ObjectiveSense::MAXIMIZE
                                      : ObjectiveSense::MINIMIZE;
            break;
        case ErrorType::MISSING_VARIABLE: {
            const int vi = out.variable_index(target);
            out.variables.erase(out.variables.begin() + vi);
            out.objective.erase(target);
            for (auto& c : out.constraints) c.coefficients.erase(target);
            break;
        }
        case ErrorType::MISSING_CONSTRAINT: {
            const int ci = out.constraint_index(target);
            out.constraints.erase(out.constraints.begin() + ci);
            break;
        }
        case ErrorType::FLIPPED_CONSTRAINT_SENSE: {
            LinearConstraint& c = out.constraints[out.constraint_index(target)];
            c.sense = c.sense == ConstraintSense::LEQ ? ConstraintSense::GEQ
                                                      : ConstraintSense::LEQ;
            break;
        }
        case ErrorType::FLIPPED_BOUND_SENSE: {
            Variable& v = out.variables[out.variable_index(target)];
            if (v.lower == -kInf) {  // x <= 0 becomes x >= 0
                v.lower = 0.0;
                v.upper = kInf;
            } else {  // x >= 0 becomes x <= 0
                v.lower = -kInf;
                v.upper = 0.0;
            }
            break;
        }
    }
    return out;
}

}  // namespace

InjectionRecord inject(const LinearProgram& lp, ErrorType etype, std::uint64_t seed) {
    auto pool = eligible_targets(lp, etype);
    if (pool.empty())
        throw InjectError(std::string("no eligible target for ") + to_string(etype));

    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (!pool.empty()) {
        const size_t idx = static_cast<size_t>(rng() % pool.size());
        const std::string target = pool[idx];
        ++attempts;
        LinearProgram mutated = mutate(lp, etype, target);
        if (cged(lp, mutated).first > tol::atol())
            return {std::move(mutated), etype, target, seed, attempts};
        pool.erase(pool.begin() + idx);  // semantic no-op: resample
    }
    throw InjectError(std::string("all targets are semantic no-ops for ") + to_string(etype));
}

}  // namespace dualkit
