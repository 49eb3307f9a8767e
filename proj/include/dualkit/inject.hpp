#pragma once

#include <cstdint>
#include <stdexcept>

#include "dualkit/lp.hpp"

namespace dualkit {

enum class ErrorType {
    WRONG_OBJECTIVE_SENSE,
    MISSING_VARIABLE,
    MISSING_CONSTRAINT,
    FLIPPED_CONSTRAINT_SENSE,
    FLIPPED_BOUND_SENSE,
};

const char* to_string(ErrorType t);
ErrorType error_type_from_string(const std::string& s);
inline constexpr ErrorType kAllErrorTypes[] = {
    ErrorType::WRONG_OBJECTIVE_SENSE,  ErrorType::MISSING_VARIABLE,
    ErrorType::MISSING_CONSTRAINT,     ErrorType::FLIPPED_CONSTRAINT_SENSE,
    ErrorType::FLIPPED_BOUND_SENSE,
};

struct InjectionRecord {
    LinearProgram mutated;
    ErrorType error;
    std::string location;  // affected variable/constraint name, or "objective"
    std::uint64_t seed;
    int attempts = 1;
};

struct InjectError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Applies exactly one labeled mutation, drawn uniformly over eligible
// targets from a seeded mt19937_64 (target index = draw % pool size).
// Draws whose mutation is CGED-invisible are resampled; throws InjectError
// when no eligible target remains.
InjectionRecord inject(const LinearProgram& lp, ErrorType etype, std::uint64_t seed);

}  // namespace dualkit
