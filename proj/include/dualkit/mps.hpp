#pragma once

#include <stdexcept>
#include <string>

#include "dualkit/lp.hpp"

namespace dualkit {

struct ParseError : std::runtime_error {
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
    int line;
};

// Free-format (whitespace separated) MPS. Sections: NAME, OBJSENSE, ROWS,
// COLUMNS, RHS, RANGES, BOUNDS, ENDATA. '*' comment lines skipped.
// Default variable bounds are [0, +inf); RANGES rows expand into two
// inequalities; missing OBJSENSE means MINIMIZE.
LinearProgram parse_mps(const std::string& text);

// Emits free-format MPS with 17 significant digits. parse_mps(write_mps(lp))
// reproduces lp field-exactly.
std::string write_mps(const LinearProgram& lp);

struct JsonError : std::runtime_error {
    JsonError(std::string path_, const std::string& msg)
        : std::runtime_error(path_ + ": " + msg), path(std::move(path_)) {}
    std::string path;  // JSON-pointer style
};

// Lossless "dualkit-lp/1" JSON schema; infinite bounds encoded as the
// string sentinels "inf" / "-inf". Unknown fields are rejected.
LinearProgram parse_json(const std::string& text);
std::string write_json(const LinearProgram& lp);

}  // namespace dualkit
