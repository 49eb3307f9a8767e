#pragma once

#include <map>

#include "dualkit/ged.hpp"
#include "dualkit/lp.hpp"

namespace dualkit {

enum class DualizationMethod { STANDARD_FORM, SOB };

struct DualizationReport {
    LinearProgram dual;
    // primal constraint name -> dual variable name (main rows only)
    std::map<std::string, std::string> variable_map;
    // primal variable name -> dual constraint name
    std::map<std::string, std::string> constraint_map;
};

// Symbolic dualization. Finite non-sign bounds are first lifted into
// explicit rows so they receive dual variables; sign bounds stay on the
// variable and shape the dual constraint senses. The result's objective
// sense is opposite to the primal's.
DualizationReport dualize(const LinearProgram& lp, DualizationMethod method);

struct MethodDisagreement : std::runtime_error {
    MethodDisagreement(LinearProgram sf, LinearProgram sob, EditPath path_)
        : std::runtime_error("dualization methods disagree (CGED " +
                             std::to_string(path_.total) + ")"),
          dual_standard_form(std::move(sf)),
          dual_sob(std::move(sob)),
          path(std::move(path_)) {}
    LinearProgram dual_standard_form;
    LinearProgram dual_sob;
    EditPath path;
};

// Runs both methods, asserts they agree under CGED, returns the
// STANDARD_FORM report. Throws MethodDisagreement otherwise.
DualizationReport dualize_checked(const LinearProgram& lp);

}  // namespace dualkit
