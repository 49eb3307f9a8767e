#pragma once

#include <cstdint>
#include <filesystem>

#include "dualkit/inject.hpp"
#include "dualkit/lp.hpp"

namespace dualkit {

inline constexpr int kNum2dShapes = 36;
inline constexpr int kNum2dObjectives = 3;

// Bounded two-variable LP over the indexed catalog polytope (shapes 1..36,
// objectives 1..3). All instances maximize over x >= 0 with explicit
// facet rows; deterministic.
LinearProgram gen_2d(int shape, int objective);

enum class CoFamily {
    MAX_INDEPENDENT_SET,
    MULTIDIM_KNAPSACK,
    MAX_CUT,
    MAX_CLIQUE,
    MIN_VERTEX_COVER,
    PACKING,
    PRODUCTION_PLANNING,
};
inline constexpr CoFamily kAllCoFamilies[] = {
    CoFamily::MAX_INDEPENDENT_SET, CoFamily::MULTIDIM_KNAPSACK, CoFamily::MAX_CUT,
    CoFamily::MAX_CLIQUE,          CoFamily::MIN_VERTEX_COVER,  CoFamily::PACKING,
    CoFamily::PRODUCTION_PLANNING,
};
const char* to_string(CoFamily f);

// LP relaxation of a seeded random combinatorial instance; at most 5
// variables and 6 constraints.
LinearProgram gen_co(CoFamily family, int size, std::uint64_t seed);

enum class SampleSource { TWO_D, CO_SMALL, IMPORTED };
const char* to_string(SampleSource s);

struct DatasetSample {
    std::string id;
    SampleSource source = SampleSource::TWO_D;
    LinearProgram primal;
    LinearProgram dual;  // ground truth via dualize_checked
    std::vector<InjectionRecord> erroneous_duals;
};

struct GenConfig {
    bool two_d = true;               // all 108 catalog instances
    int co_count = 0;                // seeded CO-Small instances
    std::uint64_t co_seed = 1;
    std::vector<ErrorType> error_types;  // one injection per type per sample
    std::uint64_t error_seed = 1;
};

std::vector<DatasetSample> gen_dataset(const GenConfig& config);

struct IngestResult {
    std::vector<DatasetSample> samples;
    std::vector<std::pair<std::string, std::string>> skipped;  // path, reason
};

// Wraps already-formulated LP files (.mps/.json) as dataset samples with
// dualize_checked ground truth; unparseable files are listed and skipped.
IngestResult ingest(const std::vector<std::filesystem::path>& lp_files,
                    const std::string& source_tag);

// Writes <id>/primal.mps, <id>/dual.mps, <id>/errors/<type>.mps and a
// root manifest.json. Deterministic byte-for-byte given the same samples.
void write_dataset(const std::vector<DatasetSample>& samples,
                   const std::filesystem::path& dir);

}  // namespace dualkit
