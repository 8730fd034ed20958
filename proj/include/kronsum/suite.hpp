#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kronsum/kron.hpp"
#include "kronsum/matrix_io.hpp"

namespace kronsum {

/// Deliberate bugs the suite can inject into its own checking code, used to
/// demonstrate that the harness actually catches violations. The injected
/// bug lives in the suite's comparison step, never in the library.
enum class Mutation {
    none,
    negate_commutator,   // flip the sign of the commutator criterion's right-hand side
};

/// Accepts "none" and "negate-commutator"; throws FormatError otherwise.
Mutation mutation_from_name(std::string_view name);

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    std::vector<BlockDims> dims = {{2, 2}, {2, 3}, {3, 3}};
    double tol = 1e-9;
    Mutation mutation = Mutation::none;
};

struct PropertyRecord {
    std::string name;       // property id with dims suffix, e.g. "kron-mixed-product@2x3"
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_defect = 0.0;
    std::uint64_t seed = 0;  // master seed the record was produced from
};

struct SuiteReport {
    std::vector<PropertyRecord> records;
    bool pass() const;
};

/// Runs every property census once per requested dims value. Deterministic:
/// each trial derives its seed from (master seed, record name, trial index),
/// so identical options produce identical reports.
SuiteReport run_suite(const SuiteOptions& options);

nlohmann::json suite_report_to_json(const SuiteReport& report);
std::string format_suite_report(const SuiteReport& report);

/// Parse entries like "2x3" into block dimensions; throws FormatError.
std::vector<BlockDims> parse_dims_list(const std::vector<std::string>& items);

}  // namespace kronsum
