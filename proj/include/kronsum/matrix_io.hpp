#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kronsum/matrix.hpp"

namespace kronsum {

/// Thrown when serialized input cannot be parsed or fails validation.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Schema: {"rows": R, "cols": C, "data": [[re, im], ...]} with data
/// row-major of length R*C. Numbers are emitted with shortest-round-trip
/// formatting, so save/load is lossless for doubles.
nlohmann::json matrix_to_json(const Matrix& x);
Matrix matrix_from_json(const nlohmann::json& j);

void save_matrix(const std::filesystem::path& path, const Matrix& x);
Matrix load_matrix(const std::filesystem::path& path);

/// Plain-text rendering, one row per line.
std::string format_matrix(const Matrix& x);

}  // namespace kronsum
