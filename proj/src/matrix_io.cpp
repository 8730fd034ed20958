#include "kronsum/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace kronsum {

nlohmann::json matrix_to_json(const Matrix& x) {
    nlohmann::json data = nlohmann::json::array();
    for (const auto& v : x.data()) {
        data.push_back({v.real(), v.imag()});
    }
    return nlohmann::json{{"rows", x.rows()}, {"cols", x.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw FormatError("matrix object needs rows, cols and data fields");
    }
    const auto& rows_field = j.at("rows");
    const auto& cols_field = j.at("cols");
    const auto& data_field = j.at("data");
    if (!rows_field.is_number_unsigned() || !cols_field.is_number_unsigned() ||
        !data_field.is_array()) {
        throw FormatError("rows and cols must be positive integers, data an array");
    }
    const std::size_t rows = rows_field.get<std::size_t>();
    const std::size_t cols = cols_field.get<std::size_t>();
    if (rows == 0 || cols == 0) {
        throw FormatError("rows and cols must be positive");
    }
    if (data_field.size() != rows * cols) {
        throw FormatError("data length does not match rows*cols");
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& pair : data_field) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
            throw FormatError("each entry must be a [re, im] pair of numbers");
        }
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    try {
        return Matrix(rows, cols, std::move(entries));
    } catch (const ShapeError& e) {
        throw FormatError(e.what());
    }
}

void save_matrix(const std::filesystem::path& path, const Matrix& x) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot open " + path.string() + " for writing");
    }
    out << matrix_to_json(x).dump() << '\n';
    if (!out.flush()) {
        throw FormatError("failed to write " + path.string());
    }
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return matrix_from_json(j);
}

std::string format_matrix(const Matrix& x) {
    std::ostringstream out;
    char buffer[64];
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const Complex v = x(i, j);
            std::snprintf(buffer, sizeof(buffer), "%12.6g %+12.6gi", v.real(), v.imag());
            out << (j == 0 ? "" : "  ") << buffer;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace kronsum
