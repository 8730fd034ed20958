#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>

#include "kronsum/matrix.hpp"

namespace testsup {

/// Independent determinant reference for sizes up to 4, by cofactor
/// expansion along the first row.
inline kronsum::Complex cofactor_det(const kronsum::Matrix& a) {
    REQUIRE(a.is_square());
    REQUIRE(a.rows() <= 4);
    const std::size_t n = a.rows();
    if (n == 1) {
        return a(0, 0);
    }
    kronsum::Complex det = 0.0;
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        kronsum::Matrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) {
                    continue;
                }
                minor(r - 1, cc++) = a(r, c);
            }
        }
        det += sign * a(0, j) * cofactor_det(minor);
        sign = -sign;
    }
    return det;
}

inline void check_close(const kronsum::Matrix& got, const kronsum::Matrix& want, double tol) {
    REQUIRE(got.rows() == want.rows());
    REQUIRE(got.cols() == want.cols());
    CHECK(kronsum::max_abs_diff(got, want) <= tol);
}

inline void check_close(kronsum::Complex got, kronsum::Complex want, double tol) {
    CHECK(std::abs(got - want) <= tol);
}

/// Fresh path under the system temp directory; the file is not created.
inline std::filesystem::path temp_path(const std::string& stem) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    return dir / (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

#ifdef KRONSUM_CLI_PATH

struct CliResult {
    int status = -1;
    std::string output;   // stdout and stderr combined
};

/// Runs the installed CLI with the given argument string, capturing output.
inline CliResult run_cli(const std::string& args) {
    const auto capture = temp_path("cli-out");
    const std::string cmd =
        std::string(KRONSUM_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult result;
    result.status = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(capture);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    std::filesystem::remove(capture);
    return result;
}

#endif

}  // namespace testsup
