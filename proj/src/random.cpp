#include "kronsum/random.hpp"

#include <cmath>
#include <random>

namespace kronsum {

namespace {

/// Map the top 53 bits of a 64-bit draw to a double in [-1, 1).
double unit_interval(std::uint64_t bits) {
    const double in_01 = std::ldexp(static_cast<double>(bits >> 11), -53);
    return 2.0 * in_01 - 1.0;
}

}  // namespace

Matrix sample_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, SampleKind kind) {
    if (kind != SampleKind::general && rows != cols) {
        throw ShapeError("traceless and hermitian samples require a square shape");
    }
    std::mt19937_64 gen(seed);
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double re = unit_interval(gen());
            const double im = unit_interval(gen());
            out(i, j) = Complex(re, im);
        }
    }
    switch (kind) {
        case SampleKind::general:
            break;
        case SampleKind::traceless: {
            const Complex shift = trace(out) / static_cast<double>(rows);
            for (std::size_t i = 0; i < rows; ++i) {
                out(i, i) -= shift;
            }
            break;
        }
        case SampleKind::hermitian:
            out = Complex(0.5) * (out + adjoint(out));
            break;
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
    std::uint64_t hash = 1469598103934665603ull;
    const auto mix = [&hash](std::uint64_t byte) {
        hash ^= byte;
        hash *= 1099511628211ull;
    };
    for (int k = 0; k < 8; ++k) {
        mix((master >> (8 * k)) & 0xffu);
    }
    for (const char c : label) {
        mix(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    }
    for (int k = 0; k < 8; ++k) {
        mix((index >> (8 * k)) & 0xffu);
    }
    return hash;
}

}  // namespace kronsum
