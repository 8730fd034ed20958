#pragma once

#include <cstdint>
#include <string_view>

#include "kronsum/matrix.hpp"

namespace kronsum {

enum class SampleKind {
    general,     // independent entries, real and imaginary parts in [-1, 1)
    traceless,   // general minus (tr/n) I; requires a square shape
    hermitian,   // (X + X^*) / 2 of a general sample; requires a square shape
};

/// Deterministic random matrix. The same (shape, seed, kind) triple yields
/// the same matrix on every platform: entries come from std::mt19937_64
/// output mapped to [-1, 1) by explicit bit manipulation, never through
/// distribution classes whose output is implementation-defined.
Matrix sample_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                     SampleKind kind = SampleKind::general);

/// Stable child seed from a master seed, a label, and an index (FNV-1a).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index);

}  // namespace kronsum
