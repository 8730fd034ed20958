#pragma once

#include "kronsum/matrix.hpp"

namespace kronsum {

/// Block dimensions of a tensor-product space M_m (x) M_n.
struct BlockDims {
    std::size_t m = 0;
    std::size_t n = 0;

    BlockDims() = default;
    BlockDims(std::size_t m_, std::size_t n_) : m(m_), n(n_) {
        if (m == 0 || n == 0) {
            throw ShapeError("block dimensions must be positive");
        }
    }

    std::size_t product() const { return m * n; }
};

/// Kronecker product A (x) B.
Matrix kron_product(const Matrix& a, const Matrix& b);

/// Kronecker sum A (+) B = A (x) I_n + I_m (x) B for square A, B.
Matrix kron_sum(const Matrix& a, const Matrix& b);

/// Row-stacking vectorization: vec(X) lists the rows of X one after another,
/// so for row-major storage it is a reshape. Returns a (rows*cols) x 1 matrix.
Matrix vec(const Matrix& x);

/// Inverse of vec for the given target shape.
Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);

/// Permutation P of size mn with P^T (A (x) B) P = B (x) A for A in M_m,
/// B in M_n. For m == n it is symmetric and involutive, and P vec(X) gives
/// vec(X^T).
Matrix perfect_shuffle(std::size_t m, std::size_t n);

/// Block rearrangement on M_{d^2}: entry (p,q; r,s) of the input, read as a
/// d x d grid of d x d blocks, moves to (p,r; q,s). An involution that sends
/// A (x) B to vec(A) vec(B)^T row by row.
Matrix rearrange(const Matrix& x, std::size_t d);

/// Partial trace over the first factor: sum of the n x n diagonal blocks.
Matrix partial_trace_1(const Matrix& x, const BlockDims& dims);

/// Partial trace over the second factor: the m x m matrix of block traces.
Matrix partial_trace_2(const Matrix& x, const BlockDims& dims);

}  // namespace kronsum
