#pragma once

#include "kronsum/matrix.hpp"

namespace kronsum {

/// Determinant via LU factorization with partial pivoting.
Complex determinant(const Matrix& a);

/// Inverse via Gauss-Jordan elimination with partial pivoting.
/// Throws SingularError when no usable pivot exists.
Matrix inverse(const Matrix& a);

/// Matrix exponential via scaling and squaring around a Taylor series.
Matrix expm(const Matrix& a);

/// Principal matrix logarithm via inverse scaling and squaring: repeated
/// principal square roots (Denman-Beavers iteration) bring the argument close
/// to the identity, then an alternating log(1+x) series finishes the job.
///
/// Throws SingularError for singular input and ConvergenceError when the
/// square-root iteration breaks down (e.g. eigenvalues on the closed negative
/// real axis, where no principal logarithm exists).
Matrix logm_principal(const Matrix& a);

/// Rank from row elimination with partial pivoting; a pivot counts while its
/// magnitude stays above rel_tol times the largest entry of the input.
std::size_t numeric_rank(const Matrix& a, double rel_tol = 1e-8);

}  // namespace kronsum
