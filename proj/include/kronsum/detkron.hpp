#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kronsum/kron.hpp"
#include "kronsum/preserver.hpp"
#include "kronsum/superop.hpp"

namespace kronsum {

/// The set rep . R_k with R_k the multiplicative group of k-th roots of
/// unity. Normalized determinants are cosets of this form: the k-th root
/// of a determinant is only defined up to an element of R_k.
struct RootCoset {
    Complex rep;
    std::size_t order = 1;
};

/// rep_a . R_k = rep_b . R_k, i.e. (rep_a/rep_b)^k = 1 within tol.
/// Cosets of different orders never compare equal.
bool coset_equal(const RootCoset& a, const RootCoset& b, double tol = 1e-7);

/// The set {z . base : z in coset}.
struct CosetMatrix {
    Matrix base;
    RootCoset coset;
};

/// Set equality: the folded bases are proportional by some k-th root of
/// unity, entrywise within tol relative to the larger base.
bool coset_matrix_equal(const CosetMatrix& a, const CosetMatrix& b, double tol = 1e-7);

/// A non-singular matrix carried together with a logarithm of it, so that
/// downstream maps can act on the exponent without re-extracting logs and
/// reopening branch-cut ambiguity.
struct OmegaWitness {
    Matrix log_part;
    Matrix value;

    static OmegaWitness from_log(Matrix log_part);
    /// Attaches the principal logarithm; inherits its domain restrictions.
    static OmegaWitness from_value(Matrix value);
};

/// The nonlinear map psi(e^M) = e^{phi(M)} induced by a linear map phi on
/// the exponents.
struct PsiMap {
    SuperOperator phi;
    BlockDims dims;
};

enum class Part {
    first = 1,
    second = 2,
};

/// Tr(X) = tr(X)/n.
Complex norm_trace(const Matrix& x);

/// Det(X) = (principal n-th root of det X) . R_n.
RootCoset norm_det(const Matrix& x);

/// Tr_1(X) = tr_1(X)/m or Tr_2(X) = tr_2(X)/n.
Matrix norm_partial_trace(const Matrix& x, const BlockDims& dims, Part which);

/// Partial determinants, defined by transporting the normalized partial
/// trace through the exponential: Det_1(e^M) = e^{Tr_1(M)} . R_m and
/// Det_2(e^M) = e^{Tr_2(M)} . R_n.
CosetMatrix partial_det(const OmegaWitness& x, const BlockDims& dims, Part which);
/// Convenience overload that extracts a principal-log witness first.
CosetMatrix partial_det(const Matrix& x, const BlockDims& dims, Part which);

/// The m x m matrix of block determinants. An exploratory companion to
/// partial_det only; it is not multiplicative and none of the
/// characterizations use it.
Matrix blockwise_det(const Matrix& x, const BlockDims& dims);

/// psi(e^M) = e^{phi(M)}, with the new exponent attached as the witness.
OmegaWitness psi_apply(const PsiMap& psi, const OmegaWitness& x);

/// On exponentials, psi preserves determinants iff phi preserves traces;
/// this evaluates the trace-side criterion exactly via the basis oracle.
bool det_preserver_iff_trace(const PsiMap& psi, double tol = 1e-9);

/// U = exp((1/m) sum_j tr(A_jB_j)[C_j,D_j]) and
/// V = exp((1/n) sum_j tr(C_jD_j)[A_j,B_j]); both lie in the special
/// linear group since the exponents are traceless.
std::pair<Matrix, Matrix> corollary_uv(const std::vector<KroneckerTerm>& terms,
                                       const BlockDims& dims);

struct DetRtVerdict {
    bool condition = false;
    bool preserves = false;
};

/// For phi equal to (resp. minus) its prime transform or its conjugate
/// prime transform: psi preserves determinants of exponentials iff
/// Det_1(psi(e^I)) = e^{+-I_n} . R_m and Det_2(psi(e^I)) = e^{+-I_m} . R_n.
/// Returns both sides of the equivalence. Throws SymmetryClassError when
/// phi is in none of the admitted classes.
DetRtVerdict theorem_det_rt(const PsiMap& psi, bool skew, double oracle_tol = 1e-9,
                            double coset_tol = 1e-7);

}  // namespace kronsum
