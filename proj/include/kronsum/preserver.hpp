#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kronsum/kron.hpp"
#include "kronsum/superop.hpp"

namespace kronsum {

/// One term (A (x) C) M (B (x) D) of the structured operator-sum form
/// phi(M) = M + sum_j (A_j (x) C_j) M (B_j (x) D_j), with A, B in M_m and
/// C, D in M_n.
struct KroneckerTerm {
    Matrix a;
    Matrix b;
    Matrix c;
    Matrix d;
};

/// Verdict of one characterization check. holds_condition is the structural
/// criterion (partial-trace identities); holds_oracle is the brute-force
/// basis check of trace preservation. The theorems say they always agree.
struct PreserverReport {
    bool holds_oracle = false;
    bool holds_condition = false;
    Matrix residual_1;   // defect of the M_n-valued identity
    Matrix residual_2;   // defect of the M_m-valued identity
    double max_defect = 0.0;
};

/// Exact quantifier elimination: phi preserves tr on Kronecker sums iff
/// tr(phi(E_ij (x) I_n)) = n delta_ij and tr(phi(I_m (x) E_kl)) = m delta_kl
/// over the whole basis. Linearity makes this equivalent to the statement
/// for all A, B, so this is the ground truth the condition checks are
/// measured against.
bool oracle_preserves_trace(const SuperOperator& phi, const BlockDims& dims, double tol = 1e-9);

/// Left multiplication M -> PM preserves iff tr1(P) = m I_n and
/// tr2(P) = n I_m.
PreserverReport check_left_mult(const Matrix& p, const BlockDims& dims, double tol = 1e-9);

/// P = I_mn + sum_{j<r} A_j (x) B_j with sampled traceless factors; such P
/// always passes check_left_mult.
Matrix synth_left_mult_preserver(const BlockDims& dims, std::size_t r, std::uint64_t seed);

/// phi(M) = M + sum_j (A_j (x) C_j) M (B_j (x) D_j) as a SuperOperator.
SuperOperator kron_term_map(const std::vector<KroneckerTerm>& terms, const BlockDims& dims);

/// Outcome of the traceless-factors criterion. The iff between the first
/// two fields is only claimed when factors_independent is true.
struct TracelessIffResult {
    bool factors_traceless = false;
    bool preserves = false;
    bool factors_independent = false;
};

/// For P = I + sum_j A_j (x) B_j with independent {A_j} and independent
/// {B_j}: M -> PM preserves iff every factor is traceless.
TracelessIffResult corollary_traceless_iff(const std::vector<std::pair<Matrix, Matrix>>& factors,
                                           const BlockDims& dims, double tol = 1e-9);

/// Structured-form criterion with commutators:
///   tr1(phi(I) - I) = sum_j tr(A_jB_j) [C_j, D_j]
///   tr2(phi(I) - I) = sum_j tr(C_jD_j) [A_j, B_j]
PreserverReport lemma_commutator_check(const std::vector<KroneckerTerm>& terms,
                                       const BlockDims& dims, double tol = 1e-9);

/// Same criterion with anticommutators on the right-hand sides.
PreserverReport lemma_anticommutator_check(const std::vector<KroneckerTerm>& terms,
                                           const BlockDims& dims, double tol = 1e-9);

/// General criterion: phi preserves iff tr1(phi'(I)) = m I_n and
/// tr2(phi'(I)) = n I_m.
PreserverReport theorem_phiprime_check(const SuperOperator& phi, const BlockDims& dims,
                                       double tol = 1e-9);

/// Specialization for maps equal to (skew = false) or the negative of
/// (skew = true) their prime transform, where phi'(I) = +-phi(I):
///   tr1(phi(I)) = +-m I_n and tr2(phi(I)) = +-n I_m.
/// Throws SymmetryClassError when phi is not in the requested class.
PreserverReport corollary_rt_check(const SuperOperator& phi, const BlockDims& dims,
                                   double tol, bool skew);

/// Random operator-sum factorization of M -> PM up to trace: a term list
/// [(P_i, Q_i)] of the requested length with sum_i Q_iP_i = P, so
/// M -> sum_i P_i M Q_i has the same traces as M -> PM on every input.
TermList factor_operator_sum(const Matrix& p, std::size_t count, std::uint64_t seed);

}  // namespace kronsum
