#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kronsum/matrix.hpp"

namespace kronsum {

/// Thrown when an operation requires a map of one symmetry class (for
/// example RT-symmetric) and the argument is not in that class.
struct SymmetryClassError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operator-sum terms: phi(M) = sum_i L_i M R_i.
using TermList = std::vector<std::pair<Matrix, Matrix>>;

/// Linear map phi: M_d -> M_d, carried canonically as the d^2 x d^2 matrix
/// Phi acting on row-stacked vec inputs. A term list is an optional attached
/// witness; assembling Phi from it always reproduces matrix() because the
/// construction path is shared.
class SuperOperator {
public:
    static SuperOperator identity(std::size_t d);
    static SuperOperator from_matrix(Matrix phi);
    static SuperOperator from_terms(TermList terms, std::size_t d);

    std::size_t dim() const { return d_; }
    const Matrix& matrix() const { return phi_; }

    bool has_terms() const { return terms_.has_value(); }
    const TermList& terms() const;

    /// unvec(Phi . vec(x)).
    Matrix apply(const Matrix& x) const;
    /// sum_i L_i x R_i; requires an attached term list.
    Matrix apply_via_terms(const Matrix& x) const;

private:
    SuperOperator(std::size_t d, Matrix phi, std::optional<TermList> terms);

    std::size_t d_;
    Matrix phi_;
    std::optional<TermList> terms_;
};

/// Linear combinations. Term lists are carried along when both operands
/// have one (concatenation, scalars folded into the left factors).
SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(Complex scalar, const SuperOperator& a);

/// Entrywise conjugate map: M -> conj(phi(conj(M))).
SuperOperator conjugate(const SuperOperator& a);

/// M -> PM and M -> MP with term lists attached.
SuperOperator left_multiplication(const Matrix& p);
SuperOperator right_multiplication(const Matrix& p);

/// The prime transform: the map with the left and right multiplication
/// coefficients swapped. On matrices Phi' = P Phi^T P^T with P the perfect
/// shuffle of order d^2, realized here as an exact entry permutation so the
/// double transform is the identity bit for bit. A term list [(L,R)] becomes
/// [(R,L)].
SuperOperator prime_transform(const SuperOperator& phi);

/// phi = phi' (entrywise on Phi, within tol).
bool is_rt_symmetric(const SuperOperator& phi, double tol = 1e-9);
/// phi = -phi'.
bool is_rt_skew_symmetric(const SuperOperator& phi, double tol = 1e-9);
/// phi = conj(phi').
bool is_rt_hermitian(const SuperOperator& phi, double tol = 1e-9);
/// phi = -conj(phi').
bool is_rt_skew_hermitian(const SuperOperator& phi, double tol = 1e-9);

/// The halves of phi = (phi + phi')/2 + (phi - phi')/2.
SuperOperator rt_symmetric_part(const SuperOperator& phi);
SuperOperator rt_skew_part(const SuperOperator& phi);

/// Alternative symmetry test through the rearrangement operator:
/// R(Phi)^T = R(Phi^T) within tol. Agrees with is_rt_symmetric everywhere.
bool rearrangement_characterization(const SuperOperator& phi, double tol = 1e-9);

}  // namespace kronsum
