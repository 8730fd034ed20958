#include "kronsum/detkron.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "kronsum/matrix_functions.hpp"

namespace kronsum {

namespace {

void require_block_shape(const Matrix& x, const BlockDims& dims) {
    const std::size_t mn = dims.product();
    if (x.rows() != mn || x.cols() != mn) {
        throw ShapeError("expected a " + std::to_string(mn) + "x" + std::to_string(mn) +
                         " matrix");
    }
}

Complex root_of_unity(std::size_t k, std::size_t j) {
    const double angle = 2.0 * std::numbers::pi * double(j) / double(k);
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace

bool coset_equal(const RootCoset& a, const RootCoset& b, double tol) {
    if (a.order != b.order) {
        return false;
    }
    if (a.rep == b.rep) {
        return true;
    }
    if (b.rep == Complex(0.0) || a.rep == Complex(0.0)) {
        return false;
    }
    const double k = double(a.order);
    const Complex forward = std::pow(a.rep / b.rep, k);
    const Complex backward = std::pow(b.rep / a.rep, k);
    return std::abs(forward - Complex(1.0)) <= tol || std::abs(backward - Complex(1.0)) <= tol;
}

bool coset_matrix_equal(const CosetMatrix& a, const CosetMatrix& b, double tol) {
    if (a.coset.order != b.coset.order || !a.base.same_shape(b.base)) {
        return false;
    }
    const Matrix x = a.coset.rep * a.base;
    const Matrix y = b.coset.rep * b.base;
    const double scale = std::max(1.0, max_abs(x));
    for (std::size_t j = 0; j < a.coset.order; ++j) {
        if (max_abs_diff(y, root_of_unity(a.coset.order, j) * x) <= tol * scale) {
            return true;
        }
    }
    return false;
}

OmegaWitness OmegaWitness::from_log(Matrix log_part) {
    if (!log_part.is_square()) {
        throw ShapeError("witness exponent must be square");
    }
    Matrix value = expm(log_part);
    return OmegaWitness{std::move(log_part), std::move(value)};
}

OmegaWitness OmegaWitness::from_value(Matrix value) {
    Matrix log_part = logm_principal(value);
    return OmegaWitness{std::move(log_part), std::move(value)};
}

Complex norm_trace(const Matrix& x) {
    return trace(x) / double(x.rows());
}

RootCoset norm_det(const Matrix& x) {
    if (!x.is_square()) {
        throw ShapeError("normalized determinant requires a square matrix");
    }
    const Complex det = determinant(x);
    if (det == Complex(0.0)) {
        throw SingularError("normalized determinant of a singular matrix");
    }
    return RootCoset{std::pow(det, 1.0 / double(x.rows())), x.rows()};
}

Matrix norm_partial_trace(const Matrix& x, const BlockDims& dims, Part which) {
    require_block_shape(x, dims);
    if (which == Part::first) {
        return (1.0 / double(dims.m)) * partial_trace_1(x, dims);
    }
    return (1.0 / double(dims.n)) * partial_trace_2(x, dims);
}

CosetMatrix partial_det(const OmegaWitness& x, const BlockDims& dims, Part which) {
    require_block_shape(x.log_part, dims);
    const std::size_t order = which == Part::first ? dims.m : dims.n;
    return CosetMatrix{expm(norm_partial_trace(x.log_part, dims, which)),
                       RootCoset{Complex(1.0), order}};
}

CosetMatrix partial_det(const Matrix& x, const BlockDims& dims, Part which) {
    return partial_det(OmegaWitness::from_value(x), dims, which);
}

Matrix blockwise_det(const Matrix& x, const BlockDims& dims) {
    require_block_shape(x, dims);
    Matrix out(dims.m, dims.m);
    for (std::size_t i = 0; i < dims.m; ++i) {
        for (std::size_t j = 0; j < dims.m; ++j) {
            Matrix block(dims.n, dims.n);
            for (std::size_t k = 0; k < dims.n; ++k) {
                for (std::size_t l = 0; l < dims.n; ++l) {
                    block(k, l) = x(i * dims.n + k, j * dims.n + l);
                }
            }
            out(i, j) = determinant(block);
        }
    }
    return out;
}

OmegaWitness psi_apply(const PsiMap& psi, const OmegaWitness& x) {
    if (psi.phi.dim() != psi.dims.product()) {
        throw ShapeError("psi map dimensions are inconsistent");
    }
    require_block_shape(x.log_part, psi.dims);
    return OmegaWitness::from_log(psi.phi.apply(x.log_part));
}

bool det_preserver_iff_trace(const PsiMap& psi, double tol) {
    return oracle_preserves_trace(psi.phi, psi.dims, tol);
}

std::pair<Matrix, Matrix> corollary_uv(const std::vector<KroneckerTerm>& terms,
                                       const BlockDims& dims) {
    Matrix exponent_u(dims.n, dims.n);
    Matrix exponent_v(dims.m, dims.m);
    for (const auto& term : terms) {
        exponent_u += trace(term.a * term.b) * commutator(term.c, term.d);
        exponent_v += trace(term.c * term.d) * commutator(term.a, term.b);
    }
    return {expm((1.0 / double(dims.m)) * exponent_u),
            expm((1.0 / double(dims.n)) * exponent_v)};
}

DetRtVerdict theorem_det_rt(const PsiMap& psi, bool skew, double oracle_tol, double coset_tol) {
    const SuperOperator& phi = psi.phi;
    if (phi.dim() != psi.dims.product()) {
        throw ShapeError("psi map dimensions are inconsistent");
    }
    const bool in_class = skew
                              ? (is_rt_skew_symmetric(phi) || is_rt_skew_hermitian(phi))
                              : (is_rt_symmetric(phi) || is_rt_hermitian(phi));
    if (!in_class) {
        throw SymmetryClassError(skew ? "map is neither skew RT-symmetric nor skew RT-Hermitian"
                                      : "map is neither RT-symmetric nor RT-Hermitian");
    }
    const double sign = skew ? -1.0 : 1.0;
    const OmegaWitness image =
        psi_apply(psi, OmegaWitness::from_log(Matrix::identity(psi.dims.product())));

    const CosetMatrix expected_1{expm(sign * Matrix::identity(psi.dims.n)),
                                 RootCoset{Complex(1.0), psi.dims.m}};
    const CosetMatrix expected_2{expm(sign * Matrix::identity(psi.dims.m)),
                                 RootCoset{Complex(1.0), psi.dims.n}};
    const bool condition =
        coset_matrix_equal(partial_det(image, psi.dims, Part::first), expected_1, coset_tol) &&
        coset_matrix_equal(partial_det(image, psi.dims, Part::second), expected_2, coset_tol);
    return DetRtVerdict{condition, det_preserver_iff_trace(psi, oracle_tol)};
}

}  // namespace kronsum
