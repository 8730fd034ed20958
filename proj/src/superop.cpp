#include "kronsum/superop.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "kronsum/kron.hpp"

namespace kronsum {

namespace {

Matrix assemble_phi(const TermList& terms, std::size_t d) {
    Matrix phi(d * d, d * d);
    for (const auto& [l, r] : terms) {
        if (l.rows() != d || l.cols() != d || r.rows() != d || r.cols() != d) {
            throw ShapeError("operator-sum term is not " + std::to_string(d) + "x" +
                             std::to_string(d));
        }
        phi += kron_product(l, transpose(r));
    }
    return phi;
}

/// Index swap behind the perfect shuffle of order d^2: a = i*d + j -> j*d + i.
std::size_t shuffle_index(std::size_t a, std::size_t d) {
    return (a % d) * d + a / d;
}

}  // namespace

SuperOperator::SuperOperator(std::size_t d, Matrix phi, std::optional<TermList> terms)
    : d_(d), phi_(std::move(phi)), terms_(std::move(terms)) {}

SuperOperator SuperOperator::identity(std::size_t d) {
    return from_terms({{Matrix::identity(d), Matrix::identity(d)}}, d);
}

SuperOperator SuperOperator::from_matrix(Matrix phi) {
    if (!phi.is_square()) {
        throw ShapeError("superoperator matrix must be square");
    }
    std::size_t d = 0;
    while ((d + 1) * (d + 1) <= phi.rows()) {
        ++d;
    }
    if (d * d != phi.rows()) {
        throw ShapeError("superoperator matrix size " + std::to_string(phi.rows()) +
                         " is not a perfect square");
    }
    return SuperOperator(d, std::move(phi), std::nullopt);
}

SuperOperator SuperOperator::from_terms(TermList terms, std::size_t d) {
    if (d == 0) {
        throw ShapeError("superoperator dimension must be positive");
    }
    Matrix phi = assemble_phi(terms, d);
    return SuperOperator(d, std::move(phi), std::move(terms));
}

const TermList& SuperOperator::terms() const {
    if (!terms_) {
        throw std::logic_error("superoperator carries no term list");
    }
    return *terms_;
}

Matrix SuperOperator::apply(const Matrix& x) const {
    if (x.rows() != d_ || x.cols() != d_) {
        throw ShapeError("superoperator argument must be " + std::to_string(d_) + "x" +
                         std::to_string(d_));
    }
    return unvec(phi_ * vec(x), d_, d_);
}

Matrix SuperOperator::apply_via_terms(const Matrix& x) const {
    const TermList& list = terms();
    if (x.rows() != d_ || x.cols() != d_) {
        throw ShapeError("superoperator argument must be " + std::to_string(d_) + "x" +
                         std::to_string(d_));
    }
    Matrix out(d_, d_);
    for (const auto& [l, r] : list) {
        out += l * x * r;
    }
    return out;
}

namespace {

SuperOperator add_scaled(const SuperOperator& a, const SuperOperator& b, Complex b_scale) {
    if (a.dim() != b.dim()) {
        throw ShapeError("superoperator dimensions differ");
    }
    if (a.has_terms() && b.has_terms()) {
        TermList out = a.terms();
        for (const auto& [l, r] : b.terms()) {
            out.emplace_back(b_scale * l, r);
        }
        return SuperOperator::from_terms(std::move(out), a.dim());
    }
    return SuperOperator::from_matrix(a.matrix() + b_scale * b.matrix());
}

}  // namespace

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
    return add_scaled(a, b, Complex(1.0));
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
    return add_scaled(a, b, Complex(-1.0));
}

SuperOperator operator*(Complex scalar, const SuperOperator& a) {
    if (a.has_terms()) {
        TermList scaled = a.terms();
        for (auto& [l, r] : scaled) {
            l *= scalar;
        }
        return SuperOperator::from_terms(std::move(scaled), a.dim());
    }
    return SuperOperator::from_matrix(scalar * a.matrix());
}

SuperOperator conjugate(const SuperOperator& a) {
    if (a.has_terms()) {
        TermList conj_terms;
        conj_terms.reserve(a.terms().size());
        for (const auto& [l, r] : a.terms()) {
            conj_terms.emplace_back(conjugate(l), conjugate(r));
        }
        return SuperOperator::from_terms(std::move(conj_terms), a.dim());
    }
    return SuperOperator::from_matrix(conjugate(a.matrix()));
}

SuperOperator left_multiplication(const Matrix& p) {
    if (!p.is_square()) {
        throw ShapeError("left multiplication needs a square matrix");
    }
    return SuperOperator::from_terms({{p, Matrix::identity(p.rows())}}, p.rows());
}

SuperOperator right_multiplication(const Matrix& p) {
    if (!p.is_square()) {
        throw ShapeError("right multiplication needs a square matrix");
    }
    return SuperOperator::from_terms({{Matrix::identity(p.rows()), p}}, p.rows());
}

SuperOperator prime_transform(const SuperOperator& phi) {
    const std::size_t d = phi.dim();
    if (phi.has_terms()) {
        TermList swapped;
        swapped.reserve(phi.terms().size());
        for (const auto& [l, r] : phi.terms()) {
            swapped.emplace_back(r, l);
        }
        return SuperOperator::from_terms(std::move(swapped), d);
    }
    const std::size_t dd = d * d;
    const Matrix& src = phi.matrix();
    Matrix out(dd, dd);
    for (std::size_t a = 0; a < dd; ++a) {
        for (std::size_t b = 0; b < dd; ++b) {
            out(a, b) = src(shuffle_index(b, d), shuffle_index(a, d));
        }
    }
    return SuperOperator::from_matrix(std::move(out));
}

bool is_rt_symmetric(const SuperOperator& phi, double tol) {
    return max_abs_diff(phi.matrix(), prime_transform(phi).matrix()) <= tol;
}

bool is_rt_skew_symmetric(const SuperOperator& phi, double tol) {
    return max_abs(phi.matrix() + prime_transform(phi).matrix()) <= tol;
}

bool is_rt_hermitian(const SuperOperator& phi, double tol) {
    return max_abs_diff(phi.matrix(), conjugate(prime_transform(phi).matrix())) <= tol;
}

bool is_rt_skew_hermitian(const SuperOperator& phi, double tol) {
    return max_abs(phi.matrix() + conjugate(prime_transform(phi).matrix())) <= tol;
}

SuperOperator rt_symmetric_part(const SuperOperator& phi) {
    return Complex(0.5) * (phi + prime_transform(phi));
}

SuperOperator rt_skew_part(const SuperOperator& phi) {
    return Complex(0.5) * (phi - prime_transform(phi));
}

bool rearrangement_characterization(const SuperOperator& phi, double tol) {
    const std::size_t d = phi.dim();
    const Matrix lhs = transpose(rearrange(phi.matrix(), d));
    const Matrix rhs = rearrange(transpose(phi.matrix()), d);
    return max_abs_diff(lhs, rhs) <= tol;
}

}  // namespace kronsum
