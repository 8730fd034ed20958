#include "kronsum/preserver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "kronsum/matrix_functions.hpp"
#include "kronsum/random.hpp"

namespace kronsum {

namespace {

void require_dims(const SuperOperator& phi, const BlockDims& dims) {
    if (phi.dim() != dims.product()) {
        throw ShapeError("superoperator acts on M_" + std::to_string(phi.dim()) +
                         ", expected M_" + std::to_string(dims.product()));
    }
}

void require_term_shapes(const KroneckerTerm& term, const BlockDims& dims) {
    const auto is = [](const Matrix& x, std::size_t k) {
        return x.rows() == k && x.cols() == k;
    };
    if (!is(term.a, dims.m) || !is(term.b, dims.m) || !is(term.c, dims.n) ||
        !is(term.d, dims.n)) {
        throw ShapeError("term factors do not match block dimensions");
    }
}

PreserverReport make_report(bool oracle, Matrix residual_1, Matrix residual_2, double tol) {
    PreserverReport report;
    report.holds_oracle = oracle;
    report.residual_1 = std::move(residual_1);
    report.residual_2 = std::move(residual_2);
    report.max_defect = std::max(max_abs(report.residual_1), max_abs(report.residual_2));
    report.holds_condition = report.max_defect <= tol;
    return report;
}

/// Shared body of the two structured-form checks; the right-hand sides use
/// [C,D] and [A,B] when anti is false, the anticommutators when true.
PreserverReport lemma_check(const std::vector<KroneckerTerm>& terms, const BlockDims& dims,
                            double tol, bool anti) {
    SuperOperator phi = kron_term_map(terms, dims);
    const Matrix defect = phi.apply(Matrix::identity(dims.product())) -
                          Matrix::identity(dims.product());
    Matrix rhs_1(dims.n, dims.n);
    Matrix rhs_2(dims.m, dims.m);
    for (const auto& term : terms) {
        const Complex w1 = trace(term.a * term.b);
        const Complex w2 = trace(term.c * term.d);
        rhs_1 += w1 * (anti ? anticommutator(term.c, term.d) : commutator(term.c, term.d));
        rhs_2 += w2 * (anti ? anticommutator(term.a, term.b) : commutator(term.a, term.b));
    }
    return make_report(oracle_preserves_trace(phi, dims, tol),
                       partial_trace_1(defect, dims) - rhs_1,
                       partial_trace_2(defect, dims) - rhs_2, tol);
}

}  // namespace

bool oracle_preserves_trace(const SuperOperator& phi, const BlockDims& dims, double tol) {
    require_dims(phi, dims);
    const Matrix id_n = Matrix::identity(dims.n);
    const Matrix id_m = Matrix::identity(dims.m);
    for (std::size_t i = 0; i < dims.m; ++i) {
        for (std::size_t j = 0; j < dims.m; ++j) {
            const Complex expected = i == j ? Complex(double(dims.n)) : Complex(0.0);
            const Complex got = trace(phi.apply(kron_product(Matrix::unit(dims.m, i, j), id_n)));
            if (std::abs(got - expected) > tol) {
                return false;
            }
        }
    }
    for (std::size_t k = 0; k < dims.n; ++k) {
        for (std::size_t l = 0; l < dims.n; ++l) {
            const Complex expected = k == l ? Complex(double(dims.m)) : Complex(0.0);
            const Complex got = trace(phi.apply(kron_product(id_m, Matrix::unit(dims.n, k, l))));
            if (std::abs(got - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

PreserverReport check_left_mult(const Matrix& p, const BlockDims& dims, double tol) {
    const Matrix residual_1 =
        partial_trace_1(p, dims) - double(dims.m) * Matrix::identity(dims.n);
    const Matrix residual_2 =
        partial_trace_2(p, dims) - double(dims.n) * Matrix::identity(dims.m);
    return make_report(oracle_preserves_trace(left_multiplication(p), dims, tol), residual_1,
                       residual_2, tol);
}

Matrix synth_left_mult_preserver(const BlockDims& dims, std::size_t r, std::uint64_t seed) {
    Matrix p = Matrix::identity(dims.product());
    for (std::size_t j = 0; j < r; ++j) {
        const Matrix a =
            sample_matrix(dims.m, dims.m, derive_seed(seed, "synth-a", j), SampleKind::traceless);
        const Matrix b =
            sample_matrix(dims.n, dims.n, derive_seed(seed, "synth-b", j), SampleKind::traceless);
        p += kron_product(a, b);
    }
    return p;
}

SuperOperator kron_term_map(const std::vector<KroneckerTerm>& terms, const BlockDims& dims) {
    TermList list;
    list.reserve(terms.size() + 1);
    const std::size_t mn = dims.product();
    list.emplace_back(Matrix::identity(mn), Matrix::identity(mn));
    for (const auto& term : terms) {
        require_term_shapes(term, dims);
        list.emplace_back(kron_product(term.a, term.c), kron_product(term.b, term.d));
    }
    return SuperOperator::from_terms(std::move(list), mn);
}

TracelessIffResult corollary_traceless_iff(
    const std::vector<std::pair<Matrix, Matrix>>& factors, const BlockDims& dims, double tol) {
    TracelessIffResult result;
    result.factors_traceless = true;
    Matrix p = Matrix::identity(dims.product());
    for (const auto& [a, b] : factors) {
        if (a.rows() != dims.m || a.cols() != dims.m || b.rows() != dims.n ||
            b.cols() != dims.n) {
            throw ShapeError("factor shapes do not match block dimensions");
        }
        if (std::abs(trace(a)) > tol || std::abs(trace(b)) > tol) {
            result.factors_traceless = false;
        }
        p += kron_product(a, b);
    }
    result.preserves = oracle_preserves_trace(left_multiplication(p), dims, tol);

    result.factors_independent = true;
    if (!factors.empty()) {
        Matrix stacked_a(factors.size(), dims.m * dims.m);
        Matrix stacked_b(factors.size(), dims.n * dims.n);
        for (std::size_t j = 0; j < factors.size(); ++j) {
            const Matrix va = vec(factors[j].first);
            const Matrix vb = vec(factors[j].second);
            for (std::size_t k = 0; k < va.rows(); ++k) {
                stacked_a(j, k) = va(k, 0);
            }
            for (std::size_t k = 0; k < vb.rows(); ++k) {
                stacked_b(j, k) = vb(k, 0);
            }
        }
        result.factors_independent = numeric_rank(stacked_a) == factors.size() &&
                                     numeric_rank(stacked_b) == factors.size();
    }
    return result;
}

PreserverReport lemma_commutator_check(const std::vector<KroneckerTerm>& terms,
                                       const BlockDims& dims, double tol) {
    return lemma_check(terms, dims, tol, false);
}

PreserverReport lemma_anticommutator_check(const std::vector<KroneckerTerm>& terms,
                                           const BlockDims& dims, double tol) {
    return lemma_check(terms, dims, tol, true);
}

PreserverReport theorem_phiprime_check(const SuperOperator& phi, const BlockDims& dims,
                                       double tol) {
    require_dims(phi, dims);
    const Matrix prime_at_id = prime_transform(phi).apply(Matrix::identity(dims.product()));
    const Matrix residual_1 =
        partial_trace_1(prime_at_id, dims) - double(dims.m) * Matrix::identity(dims.n);
    const Matrix residual_2 =
        partial_trace_2(prime_at_id, dims) - double(dims.n) * Matrix::identity(dims.m);
    return make_report(oracle_preserves_trace(phi, dims, tol), residual_1, residual_2, tol);
}

PreserverReport corollary_rt_check(const SuperOperator& phi, const BlockDims& dims, double tol,
                                   bool skew) {
    require_dims(phi, dims);
    if (skew ? !is_rt_skew_symmetric(phi, tol) : !is_rt_symmetric(phi, tol)) {
        throw SymmetryClassError(skew ? "map is not skew RT-symmetric"
                                      : "map is not RT-symmetric");
    }
    const double sign = skew ? -1.0 : 1.0;
    const Matrix at_id = phi.apply(Matrix::identity(dims.product()));
    const Matrix residual_1 =
        partial_trace_1(at_id, dims) - sign * double(dims.m) * Matrix::identity(dims.n);
    const Matrix residual_2 =
        partial_trace_2(at_id, dims) - sign * double(dims.n) * Matrix::identity(dims.m);
    return make_report(oracle_preserves_trace(phi, dims, tol), residual_1, residual_2, tol);
}

TermList factor_operator_sum(const Matrix& p, std::size_t count, std::uint64_t seed) {
    if (!p.is_square()) {
        throw ShapeError("factorization needs a square matrix");
    }
    if (count == 0) {
        throw ShapeError("factorization needs at least one term");
    }
    const std::size_t d = p.rows();

    // Split P = sum_i T_i S_i, then disguise each term with a random
    // invertible G_i: (P_i, Q_i) = (G_i^-1 S_i, T_i G_i) leaves Q_i P_i
    // unchanged while making the factors generic.
    std::vector<Matrix> t(count);
    std::vector<Matrix> s(count);
    Matrix partial(d, d);
    for (std::size_t i = 0; i + 1 < count; ++i) {
        t[i] = sample_matrix(d, d, derive_seed(seed, "factor-t", i));
        s[i] = sample_matrix(d, d, derive_seed(seed, "factor-s", i));
        partial += t[i] * s[i];
    }
    t[count - 1] = sample_matrix(d, d, derive_seed(seed, "factor-t", count - 1));
    s[count - 1] = inverse(t[count - 1]) * (p - partial);

    TermList terms;
    terms.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Matrix g = sample_matrix(d, d, derive_seed(seed, "factor-g", i));
        terms.emplace_back(inverse(g) * s[i], t[i] * g);
    }
    return terms;
}

}  // namespace kronsum
