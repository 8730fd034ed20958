#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kronsum/kron.hpp"
#include "kronsum/preserver.hpp"
#include "kronsum/random.hpp"
#include "kronsum/superop.hpp"
#include "support.hpp"

using kronsum::BlockDims;
using kronsum::Complex;
using kronsum::KroneckerTerm;
using kronsum::Matrix;
using kronsum::PreserverReport;
using kronsum::SuperOperator;
using testsup::check_close;

namespace {

Matrix rnd(std::size_t n, std::uint64_t seed) { return kronsum::sample_matrix(n, n, seed); }

Matrix traceless(std::size_t n, std::uint64_t seed) {
    return kronsum::sample_matrix(n, n, seed, kronsum::SampleKind::traceless);
}

const Matrix e11 = Matrix::unit(2, 0, 0);
const Matrix e12 = Matrix::unit(2, 0, 1);
const Matrix e21 = Matrix::unit(2, 1, 0);
const Matrix e22 = Matrix::unit(2, 1, 1);
const BlockDims d22(2, 2);
const BlockDims d23(2, 3);

}  // namespace

TEST_CASE("oracle") {
    CHECK(kronsum::oracle_preserves_trace(SuperOperator::identity(4), d22));
    CHECK_FALSE(kronsum::oracle_preserves_trace(
        Complex(2.0) * SuperOperator::identity(4), d22));

    const Matrix p = Matrix::identity(4) + kronsum::kron_product(e12, e21);
    CHECK(kronsum::oracle_preserves_trace(kronsum::left_multiplication(p), d22));

    CHECK_THROWS_AS(
        kronsum::oracle_preserves_trace(SuperOperator::identity(4), BlockDims(2, 3)),
        kronsum::ShapeError);
}

TEST_CASE("left multiplication check") {
    const PreserverReport clean = kronsum::check_left_mult(Matrix::identity(6), d23);
    CHECK(clean.holds_condition);
    CHECK(clean.holds_oracle);
    CHECK(clean.max_defect == 0.0);
    check_close(clean.residual_1, Matrix(3, 3), 0.0);
    check_close(clean.residual_2, Matrix(2, 2), 0.0);

    const Matrix p = Matrix::identity(4) + kronsum::kron_product(e12, e21);
    const PreserverReport shifted = kronsum::check_left_mult(p, d22);
    CHECK(shifted.holds_condition);
    CHECK(shifted.holds_oracle);

    const PreserverReport doubled = kronsum::check_left_mult(Complex(2.0) * Matrix::identity(4),
                                                             d22);
    CHECK_FALSE(doubled.holds_condition);
    CHECK_FALSE(doubled.holds_oracle);
    check_close(doubled.residual_1, Complex(2.0) * Matrix::identity(2), 0.0);
    check_close(doubled.residual_2, Complex(2.0) * Matrix::identity(2), 0.0);
    CHECK(doubled.max_defect == doctest::Approx(2.0));

    CHECK_THROWS_AS(kronsum::check_left_mult(Matrix::identity(5), d23), kronsum::ShapeError);
}

TEST_CASE("left multiplication theorem agreement on random input") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Matrix p = rnd(6, kronsum::derive_seed(13, "lm", seed));
        const PreserverReport report = kronsum::check_left_mult(p, d23);
        CHECK(report.holds_condition == report.holds_oracle);
    }
}

TEST_CASE("synthesized preservers") {
    check_close(kronsum::synth_left_mult_preserver(d23, 0, 5), Matrix::identity(6), 0.0);

    const Matrix p1 = kronsum::synth_left_mult_preserver(d22, 1, 5);
    CHECK(kronsum::check_left_mult(p1, d22).holds_condition);
    // the added term has traceless factors, so both partial traces of P - I vanish
    check_close(kronsum::partial_trace_1(p1 - Matrix::identity(4), d22), Matrix(2, 2), 1e-12);
    check_close(kronsum::partial_trace_2(p1 - Matrix::identity(4), d22), Matrix(2, 2), 1e-12);

    const Matrix p2 = kronsum::synth_left_mult_preserver(d23, 2, 6);
    CHECK(kronsum::oracle_preserves_trace(kronsum::left_multiplication(p2), d23));

    // scale covariance: adding another traceless-factor term keeps it passing
    const Matrix bump = kronsum::kron_product(traceless(2, 61), traceless(3, 62));
    CHECK(kronsum::check_left_mult(p2 + bump, d23).holds_oracle);

    CHECK(kronsum::synth_left_mult_preserver(d22, 1, 7) ==
          kronsum::synth_left_mult_preserver(d22, 1, 7));
}

TEST_CASE("traceless factors corollary") {
    const Matrix a1 = Matrix::diagonal({1.0, -1.0});
    const Matrix b1 = e12 + e21;
    const auto both = kronsum::corollary_traceless_iff({{a1, b1}}, d22);
    CHECK(both.factors_independent);
    CHECK(both.factors_traceless);
    CHECK(both.preserves);

    const auto neither = kronsum::corollary_traceless_iff({{e11, b1}}, d22);
    CHECK(neither.factors_independent);
    CHECK_FALSE(neither.factors_traceless);
    CHECK_FALSE(neither.preserves);

    const auto empty = kronsum::corollary_traceless_iff({}, d22);
    CHECK(empty.factors_independent);
    CHECK(empty.factors_traceless);
    CHECK(empty.preserves);

    // a repeated factor defeats the independence precondition
    const auto repeated = kronsum::corollary_traceless_iff({{a1, b1}, {a1, b1}}, d22);
    CHECK_FALSE(repeated.factors_independent);
}

TEST_CASE("commutator lemma, single-term instance") {
    const KroneckerTerm term{Matrix::identity(2), Matrix::identity(2), e12, e21};
    const PreserverReport report = kronsum::lemma_commutator_check({term}, d22);
    CHECK_FALSE(report.holds_condition);
    CHECK_FALSE(report.holds_oracle);

    // defect of phi(I) - I against tr(AB)[C,D] = 2(E11 - E22) is 2 E22
    check_close(report.residual_1, Complex(2.0) * e22, 1e-14);
    check_close(report.residual_2, Matrix::identity(2), 1e-14);

    const PreserverReport anti = kronsum::lemma_anticommutator_check({term}, d22);
    CHECK_FALSE(anti.holds_condition);
    CHECK_FALSE(anti.holds_oracle);
    check_close(anti.residual_1, Complex(-2.0) * e22, 1e-14);
    check_close(anti.residual_2, -Matrix::identity(2), 1e-14);
}

TEST_CASE("lemmas on empty terms") {
    const PreserverReport comm = kronsum::lemma_commutator_check({}, d22);
    CHECK(comm.holds_condition);
    CHECK(comm.holds_oracle);
    CHECK(comm.max_defect == 0.0);
    CHECK(kronsum::lemma_anticommutator_check({}, d22).holds_condition);
}

TEST_CASE("lemmas agree with the oracle on random instances") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<KroneckerTerm> terms;
        for (std::uint64_t j = 0; j < 3; ++j) {
            terms.push_back(KroneckerTerm{rnd(2, kronsum::derive_seed(seed, "a", j)),
                                          rnd(2, kronsum::derive_seed(seed, "b", j)),
                                          rnd(3, kronsum::derive_seed(seed, "c", j)),
                                          rnd(3, kronsum::derive_seed(seed, "d", j))});
        }
        const PreserverReport comm = kronsum::lemma_commutator_check(terms, d23);
        const PreserverReport anti = kronsum::lemma_anticommutator_check(terms, d23);
        CHECK(comm.holds_condition == comm.holds_oracle);
        CHECK(anti.holds_condition == anti.holds_oracle);
        CHECK(comm.holds_condition == anti.holds_condition);
    }
}

TEST_CASE("lemmas accept a preserving instance with nonzero right-hand sides") {
    // C = u v^T and D = w z^T with z orthogonal to u: DC = 0 and tr(CD) = 0,
    // so the map preserves although tr(AB) C D is nonzero.
    const Matrix u({{1.0}, {2.0}, {-1.0}});
    const Matrix v({{0.5}, {1.0}, {3.0}});
    const Matrix w({{2.0}, {-1.0}, {1.0}});
    const Matrix z({{2.0}, {-1.0}, {0.0}});
    const Matrix c = u * kronsum::transpose(v);
    const Matrix d = w * kronsum::transpose(z);
    REQUIRE(std::abs(kronsum::trace(c * d)) <= 1e-15);
    REQUIRE(kronsum::max_abs(d * c) <= 1e-15);
    REQUIRE(kronsum::max_abs(c * d) > 0.1);

    const KroneckerTerm term{rnd(2, 70), rnd(2, 71), c, d};
    const PreserverReport comm = kronsum::lemma_commutator_check({term}, d23);
    CHECK(comm.holds_oracle);
    CHECK(comm.holds_condition);
    CHECK(kronsum::lemma_anticommutator_check({term}, d23).holds_condition);
}

TEST_CASE("phi prime theorem") {
    CHECK(kronsum::theorem_phiprime_check(SuperOperator::identity(4), d22).holds_condition);

    const Matrix p = kronsum::synth_left_mult_preserver(d23, 2, 8);
    const PreserverReport lifted =
        kronsum::theorem_phiprime_check(kronsum::left_multiplication(p), d23);
    CHECK(lifted.holds_condition);
    CHECK(lifted.holds_oracle);

    // phi(M) = M + (E12 (x) I) M (E11 (x) I): the second partial-trace
    // identity fails with defect 2 E12, the first holds
    const SuperOperator phi =
        SuperOperator::identity(4) +
        SuperOperator::from_terms({{kronsum::kron_product(e12, Matrix::identity(2)),
                                    kronsum::kron_product(e11, Matrix::identity(2))}},
                                  4);
    const PreserverReport report = kronsum::theorem_phiprime_check(phi, d22);
    CHECK_FALSE(report.holds_condition);
    CHECK_FALSE(report.holds_oracle);
    check_close(report.residual_1, Matrix(2, 2), 1e-14);
    check_close(report.residual_2, Complex(2.0) * e12, 1e-14);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SuperOperator psi =
            SuperOperator::from_matrix(rnd(16, kronsum::derive_seed(14, "pp", seed)));
        const PreserverReport r = kronsum::theorem_phiprime_check(psi, d22);
        CHECK(r.holds_condition == r.holds_oracle);
    }
}

TEST_CASE("left multiplication and phi prime checks are consistent") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Matrix p = seed % 2 == 0 ? kronsum::synth_left_mult_preserver(d22, 1 + seed % 3, seed)
                                       : rnd(4, kronsum::derive_seed(15, "p", seed));
        const PreserverReport direct = kronsum::check_left_mult(p, d22);
        const PreserverReport lifted =
            kronsum::theorem_phiprime_check(kronsum::left_multiplication(p), d22);
        CHECK(direct.holds_condition == lifted.holds_condition);
        CHECK(direct.holds_oracle == lifted.holds_oracle);
    }
}

TEST_CASE("rt corollary") {
    CHECK(kronsum::corollary_rt_check(SuperOperator::identity(4), d22, 1e-9, false).holds_condition);

    // not RT-symmetric: class precondition enforced
    CHECK_THROWS_AS(kronsum::corollary_rt_check(
                        SuperOperator::from_terms({{kronsum::kron_product(e12, e21),
                                                    Matrix::identity(4)}},
                                                  4),
                        d22, 1e-9, false),
                    kronsum::SymmetryClassError);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Matrix p = kronsum::synth_left_mult_preserver(d22, 1 + seed % 3, seed);
        const SuperOperator sym = kronsum::rt_symmetric_part(kronsum::left_multiplication(p));
        const PreserverReport rep = kronsum::corollary_rt_check(sym, d22, 1e-9, false);
        CHECK(rep.holds_condition);
        CHECK(rep.holds_oracle);

        const SuperOperator skew = kronsum::rt_skew_part(
            SuperOperator::from_matrix(rnd(16, kronsum::derive_seed(16, "sk", seed))));
        const PreserverReport skew_rep = kronsum::corollary_rt_check(skew, d22, 1e-9, true);
        CHECK(skew_rep.holds_condition == skew_rep.holds_oracle);
    }

    // the sample skew map E12 M E21 - E21 M E12 on M_2 with dims (1,2)
    const SuperOperator skew_map =
        SuperOperator::from_terms({{e12, e21}, {Complex(-1.0) * e21, e12}}, 2);
    const PreserverReport rep = kronsum::corollary_rt_check(skew_map, BlockDims(1, 2), 1e-9, true);
    CHECK(rep.holds_condition == rep.holds_oracle);
    CHECK_FALSE(rep.holds_oracle);
}

TEST_CASE("operator sum factorization") {
    const Matrix p = rnd(4, 80);
    for (std::size_t count : {1, 2, 3}) {
        const kronsum::TermList terms = kronsum::factor_operator_sum(p, count, 81);
        REQUIRE(terms.size() == count);
        Matrix sum(4, 4);
        for (const auto& [pi, qi] : terms) {
            sum += qi * pi;
        }
        check_close(sum, p, 1e-10);

        // the factored map has the same traces as left multiplication by P
        const SuperOperator phi = SuperOperator::from_terms(terms, 4);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Matrix x = rnd(4, kronsum::derive_seed(17, "x", seed));
            const Complex got = kronsum::trace(phi.apply(x));
            const Complex want = kronsum::trace(p * x);
            CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
    CHECK_THROWS_AS(kronsum::factor_operator_sum(p, 0, 81), kronsum::ShapeError);
}

TEST_CASE("verdicts depend only on traces") {
    const std::size_t mn = d22.product();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix p = seed % 2 == 0 ? kronsum::synth_left_mult_preserver(d22, 2, seed)
                                       : rnd(mn, kronsum::derive_seed(18, "p", seed));
        const Matrix k = rnd(mn, kronsum::derive_seed(18, "k", seed));
        const SuperOperator phi = kronsum::left_multiplication(p);
        // adding M -> [K, M] contributes nothing to any trace
        const SuperOperator shifted =
            phi + SuperOperator::from_terms({{k, Matrix::identity(mn)},
                                             {Complex(-1.0) * Matrix::identity(mn), k}},
                                            mn);
        CHECK(kronsum::oracle_preserves_trace(phi, d22) ==
              kronsum::oracle_preserves_trace(shifted, d22));
    }
}
