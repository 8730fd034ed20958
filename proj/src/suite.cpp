#include "kronsum/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kronsum/detkron.hpp"
#include "kronsum/matrix_functions.hpp"
#include "kronsum/preserver.hpp"
#include "kronsum/random.hpp"
#include "kronsum/superop.hpp"

namespace kronsum {

namespace {

struct TrialContext {
    BlockDims dims;
    std::size_t trial = 0;
    std::uint64_t seed = 0;   // per-trial seed
    double tol = 1e-9;
    Mutation mutation = Mutation::none;
};

using PropertyFn = double (*)(const TrialContext&);

struct PropertyDef {
    const char* name;
    double threshold;
    PropertyFn fn;
};

// --- samplers and shared constructions ----------------------------------

Matrix rnd(const TrialContext& ctx, const char* label, std::uint64_t idx, std::size_t rows,
           std::size_t cols, SampleKind kind = SampleKind::general) {
    return sample_matrix(rows, cols, derive_seed(ctx.seed, label, idx), kind);
}

Matrix rnd_scaled(const TrialContext& ctx, const char* label, std::uint64_t idx,
                  std::size_t size, double target) {
    Matrix x = rnd(ctx, label, idx, size, size);
    const double norm = one_norm(x);
    if (norm > 0.0) {
        x *= Complex(target / norm);
    }
    return x;
}

double rel(double diff, double scale) { return diff / std::max(1.0, scale); }

double agreement(bool a, bool b) { return a == b ? 0.0 : 1.0; }

Matrix synth_p(const TrialContext& ctx, const char* label, std::size_t r) {
    return synth_left_mult_preserver(ctx.dims, r, derive_seed(ctx.seed, label, 0));
}

/// Preserving P plus a bump that breaks both partial-trace conditions.
Matrix perturbed_p(const TrialContext& ctx, const char* label) {
    Matrix p = synth_p(ctx, label, 1 + ctx.trial % 3);
    const Matrix bump = kron_product(Matrix::unit(ctx.dims.m, ctx.trial % ctx.dims.m,
                                                  ctx.trial % ctx.dims.m),
                                     Matrix::unit(ctx.dims.n, ctx.trial % ctx.dims.n,
                                                  ctx.trial % ctx.dims.n));
    p += Complex(0.8) * bump;
    return p;
}

/// M -> KM - MK; traceless on every input, so adding it never changes a
/// trace-preservation verdict.
SuperOperator commutator_map(const Matrix& k) {
    const std::size_t d = k.rows();
    return SuperOperator::from_terms({{k, Matrix::identity(d)},
                                      {Complex(-1.0) * Matrix::identity(d), k}},
                                     d);
}

SuperOperator random_matrix_map(const TrialContext& ctx, const char* label) {
    const std::size_t dd = ctx.dims.product() * ctx.dims.product();
    return SuperOperator::from_matrix(rnd(ctx, label, 9, dd, dd));
}

std::vector<KroneckerTerm> random_terms(const TrialContext& ctx, const char* label,
                                        std::size_t count) {
    std::vector<KroneckerTerm> terms;
    terms.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        terms.push_back(KroneckerTerm{rnd(ctx, label, 4 * j + 0, ctx.dims.m, ctx.dims.m),
                                      rnd(ctx, label, 4 * j + 1, ctx.dims.m, ctx.dims.m),
                                      rnd(ctx, label, 4 * j + 2, ctx.dims.n, ctx.dims.n),
                                      rnd(ctx, label, 4 * j + 3, ctx.dims.n, ctx.dims.n)});
    }
    return terms;
}

/// A rank-one pair C = u v^T, D = w z^T with z^T u = 0 and v^T w != 0, so
/// DC = 0 and tr(CD) = 0 while CD != 0. A term built from such C, D (and
/// any A, B) always preserves, yet its commutator right-hand side
/// tr(AB) C D is nonzero: exactly the shape that exposes a sign bug in the
/// criterion's right-hand side.
std::pair<Matrix, Matrix> annihilating_pair(const TrialContext& ctx, const char* label) {
    const std::size_t n = ctx.dims.n;
    const Matrix u = rnd(ctx, label, 0, n, 1);
    const Matrix v = rnd(ctx, label, 1, n, 1);
    const Matrix w = rnd(ctx, label, 2, n, 1);
    Matrix z(n, 1);
    z(0, 0) = u(1, 0);
    z(1, 0) = -u(0, 0);
    return {u * transpose(v), w * transpose(z)};
}

/// Preserving structured instances with a nonzero commutator right-hand
/// side (even trials) or with all right-hand sides zero (odd trials).
std::vector<KroneckerTerm> preserving_terms(const TrialContext& ctx, const char* label) {
    const std::size_t m = ctx.dims.m;
    if (ctx.trial % 2 == 0) {
        auto [c, d] = annihilating_pair(ctx, label);
        return {KroneckerTerm{rnd(ctx, label, 10, m, m), rnd(ctx, label, 11, m, m),
                              std::move(c), std::move(d)}};
    }
    // tr(AB) = tr(CD) = 0 by adjusting B and D against shifted A and C.
    const Matrix a = rnd(ctx, label, 20, m, m) + Complex(1.5) * Matrix::identity(m);
    Matrix b = rnd(ctx, label, 21, m, m);
    b -= (trace(a * b) / trace(a)) * Matrix::identity(m);
    const std::size_t n = ctx.dims.n;
    const Matrix c = rnd(ctx, label, 22, n, n) + Complex(1.5) * Matrix::identity(n);
    Matrix d = rnd(ctx, label, 23, n, n);
    d -= (trace(c * d) / trace(c)) * Matrix::identity(n);
    return {KroneckerTerm{a, b, c, d}};
}

/// The commutator criterion evaluated with the right-hand sides negated;
/// only reachable through Mutation::negate_commutator.
bool mutated_commutator_condition(const std::vector<KroneckerTerm>& terms,
                                  const BlockDims& dims, double tol) {
    const SuperOperator phi = kron_term_map(terms, dims);
    const Matrix defect =
        phi.apply(Matrix::identity(dims.product())) - Matrix::identity(dims.product());
    Matrix rhs_1(dims.n, dims.n);
    Matrix rhs_2(dims.m, dims.m);
    for (const auto& term : terms) {
        rhs_1 += trace(term.a * term.b) * commutator(term.c, term.d);
        rhs_2 += trace(term.c * term.d) * commutator(term.a, term.b);
    }
    const double defect_1 = max_abs(partial_trace_1(defect, dims) + rhs_1);
    const double defect_2 = max_abs(partial_trace_2(defect, dims) + rhs_2);
    return std::max(defect_1, defect_2) <= tol;
}

SuperOperator constructed_preserver(const TrialContext& ctx, const char* label) {
    const std::size_t mn = ctx.dims.product();
    switch (ctx.trial % 4) {
        case 0:
            return left_multiplication(synth_p(ctx, label, 1 + ctx.trial % 3));
        case 1:
            return SuperOperator::from_terms(
                factor_operator_sum(synth_p(ctx, label, 2), 2, derive_seed(ctx.seed, label, 70)),
                mn);
        case 2:
            return left_multiplication(synth_p(ctx, label, 1)) +
                   commutator_map(rnd(ctx, label, 71, mn, mn));
        default:
            return rt_symmetric_part(left_multiplication(synth_p(ctx, label, 2)));
    }
}

/// (phi + conj(phi'))/2: RT-Hermitian by construction, and a preserver
/// whenever phi is a left multiplication by a preserving P (the average
/// acts like left multiplication by Re(P) on traces).
SuperOperator hermitianized(const SuperOperator& phi) {
    return Complex(0.5) * (phi + conjugate(prime_transform(phi)));
}

SuperOperator skew_hermitian_of(const SuperOperator& phi) {
    return Complex(0.5) * (phi - conjugate(prime_transform(phi)));
}

// --- core-matrix properties ----------------------------------------------

double p_trace_cyclic(const TrialContext& ctx) {
    const Matrix x = rnd(ctx, "tc-x", 0, ctx.dims.m, ctx.dims.n);
    const Matrix y = rnd(ctx, "tc-y", 0, ctx.dims.n, ctx.dims.m);
    const Complex a = trace(x * y);
    const Complex b = trace(y * x);
    return rel(std::abs(a - b), std::abs(a));
}

double p_det_multiplicative(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = rnd(ctx, "dm-x", 0, mn, mn);
    const Matrix y = rnd(ctx, "dm-y", 0, mn, mn);
    const Complex lhs = determinant(x * y);
    const Complex rhs = determinant(x) * determinant(y);
    return rel(std::abs(lhs - rhs), std::abs(rhs));
}

double p_exp_log_round_trip(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = expm(rnd_scaled(ctx, "elr-m", 0, mn, 0.9));
    const Matrix back = expm(logm_principal(x));
    return rel(max_abs_diff(back, x), max_abs(x));
}

double p_trace_commutator_zero(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = rnd(ctx, "tcz-x", 0, mn, mn);
    const Matrix y = rnd(ctx, "tcz-y", 0, mn, mn);
    return std::abs(trace(commutator(x, y)));
}

double p_principal_log_branch(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix raw = rnd(ctx, "plb-lam", 0, mn, 1);
    std::vector<Complex> lambda(mn);
    std::vector<Complex> exp_lambda(mn);
    for (std::size_t i = 0; i < mn; ++i) {
        lambda[i] = Complex(raw(i, 0).real(), 0.9 * std::numbers::pi * raw(i, 0).imag());
        exp_lambda[i] = std::exp(lambda[i]);
    }
    const Matrix s = Matrix::identity(mn) + rnd_scaled(ctx, "plb-s", 0, mn, 0.35);
    const Matrix s_inv = inverse(s);
    const Matrix x = s * Matrix::diagonal(exp_lambda) * s_inv;
    const Matrix expected = s * Matrix::diagonal(lambda) * s_inv;
    return rel(max_abs_diff(logm_principal(x), expected), max_abs(expected));
}

double p_sampler_contracts(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix t = rnd(ctx, "sc-t", 0, mn, mn, SampleKind::traceless);
    const Matrix h = rnd(ctx, "sc-h", 0, mn, mn, SampleKind::hermitian);
    double defect = std::abs(trace(t));
    defect = std::max(defect, max_abs_diff(h, adjoint(h)));
    const Matrix again = rnd(ctx, "sc-t", 0, mn, mn, SampleKind::traceless);
    if (!(t == again)) {
        defect = std::max(defect, 1.0);
    }
    const Matrix other = rnd(ctx, "sc-t", 1, mn, mn, SampleKind::traceless);
    if (t == other) {
        defect = std::max(defect, 1.0);
    }
    return defect;
}

// --- kron properties -------------------------------------------------------

double p_partial_trace_preserves_trace(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = rnd(ctx, "ptt-x", 0, mn, mn);
    const Complex full = trace(x);
    const double d1 = std::abs(trace(partial_trace_1(x, ctx.dims)) - full);
    const double d2 = std::abs(trace(partial_trace_2(x, ctx.dims)) - full);
    return rel(std::max(d1, d2), std::abs(full));
}

double p_partial_trace_linear(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = rnd(ctx, "ptl-x", 0, mn, mn);
    const Matrix y = rnd(ctx, "ptl-y", 0, mn, mn);
    const Complex alpha(0.7, -0.3);
    const Complex beta(-1.2, 0.4);
    const Matrix combo = alpha * x + beta * y;
    const double d1 = max_abs_diff(partial_trace_1(combo, ctx.dims),
                                   alpha * partial_trace_1(x, ctx.dims) +
                                       beta * partial_trace_1(y, ctx.dims));
    const double d2 = max_abs_diff(partial_trace_2(combo, ctx.dims),
                                   alpha * partial_trace_2(x, ctx.dims) +
                                       beta * partial_trace_2(y, ctx.dims));
    return std::max(d1, d2);
}

double p_kron_mixed_product(const TrialContext& ctx) {
    const Matrix a = rnd(ctx, "kmp-a", 0, ctx.dims.m, ctx.dims.m);
    const Matrix b = rnd(ctx, "kmp-b", 0, ctx.dims.n, ctx.dims.n);
    const Matrix c = rnd(ctx, "kmp-c", 0, ctx.dims.m, ctx.dims.m);
    const Matrix d = rnd(ctx, "kmp-d", 0, ctx.dims.n, ctx.dims.n);
    return max_abs_diff(kron_product(a, b) * kron_product(c, d),
                        kron_product(a * c, b * d));
}

double p_det_kron_product(const TrialContext& ctx) {
    const Matrix a = rnd(ctx, "dkp-a", 0, ctx.dims.m, ctx.dims.m);
    const Matrix b = rnd(ctx, "dkp-b", 0, ctx.dims.n, ctx.dims.n);
    const Complex lhs = determinant(kron_product(a, b));
    const Complex rhs = std::pow(determinant(a), double(ctx.dims.n)) *
                        std::pow(determinant(b), double(ctx.dims.m));
    return rel(std::abs(lhs - rhs), std::abs(rhs));
}

double p_det_exp_kron_sum(const TrialContext& ctx) {
    const Matrix a = rnd_scaled(ctx, "dek-a", 0, ctx.dims.m, 0.8);
    const Matrix b = rnd_scaled(ctx, "dek-b", 0, ctx.dims.n, 0.8);
    const Matrix sum = kron_sum(a, b);
    const Complex lhs = determinant(expm(sum));
    const Complex rhs = std::exp(trace(sum));
    return std::abs(lhs - rhs) / std::abs(rhs);
}

double p_exp_kron_sum_factorizes(const TrialContext& ctx) {
    const Matrix a = rnd_scaled(ctx, "eks-a", 0, ctx.dims.m, 0.8);
    const Matrix b = rnd_scaled(ctx, "eks-b", 0, ctx.dims.n, 0.8);
    const Matrix lhs = expm(kron_sum(a, b));
    const Matrix rhs = kron_product(expm(a), expm(b));
    return rel(max_abs_diff(lhs, rhs), max_abs(rhs));
}

double p_kron_sum_trace(const TrialContext& ctx) {
    const Matrix a = rnd(ctx, "kst-a", 0, ctx.dims.m, ctx.dims.m);
    const Matrix b = rnd(ctx, "kst-b", 0, ctx.dims.n, ctx.dims.n);
    const Complex lhs = trace(kron_sum(a, b));
    const Complex rhs = double(ctx.dims.n) * trace(a) + double(ctx.dims.m) * trace(b);
    return rel(std::abs(lhs - rhs), std::abs(rhs));
}

double p_shuffle_swaps_factors(const TrialContext& ctx) {
    const Matrix a = rnd(ctx, "ssf-a", 0, ctx.dims.m, ctx.dims.m);
    const Matrix b = rnd(ctx, "ssf-b", 0, ctx.dims.n, ctx.dims.n);
    const Matrix p = perfect_shuffle(ctx.dims.m, ctx.dims.n);
    return max_abs_diff(transpose(p) * kron_product(a, b) * p, kron_product(b, a));
}

double p_shuffle_exchanges_partial_traces(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = rnd(ctx, "spt-x", 0, mn, mn);
    const Matrix p = perfect_shuffle(ctx.dims.m, ctx.dims.n);
    const Matrix shuffled = transpose(p) * x * p;
    const BlockDims swapped(ctx.dims.n, ctx.dims.m);
    const double d1 = max_abs_diff(partial_trace_1(x, ctx.dims),
                                   partial_trace_2(shuffled, swapped));
    const double d2 = max_abs_diff(partial_trace_2(x, ctx.dims),
                                   partial_trace_1(shuffled, swapped));
    return std::max(d1, d2);
}

double p_partial_trace_product_identities(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix x = rnd(ctx, "pti-x", 0, mn, mn);
    const Matrix b = rnd(ctx, "pti-b", 0, ctx.dims.n, ctx.dims.n);
    const Matrix c = rnd(ctx, "pti-c", 0, ctx.dims.m, ctx.dims.m);
    const double d1 =
        max_abs_diff(partial_trace_1(x * kron_product(Matrix::identity(ctx.dims.m), b), ctx.dims),
                     partial_trace_1(x, ctx.dims) * b);
    const double d2 =
        max_abs_diff(partial_trace_2(x * kron_product(c, Matrix::identity(ctx.dims.n)), ctx.dims),
                     partial_trace_2(x, ctx.dims) * c);
    return std::max(d1, d2);
}

double p_rearrange_properties(const TrialContext& ctx) {
    const std::size_t d = ctx.dims.m;
    const Matrix a = rnd(ctx, "rr-a", 0, d, d);
    const Matrix b = rnd(ctx, "rr-b", 0, d, d);
    double defect =
        max_abs_diff(rearrange(kron_product(a, b), d), vec(a) * transpose(vec(b)));
    const Matrix x = rnd(ctx, "rr-x", 0, d * d, d * d);
    defect = std::max(defect, max_abs_diff(rearrange(rearrange(x, d), d), x));
    return defect;
}

double p_vec_linear(const TrialContext& ctx) {
    const Matrix x = rnd(ctx, "vl-x", 0, ctx.dims.m, ctx.dims.n);
    const Matrix y = rnd(ctx, "vl-y", 0, ctx.dims.m, ctx.dims.n);
    const Complex alpha(0.3, 1.1);
    const Complex beta(-0.8, 0.2);
    double defect = max_abs_diff(vec(alpha * x + beta * y), alpha * vec(x) + beta * vec(y));
    defect = std::max(defect, max_abs_diff(unvec(vec(x), x.rows(), x.cols()), x));
    return defect;
}

// --- superop properties ----------------------------------------------------

double p_prime_involution(const TrialContext& ctx) {
    const SuperOperator phi = random_matrix_map(ctx, "pi-phi");
    double defect = prime_transform(prime_transform(phi)).matrix() == phi.matrix() ? 0.0 : 1.0;
    const std::size_t mn = ctx.dims.product();
    const SuperOperator with_terms = SuperOperator::from_terms(
        {{rnd(ctx, "pi-l", 0, mn, mn), rnd(ctx, "pi-r", 0, mn, mn)}}, mn);
    if (!(prime_transform(prime_transform(with_terms)).matrix() == with_terms.matrix())) {
        defect = 1.0;
    }
    return defect;
}

double p_prime_shuffle_relation(const TrialContext& ctx) {
    const SuperOperator phi = random_matrix_map(ctx, "psr-phi");
    const std::size_t mn = ctx.dims.product();
    const Matrix p = perfect_shuffle(mn, mn);
    const Matrix expected = p * transpose(phi.matrix()) * transpose(p);
    return max_abs_diff(prime_transform(phi).matrix(), expected);
}

double p_rt_tests_agree(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix p = perfect_shuffle(mn, mn);
    const SuperOperator base = random_matrix_map(ctx, "rta-phi");
    const SuperOperator sym = rt_symmetric_part(base);
    const SuperOperator skew = rt_skew_part(base);
    const SuperOperator near = sym + Complex(1e-6) * skew;
    double defect = 0.0;
    for (const SuperOperator* phi : {&base, &sym, &skew, &near}) {
        const bool entrywise = is_rt_symmetric(*phi, ctx.tol);
        const bool shuffled =
            max_abs_diff(transpose(phi->matrix()), transpose(p) * phi->matrix() * p) <= ctx.tol;
        const bool rearranged = rearrangement_characterization(*phi, ctx.tol);
        if (entrywise != shuffled || entrywise != rearranged) {
            defect = 1.0;
        }
    }
    return defect;
}

double p_rt_decomposition(const TrialContext& ctx) {
    const SuperOperator phi = random_matrix_map(ctx, "rtd-phi");
    const SuperOperator sym = rt_symmetric_part(phi);
    const SuperOperator skew = rt_skew_part(phi);
    double defect = max_abs_diff((sym + skew).matrix(), phi.matrix());
    if (!is_rt_symmetric(sym, 1e-12) || !is_rt_skew_symmetric(skew, 1e-12)) {
        defect = std::max(defect, 1.0);
    }
    defect = std::max(defect, std::abs(trace(adjoint(sym.matrix()) * skew.matrix())));
    return defect;
}

double p_prime_left_right_mult(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix p = rnd(ctx, "plr-p", 0, mn, mn);
    const Matrix x = rnd(ctx, "plr-x", 0, mn, mn);
    const SuperOperator primed = prime_transform(left_multiplication(p));
    return max_abs_diff(primed.apply(x), x * p);
}

double p_apply_matches_terms(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    TermList terms;
    for (std::size_t j = 0; j < 3; ++j) {
        terms.emplace_back(rnd(ctx, "amt-l", j, mn, mn), rnd(ctx, "amt-r", j, mn, mn));
    }
    const SuperOperator phi = SuperOperator::from_terms(std::move(terms), mn);
    const Matrix x = rnd(ctx, "amt-x", 0, mn, mn);
    return rel(max_abs_diff(phi.apply(x), phi.apply_via_terms(x)), max_abs(x));
}

// --- preserver properties ---------------------------------------------------

double p_left_mult_theorem(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    Matrix p(1, 1);
    bool expect_known = false;
    bool expected = false;
    switch (ctx.trial % 3) {
        case 0:
            p = synth_p(ctx, "lmt-p", ctx.trial % 4);
            expect_known = true;
            expected = true;
            break;
        case 1:
            p = perturbed_p(ctx, "lmt-q");
            expect_known = true;
            expected = false;
            break;
        default:
            p = rnd(ctx, "lmt-r", 0, mn, mn);
            break;
    }
    const PreserverReport report = check_left_mult(p, ctx.dims, ctx.tol);
    double defect = agreement(report.holds_condition, report.holds_oracle);
    if (expect_known && report.holds_condition != expected) {
        defect = 1.0;
    }
    return defect;
}

double p_synth_preserver_oracle(const TrialContext& ctx) {
    Matrix p = synth_p(ctx, "spo-p", ctx.trial % 4);
    const PreserverReport report = check_left_mult(p, ctx.dims, ctx.tol);
    double defect = (report.holds_oracle && report.holds_condition) ? 0.0 : 1.0;
    // Additivity: traceless-factor bumps keep both partial-trace conditions.
    p += kron_product(rnd(ctx, "spo-a", 0, ctx.dims.m, ctx.dims.m, SampleKind::traceless),
                      rnd(ctx, "spo-b", 0, ctx.dims.n, ctx.dims.n, SampleKind::traceless));
    const PreserverReport bumped = check_left_mult(p, ctx.dims, ctx.tol);
    if (!bumped.holds_oracle || !bumped.holds_condition) {
        defect = 1.0;
    }
    return defect;
}

double p_corollary_traceless_iff(const TrialContext& ctx) {
    const std::size_t r = 1 + ctx.trial % 3;
    std::vector<std::pair<Matrix, Matrix>> factors;
    for (std::size_t j = 0; j < r; ++j) {
        factors.emplace_back(
            rnd(ctx, "cti-a", j, ctx.dims.m, ctx.dims.m, SampleKind::traceless),
            rnd(ctx, "cti-b", j, ctx.dims.n, ctx.dims.n, SampleKind::traceless));
    }
    const TracelessIffResult clean = corollary_traceless_iff(factors, ctx.dims, ctx.tol);
    double defect = 0.0;
    if (clean.factors_independent && !(clean.factors_traceless && clean.preserves)) {
        defect = 1.0;
    }
    factors[0].first += Complex(0.7) * Matrix::identity(ctx.dims.m);
    const TracelessIffResult dirty = corollary_traceless_iff(factors, ctx.dims, ctx.tol);
    if (dirty.factors_independent && (dirty.factors_traceless || dirty.preserves)) {
        defect = 1.0;
    }
    return defect;
}

double p_lemma_commutator(const TrialContext& ctx) {
    const std::vector<KroneckerTerm> terms = ctx.trial % 2 == 0
                                                 ? preserving_terms(ctx, "lc-keep")
                                                 : random_terms(ctx, "lc-rand", 1 + ctx.trial % 2);
    const PreserverReport report = lemma_commutator_check(terms, ctx.dims, ctx.tol);
    bool condition = report.holds_condition;
    if (ctx.mutation == Mutation::negate_commutator) {
        condition = mutated_commutator_condition(terms, ctx.dims, ctx.tol);
    }
    return agreement(condition, report.holds_oracle);
}

double p_lemma_anticommutator(const TrialContext& ctx) {
    const std::vector<KroneckerTerm> terms = ctx.trial % 2 == 0
                                                 ? preserving_terms(ctx, "la-keep")
                                                 : random_terms(ctx, "la-rand", 1 + ctx.trial % 2);
    const PreserverReport anti = lemma_anticommutator_check(terms, ctx.dims, ctx.tol);
    const PreserverReport comm = lemma_commutator_check(terms, ctx.dims, ctx.tol);
    double defect = agreement(anti.holds_condition, anti.holds_oracle);
    defect = std::max(defect, agreement(anti.holds_condition, comm.holds_condition));
    return defect;
}

double p_phiprime_theorem(const TrialContext& ctx) {
    SuperOperator phi = SuperOperator::identity(ctx.dims.product());
    bool expect_known = false;
    bool expected = false;
    switch (ctx.trial % 3) {
        case 0:
            phi = random_matrix_map(ctx, "ppt-r");
            break;
        case 1:
            phi = constructed_preserver(ctx, "ppt-p");
            expect_known = true;
            expected = true;
            break;
        default:
            phi = left_multiplication(perturbed_p(ctx, "ppt-q"));
            expect_known = true;
            expected = false;
            break;
    }
    const PreserverReport report = theorem_phiprime_check(phi, ctx.dims, ctx.tol);
    double defect = agreement(report.holds_condition, report.holds_oracle);
    if (expect_known && report.holds_condition != expected) {
        defect = 1.0;
    }
    return defect;
}

double p_left_mult_vs_phiprime(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix p = ctx.trial % 2 == 0 ? synth_p(ctx, "lvp-p", 1 + ctx.trial % 3)
                                        : rnd(ctx, "lvp-r", 0, mn, mn);
    const PreserverReport direct = check_left_mult(p, ctx.dims, ctx.tol);
    const PreserverReport via_prime =
        theorem_phiprime_check(left_multiplication(p), ctx.dims, ctx.tol);
    double defect = agreement(direct.holds_condition, via_prime.holds_condition);
    defect = std::max(defect, agreement(direct.holds_oracle, via_prime.holds_oracle));
    return defect;
}

double p_rt_corollary(const TrialContext& ctx) {
    const bool preserving = ctx.trial % 2 == 0;
    const Matrix p = preserving ? synth_p(ctx, "rtc-p", 1 + ctx.trial % 3)
                                : perturbed_p(ctx, "rtc-q");
    const SuperOperator sym = rt_symmetric_part(left_multiplication(p));
    const PreserverReport rep = corollary_rt_check(sym, ctx.dims, ctx.tol, false);
    double defect = agreement(rep.holds_condition, rep.holds_oracle);
    if (rep.holds_condition != preserving) {
        defect = 1.0;
    }
    const SuperOperator skew = rt_skew_part(random_matrix_map(ctx, "rtc-s"));
    const PreserverReport skew_rep = corollary_rt_check(skew, ctx.dims, ctx.tol, true);
    defect = std::max(defect, agreement(skew_rep.holds_condition, skew_rep.holds_oracle));
    return defect;
}

double p_trace_determined_verdict(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const Matrix p = ctx.trial % 2 == 0 ? synth_p(ctx, "tdv-p", 1 + ctx.trial % 3)
                                        : rnd(ctx, "tdv-r", 0, mn, mn);
    const SuperOperator phi = left_multiplication(p);
    const SuperOperator shifted = phi + commutator_map(rnd(ctx, "tdv-k", 0, mn, mn));
    return agreement(oracle_preserves_trace(phi, ctx.dims, ctx.tol),
                     oracle_preserves_trace(shifted, ctx.dims, ctx.tol));
}

// --- detkron properties -------------------------------------------------------

double p_norm_trace_additive(const TrialContext& ctx) {
    const Matrix a = rnd(ctx, "nta-a", 0, ctx.dims.m, ctx.dims.m);
    const Matrix b = rnd(ctx, "nta-b", 0, ctx.dims.n, ctx.dims.n);
    const Complex lhs = norm_trace(kron_sum(a, b));
    const Complex rhs = norm_trace(a) + norm_trace(b);
    return rel(std::abs(lhs - rhs), std::abs(rhs));
}

double p_coset_equivalence(const TrialContext& ctx) {
    const std::size_t k = ctx.dims.product();
    const Matrix draw = rnd(ctx, "ce-z", 0, 1, 2);
    const Complex z = draw(0, 0) + Complex(2.0);
    const auto root = [&](std::size_t j) {
        const double angle = 2.0 * std::numbers::pi * double(j) / double(k);
        return Complex(std::cos(angle), std::sin(angle));
    };
    const RootCoset a{z, k};
    const RootCoset b{z * root(ctx.trial % k), k};
    const RootCoset c{z * root((ctx.trial + 1) % k), k};
    double defect = 0.0;
    if (!coset_equal(a, a) || !coset_equal(a, b) || !coset_equal(b, a)) {
        defect = 1.0;
    }
    if (!coset_equal(a, c) || !coset_equal(b, c)) {
        defect = 1.0;
    }
    if (coset_equal(a, RootCoset{Complex(1.5) * z, k})) {
        defect = 1.0;
    }
    if (coset_equal(a, RootCoset{z, k + 1})) {
        defect = 1.0;
    }
    return defect;
}

double p_norm_det_kron_coset(const TrialContext& ctx) {
    const Matrix a = rnd_scaled(ctx, "ndk-a", 0, ctx.dims.m, 0.7);
    const Matrix b = rnd_scaled(ctx, "ndk-b", 0, ctx.dims.n, 0.7);
    const Matrix x = kron_product(expm(a), expm(b));
    const std::size_t mn = ctx.dims.product();
    const RootCoset lhs = norm_det(x);
    const RootCoset rhs{std::exp(trace(kron_sum(a, b)) / double(mn)), mn};
    double defect = coset_equal(lhs, rhs) ? 0.0 : 1.0;
    if (coset_equal(norm_det(Complex(2.0) * x), rhs)) {
        defect = 1.0;
    }
    return defect;
}

double p_partial_det_coset_identities(const TrialContext& ctx) {
    const Matrix a = rnd_scaled(ctx, "pdc-a", 0, ctx.dims.m, 0.4);
    const Matrix b = rnd_scaled(ctx, "pdc-b", 0, ctx.dims.n, 0.4);
    const Matrix value = kron_product(expm(a), expm(b));
    const Matrix sum = kron_sum(a, b);
    const CosetMatrix expected_1{expm(norm_partial_trace(sum, ctx.dims, Part::first)),
                                 RootCoset{Complex(1.0), ctx.dims.m}};
    const CosetMatrix expected_2{expm(norm_partial_trace(sum, ctx.dims, Part::second)),
                                 RootCoset{Complex(1.0), ctx.dims.n}};
    const bool ok_1 =
        coset_matrix_equal(partial_det(value, ctx.dims, Part::first), expected_1);
    const bool ok_2 =
        coset_matrix_equal(partial_det(value, ctx.dims, Part::second), expected_2);
    return ok_1 && ok_2 ? 0.0 : 1.0;
}

double p_partial_det_full_det_compat(const TrialContext& ctx) {
    const Matrix a = rnd_scaled(ctx, "pdf-a", 0, ctx.dims.m, 0.5);
    const Matrix b = rnd_scaled(ctx, "pdf-b", 0, ctx.dims.n, 0.5);
    const Matrix sum = kron_sum(a, b);
    const OmegaWitness witness = OmegaWitness::from_log(sum);
    const std::size_t mn = ctx.dims.product();
    const CosetMatrix det_2 = partial_det(witness, ctx.dims, Part::second);
    const RootCoset folded{norm_det(det_2.base).rep, mn};
    const RootCoset full{std::exp(trace(sum) / double(mn)), mn};
    return coset_equal(folded, full) ? 0.0 : 1.0;
}

double p_blockwise_det_kron(const TrialContext& ctx) {
    const Matrix a = rnd(ctx, "bdk-a", 0, ctx.dims.m, ctx.dims.m);
    const Matrix b = rnd(ctx, "bdk-b", 0, ctx.dims.n, ctx.dims.n);
    const Complex det_b = determinant(b);
    Matrix expected(ctx.dims.m, ctx.dims.m);
    for (std::size_t i = 0; i < ctx.dims.m; ++i) {
        for (std::size_t j = 0; j < ctx.dims.m; ++j) {
            expected(i, j) = det_b * std::pow(a(i, j), double(ctx.dims.n));
        }
    }
    return rel(max_abs_diff(blockwise_det(kron_product(a, b), ctx.dims), expected),
               max_abs(expected));
}

double p_psi_det_identity(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const std::size_t dd = mn * mn;
    const SuperOperator phi =
        SuperOperator::from_matrix(Complex(1.0 / double(dd)) * rnd(ctx, "pdi-phi", 0, dd, dd));
    const PsiMap psi{phi, ctx.dims};
    const OmegaWitness input = OmegaWitness::from_log(rnd_scaled(ctx, "pdi-m", 0, mn, 0.5));
    const OmegaWitness output = psi_apply(psi, input);
    const Complex lhs = determinant(output.value);
    const Complex rhs = std::exp(trace(output.log_part));
    return rel(std::abs(lhs - rhs), std::abs(rhs));
}

double p_det_preserver_iff_trace(const TrialContext& ctx) {
    const std::size_t mn = ctx.dims.product();
    const bool preserving = ctx.trial % 2 == 0;
    const SuperOperator phi =
        preserving ? left_multiplication(synth_p(ctx, "dpt-p", 1 + ctx.trial % 3))
                   : SuperOperator::from_matrix(Complex(1.7) * Matrix::identity(mn * mn));
    const PsiMap psi{phi, ctx.dims};
    const bool verdict = det_preserver_iff_trace(psi, ctx.tol);
    bool samples_match = true;
    for (std::size_t s = 0; s < 3; ++s) {
        const Matrix a = rnd_scaled(ctx, "dpt-a", s, ctx.dims.m, 0.5);
        const Matrix b = rnd_scaled(ctx, "dpt-b", s, ctx.dims.n, 0.5);
        const OmegaWitness input = OmegaWitness::from_log(kron_sum(a, b));
        const Complex before = determinant(input.value);
        const Complex after = determinant(psi_apply(psi, input).value);
        if (std::abs(after - before) > 1e-7 * std::abs(before)) {
            samples_match = false;
        }
    }
    double defect = agreement(verdict, samples_match);
    if (verdict != preserving) {
        defect = 1.0;
    }
    return defect;
}

double p_corollary_uv_unimodular(const TrialContext& ctx) {
    const auto [u, v] = corollary_uv(random_terms(ctx, "cuv", 1 + ctx.trial % 3), ctx.dims);
    return std::max(std::abs(determinant(u) - Complex(1.0)),
                    std::abs(determinant(v) - Complex(1.0)));
}

double p_det_rt_theorem_pair(const TrialContext& ctx) {
    SuperOperator phi = SuperOperator::identity(ctx.dims.product());
    bool skew = false;
    bool expect_known = false;
    bool expected = false;
    switch (ctx.trial % 6) {
        case 0:
            phi = rt_symmetric_part(left_multiplication(synth_p(ctx, "drt-p", 1 + ctx.trial % 3)));
            expect_known = true;
            expected = true;
            break;
        case 1:
            phi = rt_symmetric_part(left_multiplication(perturbed_p(ctx, "drt-q")));
            expect_known = true;
            expected = false;
            break;
        case 2:
            phi = hermitianized(left_multiplication(synth_p(ctx, "drt-h", 1 + ctx.trial % 3)));
            expect_known = true;
            expected = true;
            break;
        case 3:
            phi = hermitianized(left_multiplication(perturbed_p(ctx, "drt-g")));
            expect_known = true;
            expected = false;
            break;
        case 4:
            phi = rt_skew_part(random_matrix_map(ctx, "drt-s"));
            skew = true;
            break;
        default:
            phi = skew_hermitian_of(random_matrix_map(ctx, "drt-sh"));
            skew = true;
            break;
    }
    const DetRtVerdict verdict = theorem_det_rt(PsiMap{phi, ctx.dims}, skew);
    double defect = agreement(verdict.condition, verdict.preserves);
    if (expect_known && verdict.preserves != expected) {
        defect = 1.0;
    }
    return defect;
}

double p_det_rt_coset_invariance(const TrialContext& ctx) {
    const Matrix base = expm(rnd_scaled(ctx, "drc-m", 0, ctx.dims.n, 0.6));
    const std::size_t m = ctx.dims.m;
    const CosetMatrix x{base, RootCoset{Complex(1.0), m}};
    const double angle = 2.0 * std::numbers::pi * double(1 + ctx.trial % m) / double(m);
    const CosetMatrix rotated{Complex(std::cos(angle), std::sin(angle)) * base,
                              RootCoset{Complex(1.0), m}};
    const CosetMatrix stretched{Complex(1.3) * base, RootCoset{Complex(1.0), m}};
    double defect = coset_matrix_equal(x, rotated) ? 0.0 : 1.0;
    if (coset_matrix_equal(x, stretched)) {
        defect = 1.0;
    }
    return defect;
}

const std::vector<PropertyDef>& registry() {
    static const std::vector<PropertyDef> defs = {
        {"trace-cyclic", 1e-10, p_trace_cyclic},
        {"det-multiplicative", 1e-9, p_det_multiplicative},
        {"exp-log-round-trip", 1e-8, p_exp_log_round_trip},
        {"trace-commutator-zero", 1e-10, p_trace_commutator_zero},
        {"principal-log-branch", 1e-8, p_principal_log_branch},
        {"sampler-contracts", 1e-12, p_sampler_contracts},
        {"partial-trace-preserves-trace", 1e-10, p_partial_trace_preserves_trace},
        {"partial-trace-linear", 1e-12, p_partial_trace_linear},
        {"kron-mixed-product", 1e-10, p_kron_mixed_product},
        {"det-kron-product", 1e-8, p_det_kron_product},
        {"det-exp-kron-sum", 1e-8, p_det_exp_kron_sum},
        {"exp-kron-sum-factorizes", 1e-8, p_exp_kron_sum_factorizes},
        {"kron-sum-trace", 1e-10, p_kron_sum_trace},
        {"shuffle-swaps-factors", 1e-12, p_shuffle_swaps_factors},
        {"shuffle-exchanges-partial-traces", 1e-12, p_shuffle_exchanges_partial_traces},
        {"partial-trace-product-identities", 1e-10, p_partial_trace_product_identities},
        {"rearrange-kron-and-involution", 1e-12, p_rearrange_properties},
        {"vec-linear", 1e-12, p_vec_linear},
        {"prime-involution", 0.5, p_prime_involution},
        {"prime-shuffle-relation", 1e-12, p_prime_shuffle_relation},
        {"rt-tests-agree", 0.5, p_rt_tests_agree},
        {"rt-decomposition", 1e-10, p_rt_decomposition},
        {"prime-left-right-mult", 1e-12, p_prime_left_right_mult},
        {"apply-matches-terms", 1e-10, p_apply_matches_terms},
        {"left-mult-theorem-agreement", 0.5, p_left_mult_theorem},
        {"synth-preserver-oracle", 0.5, p_synth_preserver_oracle},
        {"corollary-traceless-iff", 0.5, p_corollary_traceless_iff},
        {"lemma-commutator-agreement", 0.5, p_lemma_commutator},
        {"lemma-anticommutator-agreement", 0.5, p_lemma_anticommutator},
        {"phiprime-theorem-agreement", 0.5, p_phiprime_theorem},
        {"left-mult-vs-phiprime-consistency", 0.5, p_left_mult_vs_phiprime},
        {"rt-corollary-agreement", 0.5, p_rt_corollary},
        {"trace-determined-verdict", 0.5, p_trace_determined_verdict},
        {"norm-trace-additive", 1e-10, p_norm_trace_additive},
        {"coset-equivalence", 0.5, p_coset_equivalence},
        {"norm-det-kron-coset", 0.5, p_norm_det_kron_coset},
        {"partial-det-coset-identities", 0.5, p_partial_det_coset_identities},
        {"partial-det-full-det-compat", 0.5, p_partial_det_full_det_compat},
        {"blockwise-det-kron", 1e-10, p_blockwise_det_kron},
        {"psi-det-identity", 1e-7, p_psi_det_identity},
        {"det-preserver-iff-trace", 0.5, p_det_preserver_iff_trace},
        {"corollary-uv-unimodular", 1e-8, p_corollary_uv_unimodular},
        {"det-rt-theorem-pair", 0.5, p_det_rt_theorem_pair},
        {"det-rt-coset-invariance", 0.5, p_det_rt_coset_invariance},
    };
    return defs;
}

}  // namespace

Mutation mutation_from_name(std::string_view name) {
    if (name == "none") {
        return Mutation::none;
    }
    if (name == "negate-commutator") {
        return Mutation::negate_commutator;
    }
    throw FormatError("unknown mutation '" + std::string(name) + "'");
}

bool SuiteReport::pass() const {
    for (const auto& record : records) {
        if (record.failures > 0) {
            return false;
        }
    }
    return true;
}

SuiteReport run_suite(const SuiteOptions& options) {
    SuiteReport report;
    for (const auto& def : registry()) {
        for (const auto& dims : options.dims) {
            PropertyRecord record;
            record.name = std::string(def.name) + "@" + std::to_string(dims.m) + "x" +
                          std::to_string(dims.n);
            record.seed = options.seed;
            for (std::size_t trial = 0; trial < options.trials; ++trial) {
                TrialContext ctx;
                ctx.dims = dims;
                ctx.trial = trial;
                ctx.seed = derive_seed(options.seed, record.name, trial);
                ctx.tol = options.tol;
                ctx.mutation = options.mutation;
                double defect = 0.0;
                try {
                    defect = def.fn(ctx);
                } catch (const std::exception&) {
                    defect = 9e99;
                }
                record.max_defect = std::max(record.max_defect, defect);
                if (!(defect <= def.threshold)) {
                    ++record.failures;
                }
                ++record.trials;
            }
            report.records.push_back(std::move(record));
        }
    }
    return report;
}

nlohmann::json suite_report_to_json(const SuiteReport& report) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& record : report.records) {
        records.push_back({{"name", record.name},
                           {"trials", record.trials},
                           {"failures", record.failures},
                           {"max_defect", record.max_defect},
                           {"seed", record.seed}});
    }
    return nlohmann::json{{"pass", report.pass()}, {"records", std::move(records)}};
}

std::string format_suite_report(const SuiteReport& report) {
    std::ostringstream out;
    for (const auto& record : report.records) {
        out << (record.failures == 0 ? "PASS" : "FAIL") << "  " << record.name
            << "  trials=" << record.trials << " failures=" << record.failures
            << " max_defect=" << record.max_defect << '\n';
    }
    out << "suite: " << (report.pass() ? "PASS" : "FAIL") << " (" << report.records.size()
        << " records)\n";
    return out.str();
}

std::vector<BlockDims> parse_dims_list(const std::vector<std::string>& items) {
    std::vector<BlockDims> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        const auto cross = item.find('x');
        bool ok = cross != std::string::npos && cross > 0 && cross + 1 < item.size();
        if (ok) {
            for (std::size_t i = 0; i < item.size(); ++i) {
                if (i != cross && (item[i] < '0' || item[i] > '9')) {
                    ok = false;
                }
            }
        }
        if (!ok) {
            throw FormatError("bad dims entry '" + item + "' (expected e.g. 2x3)");
        }
        const unsigned long m = std::stoul(item.substr(0, cross));
        const unsigned long n = std::stoul(item.substr(cross + 1));
        if (m == 0 || n == 0) {
            throw FormatError("dims must be positive in '" + item + "'");
        }
        out.emplace_back(m, n);
    }
    return out;
}

}  // namespace kronsum
