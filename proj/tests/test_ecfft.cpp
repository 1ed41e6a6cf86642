#include <gtest/gtest.h>

#include <random>

#include "ecfft/algorithms.hpp"
#include "ecfft/oracle_suite.hpp"

using namespace ecfft;

namespace {

const FFTree& tree()
{
    static const FFTree t = build_fftree(4194319, 8, 2);
    return t;
}

const Field& F() { return tree().field(); }

Poly rand_poly(std::size_t len, std::mt19937_64& rng) { return random_poly_exact(F(), len, rng); }

} // namespace

TEST(ecfft, enter_exit_round_trip)
{
    std::mt19937_64 rng(1);
    for (unsigned a = 0; a <= 8; ++a) {
        const BasicSet U = tree().standard_set(a);
        const Poly P = rand_poly(U.size(), rng);
        const EvalTable t = enter_coeffs(tree(), U, P);
        EXPECT_EQ(t, table_of(tree(), U, P));
        EXPECT_EQ(exit_coeffs(tree(), t), P);
    }
}

TEST(ecfft, extend_between_sibling_sets)
{
    std::mt19937_64 rng(2);
    for (unsigned a = 1; a < 8; ++a) {
        const BasicSet S = tree().standard_set(a);
        const BasicSet T = tree().child(tree().standard_set(a + 1), 1);
        const Poly P = rand_poly(S.size(), rng);
        EXPECT_EQ(extend(tree(), table_of(tree(), S, P), T), table_of(tree(), T, P));
    }
}

TEST(ecfft, extend_rejects_size_mismatch)
{
    const EvalTable t{tree().standard_set(2), std::vector<Fe>(4)};
    EXPECT_THROW(extend(tree(), t, tree().standard_set(3)), PreconditionError);
    const EvalTable short_table{tree().standard_set(2), std::vector<Fe>(3)};
    EXPECT_THROW(extend(tree(), short_table, tree().child(tree().standard_set(3), 1)), PreconditionError);
}

TEST(ecfft, mextend_monic)
{
    std::mt19937_64 rng(3);
    const BasicSet S = tree().standard_set(4);
    const BasicSet T = tree().child(tree().standard_set(5), 1);
    std::vector<Fe> c = rand_poly(16, rng).coeffs();
    c.push_back(F().one());
    const Poly P(c);
    EXPECT_EQ(mextend(tree(), table_of(tree(), S, P), T), table_of(tree(), T, P));
}

TEST(ecfft, mult_matches_naive)
{
    std::mt19937_64 rng(4);
    const BasicSet S = tree().standard_set(6);
    for (unsigned moiety : {0u, 1u}) {
        const BasicSet half = tree().child(S, moiety);
        const Poly P = rand_poly(32, rng), Q = rand_poly(32, rng);
        const EvalTable r = mult(tree(), S, moiety, table_of(tree(), half, P), table_of(tree(), half, Q));
        EXPECT_EQ(r, table_of(tree(), S, poly_mul_naive(F(), P, Q)));
    }
}

TEST(ecfft, degree_exact)
{
    std::mt19937_64 rng(5);
    const BasicSet S = tree().standard_set(5);
    for (std::size_t len = 0; len <= 32; ++len) {
        const Poly P = rand_poly(len, rng);
        EXPECT_EQ(degree(tree(), table_of(tree(), S, P)), P.degree());
    }
}

TEST(ecfft, mod_and_div)
{
    std::mt19937_64 rng(6);
    const BasicSet S = tree().standard_set(6);
    for (std::size_t alen : {1u, 2u, 17u, 33u}) {
        const Poly A = rand_poly(alen, rng);
        const Poly P = rand_poly(64, rng);
        const EvalTable t = table_of(tree(), S, P);
        const auto [q, r] = poly_divrem_naive(F(), P, A);
        EXPECT_EQ(mod_reduce(tree(), make_mod_advice(tree(), S, A), t), table_of(tree(), S, r));
        EXPECT_EQ(divq(tree(), make_div_advice(tree(), S, A), t), table_of(tree(), S, q));
    }
}

TEST(ecfft, mod_rejects_large_modulus)
{
    std::mt19937_64 rng(7);
    EXPECT_THROW(make_mod_advice(tree(), tree().standard_set(4), rand_poly(10, rng)), PreconditionError);
}

TEST(ecfft, div_rejects_modulus_vanishing_on_set)
{
    const BasicSet S = tree().standard_set(4);
    const Fe x = tree().elements(S)[3];
    const Poly A(std::vector<Fe>{F().neg(x), F().one()});
    EXPECT_THROW(make_div_advice(tree(), S, A), PreconditionError);
}

TEST(ecfft, crt_matches_residues)
{
    std::mt19937_64 rng(8);
    const BasicSet S = tree().standard_set(6);
    const Poly A = rand_poly(17, rng), B = rand_poly(12, rng);
    const Poly P = rand_poly(32, rng), Q = rand_poly(32, rng);
    const BasicSet half = tree().child(S, 0);
    const CrtAdvice adv = make_crt_advice(tree(), S, 0, A, B);
    const Poly R = exit_coeffs(tree(), crt(tree(), adv, table_of(tree(), half, P), table_of(tree(), half, Q)));
    EXPECT_EQ(poly_rem(F(), R, A), poly_rem(F(), P, A));
    EXPECT_EQ(poly_rem(F(), R, B), poly_rem(F(), Q, B));
    EXPECT_LT(R.size(), 17u + 12u - 1u);
}

TEST(ecfft, oracle_suite_small)
{
    SuiteOptions o;
    o.sizes = {2, 4, 8, 16, 32};
    o.instances = 10;
    o.threads = 1;
    for (const auto& r : run_oracle_suite(tree(), o)) {
        EXPECT_EQ(r.failures, 0u) << r.op << " n=" << r.n << ": " << r.counterexample;
    }
}

TEST(ecfft, decomposition_check)
{
    for (std::size_t n : {2u, 8u, 32u}) {
        const SuiteResult r = run_decomposition_check(tree(), n, 10, 3);
        EXPECT_EQ(r.failures, 0u) << r.counterexample;
    }
}

TEST(ecfft, forest_extend)
{
    const FFTree t = build_fftree(97, 2, 1);
    const FFTree s = build_sibling_tree(t, 2);
    std::mt19937_64 rng(9);
    const Poly P = random_poly_exact(t.field(), 4, rng);
    EXPECT_EQ(extend(t, table_of(t, t.root(), P), s, s.root()), table_of(s, s.root(), P));
}
