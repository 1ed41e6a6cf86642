#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ecfft/poly.hpp"

using namespace ecfft;

namespace {
const Field F(4194319);
}

TEST(poly, normalizes_trailing_zeros)
{
    const Poly a(std::vector<Fe>{Fe{1}, Fe{0}, Fe{0}});
    EXPECT_EQ(a.size(), 1u);
    EXPECT_EQ(a.degree(), DegreeValue{0});
    EXPECT_FALSE(Poly().degree().has_value());
    EXPECT_EQ(degree_to_string(Poly().degree()), "-inf");
}

TEST(poly, mul_and_divrem)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const Poly a = random_poly_exact(F, 1 + rng() % 40, rng);
        const Poly b = random_poly_exact(F, 1 + rng() % 20, rng);
        const auto [q, r] = poly_divrem_naive(F, a, b);
        EXPECT_EQ(poly_add(F, poly_mul_naive(F, q, b), r), a);
        if (!r.is_zero()) {
            EXPECT_LT(*r.degree(), *b.degree());
        }
    }
}

TEST(poly, division_by_zero_throws)
{
    EXPECT_ANY_THROW(poly_divrem_naive(F, Poly::constant(Fe{1}), Poly()));
}

TEST(poly, eval_and_interpolate)
{
    std::mt19937_64 rng(2);
    const Poly a = random_poly_exact(F, 17, rng);
    std::vector<Fe> xs;
    for (std::uint64_t i = 0; i < 17; ++i) xs.push_back(Fe{i * 1000 + 5});
    const auto ys = poly_eval_many(F, a, xs);
    EXPECT_EQ(lagrange_interpolate(F, xs, ys), a);
}

TEST(poly, egcd_and_inverse)
{
    std::mt19937_64 rng(3);
    const Poly a = random_poly_exact(F, 12, rng);
    const Poly b = random_poly_exact(F, 9, rng);
    const EgcdResult e = poly_egcd(F, a, b);
    EXPECT_EQ(poly_add(F, poly_mul_naive(F, e.s, a), poly_mul_naive(F, e.t, b)), e.g);
    if (e.g == Poly::constant(F.one())) {
        const Poly inv = poly_inverse_mod(F, b, a);
        EXPECT_EQ(poly_rem(F, poly_mul_naive(F, inv, b), a), Poly::constant(F.one()));
    }
}

TEST(poly, vanishing_and_roots)
{
    const std::vector<Fe> roots{Fe{3}, Fe{10}, Fe{77}};
    const Poly z = vanishing_poly(F, roots);
    EXPECT_EQ(z.degree(), DegreeValue{3});
    for (Fe r : roots) EXPECT_EQ(poly_eval(F, z, r), F.zero());
    auto found = find_roots_small(F, z);
    std::sort(found.begin(), found.end());
    EXPECT_EQ(found, roots);
}

TEST(poly, powmod)
{
    const Poly m = vanishing_poly(F, std::vector<Fe>{Fe{2}, Fe{5}});
    const Poly x = Poly::monomial(F.one(), 1);
    const Poly r = poly_powmod(F, x, 10, m);
    EXPECT_EQ(poly_eval(F, r, Fe{2}), F.pow(Fe{2}, 10));
    EXPECT_EQ(poly_eval(F, r, Fe{5}), F.pow(Fe{5}, 10));
}
