#include <gtest/gtest.h>

#include <random>

#include "ecfft/curve.hpp"

using namespace ecfft;

TEST(curve, group_law)
{
    const Field F(1009);
    const Curve c{Fe{2}, Fe{3}};
    ASSERT_TRUE(is_nonsingular(F, c));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const CurvePoint P = random_point(F, c, rng), Q = random_point(F, c, rng), R = random_point(F, c, rng);
        EXPECT_TRUE(on_curve(F, c, point_add(F, c, P, Q)));
        EXPECT_EQ(point_add(F, c, P, Q), point_add(F, c, Q, P));
        EXPECT_EQ(point_add(F, c, point_add(F, c, P, Q), R), point_add(F, c, P, point_add(F, c, Q, R)));
        EXPECT_TRUE(point_add(F, c, P, point_neg(F, P)).infinity);
        EXPECT_EQ(scalar_mul(F, c, 3, P), point_add(F, c, P, point_add(F, c, P, P)));
    }
}

TEST(curve, order_methods_agree)
{
    for (std::uint64_t p : {std::uint64_t{1009}, std::uint64_t{65537}, std::uint64_t{4194319}}) {
        const Field F(p);
        std::mt19937_64 rng(p);
        for (int i = 0; i < 5; ++i) {
            Curve c{random_fe(F, rng), random_fe(F, rng)};
            if (!is_nonsingular(F, c)) continue;
            const std::uint64_t n = curve_order_character_sum(F, c);
            EXPECT_EQ(curve_order_bsgs(F, c, 7), n);
            const CurvePoint P = random_point(F, c, rng);
            EXPECT_TRUE(scalar_mul(F, c, static_cast<std::int64_t>(n), P).infinity);
        }
    }
}

TEST(curve, find_curve_meets_divisibility)
{
    const Field F(4194319);
    const auto r = find_curve(F, 4096, 3);
    EXPECT_EQ(r.order % 4096, 0u);
    EXPECT_GT(r.order, 2u * 4096);
    EXPECT_EQ(curve_order(F, r.curve), r.order);
}

TEST(curve, find_curve_rejects_infeasible_k)
{
    const Field F(1009);
    EXPECT_THROW(find_curve(F, 64, 1), std::invalid_argument);
    EXPECT_THROW(find_curve(F, 12, 1), std::invalid_argument);
}

TEST(curve, velu_isogeny)
{
    const Field F(4194319);
    const auto r = find_curve(F, 64, 5);
    std::mt19937_64 rng(9);
    const TwoSylow s = two_sylow_structure(F, r.curve, r.order, rng);
    const CurvePoint T = scalar_mul(F, r.curve, std::int64_t{1} << (s.l2 - 1), s.gen2);
    ASSERT_EQ(T.y, F.zero());
    const Isogeny2 iso = velu_2_isogeny(F, r.curve, T);
    EXPECT_TRUE(is_nonsingular(F, iso.target));
    EXPECT_TRUE(isogeny_apply(F, iso, T).infinity);
    for (int i = 0; i < 30; ++i) {
        const CurvePoint P = random_point(F, r.curve, rng), Q = random_point(F, r.curve, rng);
        const CurvePoint fP = isogeny_apply(F, iso, P);
        EXPECT_TRUE(on_curve(F, iso.target, fP));
        EXPECT_EQ(isogeny_apply(F, iso, point_add(F, r.curve, P, Q)),
                  point_add(F, iso.target, fP, isogeny_apply(F, iso, Q)));
        if (!fP.infinity) {
            EXPECT_EQ(isogeny_psi(F, iso, P.x), fP.x);
        }
    }
}

TEST(curve, velu_rejects_non_two_torsion)
{
    const Field F(1009);
    const Curve c{Fe{2}, Fe{3}};
    std::mt19937_64 rng(4);
    CurvePoint P = random_point(F, c, rng);
    while (P.y == F.zero()) P = random_point(F, c, rng);
    EXPECT_THROW(velu_2_isogeny(F, c, P), std::invalid_argument);
}
