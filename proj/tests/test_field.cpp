#include <gtest/gtest.h>

#include <random>

#include "ecfft/field.hpp"
#include "ecfft/poly.hpp"

using namespace ecfft;

TEST(field, primality)
{
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(4194319));
    EXPECT_TRUE(is_prime(4194371));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(4194320));
    EXPECT_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to 2, 3, 5, 7
    EXPECT_TRUE(is_prime((std::uint64_t{1} << 61) - 1));
}

TEST(field, rejects_bad_modulus)
{
    EXPECT_THROW(Field(3), std::invalid_argument);
    EXPECT_THROW(Field(15), std::invalid_argument);
    EXPECT_NO_THROW(Field(7));
}

TEST(field, arithmetic_matches_int128)
{
    for (std::uint64_t p : {std::uint64_t{13}, std::uint64_t{4194319}, (std::uint64_t{1} << 61) - 1}) {
        const Field F(p);
        std::mt19937_64 rng(p);
        for (int i = 0; i < 2000; ++i) {
            const std::uint64_t x = rng() % p, y = rng() % p;
            const Fe a{x}, b{y};
            EXPECT_EQ(F.add(a, b).v, static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) + y) % p));
            EXPECT_EQ(F.sub(a, b).v, (x + p - y) % p);
            EXPECT_EQ(F.mul(a, b).v, static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p));
            if (x != 0) {
                EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
            }
        }
    }
}

TEST(field, inverse_of_zero_throws)
{
    const Field F(97);
    EXPECT_ANY_THROW(F.inv(F.zero()));
}

TEST(field, sqrt_and_legendre)
{
    for (std::uint64_t p : {std::uint64_t{4194319}, std::uint64_t{4194371}, std::uint64_t{998244353}}) {
        const Field F(p);
        std::mt19937_64 rng(1);
        for (int i = 0; i < 300; ++i) {
            const Fe a = random_fe(F, rng);
            const auto r = F.sqrt(a);
            const int l = F.legendre(a);
            if (a.v == 0) {
                EXPECT_EQ(l, 0);
            } else {
                EXPECT_EQ(r.has_value(), l == 1);
            }
            if (r) {
                EXPECT_EQ(F.sqr(*r), a);
            }
        }
    }
}

TEST(field, batch_invert)
{
    const Field F(4194319);
    std::mt19937_64 rng(3);
    std::vector<Fe> xs(100);
    for (auto& x : xs) x = random_nonzero_fe(F, rng);
    auto ys = xs;
    F.batch_invert(ys);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(F.mul(xs[i], ys[i]), F.one());
}

TEST(field, parse)
{
    const Field F(97);
    EXPECT_EQ(F.parse("96").v, 96u);
    EXPECT_THROW(F.parse("97"), std::invalid_argument);
    EXPECT_THROW(F.parse("-1"), std::invalid_argument);
    EXPECT_THROW(F.parse("1x"), std::invalid_argument);
}

TEST(field, op_counts)
{
    const Field F(97);
    reset_op_counts();
    (void)F.mul(Fe{3}, Fe{5});
    (void)F.add(Fe{3}, Fe{5});
    EXPECT_EQ(op_counts().total(), 2u);
}
