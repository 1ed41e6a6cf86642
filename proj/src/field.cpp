#include "ecfft/field.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace ecfft {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t isqrt(std::uint64_t n)
{
    if (n == 0) return 0;
    std::uint64_t x = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (static_cast<unsigned __int128>(x) * x > n) --x;
    while (static_cast<unsigned __int128>(x + 1) * (x + 1) <= n) ++x;
    return x;
}

Field::Field(std::uint64_t p) : p_(p)
{
    if (p <= 3 || p >= (std::uint64_t{1} << 62) || !is_prime(p)) {
        throw std::invalid_argument("field modulus must be a prime with 3 < p < 2^62, got " + std::to_string(p));
    }
    if (p < (std::uint64_t{1} << 32)) {
        small_ = true;
        barrett_ = ~std::uint64_t{0} / p;
    }
    odd_part_ = p - 1;
    two_adicity_ = 0;
    while ((odd_part_ & 1) == 0) {
        odd_part_ >>= 1;
        ++two_adicity_;
    }
    for (std::uint64_t z = 2;; ++z) {
        if (powmod(z, (p - 1) / 2, p) == p - 1) {
            non_residue_ = Fe{z};
            break;
        }
    }
}

Fe Field::from_i64(std::int64_t x) const
{
    const auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = x % m;
    if (r < 0) r += m;
    return Fe{static_cast<std::uint64_t>(r)};
}

Fe Field::inv(Fe a) const
{
    if (a.v == 0) throw std::domain_error("inverse of zero");
    ++tl_op_counts.inv;
    // extended Euclid on (p, a)
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a.v);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return Fe{static_cast<std::uint64_t>(t)};
}

Fe Field::pow(Fe a, std::uint64_t e) const
{
    Fe r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int Field::legendre(Fe a) const
{
    if (a.v == 0) return 0;
    return pow(a, (p_ - 1) / 2) == one() ? 1 : -1;
}

std::optional<Fe> Field::sqrt(Fe a) const
{
    if (a.v == 0) return zero();
    if (legendre(a) != 1) return std::nullopt;
    unsigned m = two_adicity_;
    Fe c = pow(non_residue_, odd_part_);
    Fe t = pow(a, odd_part_);
    Fe r = pow(a, (odd_part_ + 1) / 2);
    while (t != one()) {
        unsigned i = 0;
        Fe t2 = t;
        while (t2 != one()) {
            t2 = sqr(t2);
            ++i;
        }
        Fe b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = sqr(b);
        m = i;
        c = sqr(b);
        t = mul(t, c);
        r = mul(r, b);
    }
    if (r.v > p_ - r.v) r = neg(r);
    return r;
}

void Field::batch_invert(std::span<Fe> xs) const
{
    if (xs.empty()) return;
    std::vector<Fe> prefix(xs.size());
    Fe acc = one();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].v == 0) throw std::domain_error("inverse of zero");
        prefix[i] = acc;
        acc = mul(acc, xs[i]);
    }
    Fe inv_acc = inv(acc);
    for (std::size_t i = xs.size(); i-- > 0;) {
        const Fe x = xs[i];
        xs[i] = mul(inv_acc, prefix[i]);
        inv_acc = mul(inv_acc, x);
    }
}

Fe Field::parse(std::string_view text) const
{
    std::uint64_t x = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("not a decimal field element: '" + std::string(text) + "'");
    }
    if (x >= p_) throw std::invalid_argument("field element out of range: " + std::string(text));
    return Fe{x};
}

} // namespace ecfft
