#include "ecfft/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecfft {

std::string degree_to_string(DegreeValue d)
{
    return d ? std::to_string(*d) : std::string("-inf");
}

Poly::Poly(std::vector<Fe> coeffs) : coeffs_(std::move(coeffs))
{
    while (!coeffs_.empty() && coeffs_.back().v == 0) coeffs_.pop_back();
}

Poly Poly::monomial(Fe c, std::size_t k)
{
    if (c.v == 0) return Poly{};
    std::vector<Fe> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
}

DegreeValue Poly::degree() const
{
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b)
{
    std::vector<Fe> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(std::move(r));
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b)
{
    std::vector<Fe> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(std::move(r));
}

Poly poly_scale(const Field& F, const Poly& a, Fe c)
{
    std::vector<Fe> r(a.coeffs());
    for (auto& x : r) x = F.mul(x, c);
    return Poly(std::move(r));
}

Poly poly_mul_naive(const Field& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<Fe> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Fe ai = a.coeffs()[i];
        if (ai.v == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = F.add(r[i + j], F.mul(ai, b.coeffs()[j]));
        }
    }
    return Poly(std::move(r));
}

std::pair<Poly, Poly> poly_divrem_naive(const Field& F, const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {Poly{}, a};
    std::vector<Fe> rem(a.coeffs());
    std::vector<Fe> quot(a.size() - b.size() + 1);
    const Fe lead_inv = F.inv(b.leading());
    const std::size_t db = b.size() - 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Fe c = F.mul(rem[k + db], lead_inv);
        quot[k] = c;
        if (c.v == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) {
            rem[k + j] = F.sub(rem[k + j], F.mul(c, b.coeffs()[j]));
        }
    }
    rem.resize(db);
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_rem(const Field& F, const Poly& a, const Poly& b)
{
    return poly_divrem_naive(F, a, b).second;
}

Fe poly_eval(const Field& F, const Poly& a, Fe x)
{
    Fe acc{};
    for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.coeffs()[i]);
    return acc;
}

std::vector<Fe> poly_eval_many(const Field& F, const Poly& a, std::span<const Fe> xs)
{
    std::vector<Fe> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = poly_eval(F, a, xs[i]);
    return out;
}

Poly vanishing_poly(const Field& F, std::span<const Fe> roots)
{
    std::vector<Fe> c{F.one()};
    c.reserve(roots.size() + 1);
    for (const Fe r : roots) {
        // c <- c * (X - r)
        c.push_back(Fe{});
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = F.sub(c[i - 1], F.mul(c[i], r));
        c[0] = F.neg(F.mul(c[0], r));
    }
    return Poly(std::move(c));
}

Poly lagrange_interpolate(const Field& F, std::span<const Fe> xs, std::span<const Fe> ys)
{
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolation: point/value count mismatch");
    const std::size_t m = xs.size();
    if (m == 0) return Poly{};
    {
        std::vector<Fe> sorted(xs.begin(), xs.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("interpolation: duplicate x");
        }
    }
    const Poly Z = vanishing_poly(F, xs);
    std::vector<Fe> acc(m);
    std::vector<Fe> quot(m);
    for (std::size_t i = 0; i < m; ++i) {
        // Z / (X - x_i) by synthetic division, then the barycentric weight
        Fe carry{};
        for (std::size_t k = m; k-- > 0;) {
            carry = F.add(Z.coeffs()[k + 1], F.mul(carry, xs[i]));
            quot[k] = carry;
        }
        Fe denom{};
        for (std::size_t k = m; k-- > 0;) denom = F.add(F.mul(denom, xs[i]), quot[k]);
        const Fe w = F.div(ys[i], denom);
        if (w.v == 0) continue;
        for (std::size_t k = 0; k < m; ++k) acc[k] = F.add(acc[k], F.mul(w, quot[k]));
    }
    return Poly(std::move(acc));
}

Poly poly_monic(const Field& F, const Poly& a)
{
    if (a.is_zero()) return a;
    return poly_scale(F, a, F.inv(a.leading()));
}

EgcdResult poly_egcd(const Field& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("egcd of two zero polynomials");
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F.one()), s1{};
    Poly t0{}, t1 = Poly::constant(F.one());
    while (!r1.is_zero()) {
        auto [q, r] = poly_divrem_naive(F, r0, r1);
        Poly s2 = poly_sub(F, s0, poly_mul_naive(F, q, s1));
        Poly t2 = poly_sub(F, t0, poly_mul_naive(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Fe lead_inv = F.inv(r0.leading());
    return {poly_scale(F, r0, lead_inv), poly_scale(F, s0, lead_inv), poly_scale(F, t0, lead_inv)};
}

Poly poly_inverse_mod(const Field& F, const Poly& b, const Poly& a)
{
    const auto e = poly_egcd(F, a, b);
    if (e.g.size() != 1) throw std::domain_error("polynomials are not coprime");
    return poly_rem(F, e.t, a);
}

Poly poly_powmod(const Field& F, const Poly& b, std::uint64_t e, const Poly& m)
{
    Poly result = poly_rem(F, Poly::constant(F.one()), m);
    Poly base = poly_rem(F, b, m);
    while (e) {
        if (e & 1) result = poly_rem(F, poly_mul_naive(F, result, base), m);
        base = poly_rem(F, poly_mul_naive(F, base, base), m);
        e >>= 1;
    }
    return result;
}

namespace {

constexpr std::uint64_t kBruteForceRootLimit = std::uint64_t{1} << 20;

// Splits a squarefree product of distinct linear factors into its roots.
void split_linear_factors(const Field& F, const Poly& g, std::mt19937_64& rng, std::vector<Fe>& out)
{
    const std::size_t d = *g.degree();
    if (d == 0) return;
    if (d == 1) {
        out.push_back(F.neg(F.div(g.coeff(0), g.coeff(1))));
        return;
    }
    const std::uint64_t half = (F.modulus() - 1) / 2;
    for (;;) {
        const Fe delta = random_fe(F, rng);
        const Poly shifted(std::vector<Fe>{delta, F.one()});
        Poly h = poly_powmod(F, shifted, half, g);
        h = poly_sub(F, h, Poly::constant(F.one()));
        if (h.is_zero()) continue;
        Poly f = poly_egcd(F, g, h).g;
        const std::size_t df = *f.degree();
        if (df == 0 || df == d) continue;
        split_linear_factors(F, f, rng, out);
        split_linear_factors(F, poly_divrem_naive(F, g, f).first, rng, out);
        return;
    }
}

} // namespace

std::vector<Fe> find_roots_small(const Field& F, const Poly& a, std::uint64_t seed)
{
    const auto deg = a.degree();
    if (!deg || *deg < 1 || *deg > 3) throw std::invalid_argument("find_roots_small: degree must be 1..3");
    std::vector<Fe> roots;
    if (F.modulus() < kBruteForceRootLimit) {
        for (std::uint64_t x = 0; x < F.modulus(); ++x) {
            if (poly_eval(F, a, Fe{x}).v == 0) roots.push_back(Fe{x});
        }
        return roots;
    }
    const Poly m = poly_monic(F, a);
    const Poly x_poly(std::vector<Fe>{F.zero(), F.one()});
    Poly xp = poly_powmod(F, x_poly, F.modulus(), m);
    xp = poly_sub(F, xp, x_poly);
    const Poly g = xp.is_zero() ? m : poly_egcd(F, m, xp).g;
    std::mt19937_64 rng(seed);
    split_linear_factors(F, g, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

Fe random_fe(const Field& F, std::mt19937_64& rng)
{
    const std::uint64_t p = F.modulus();
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % p);
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return Fe{x % p};
    }
}

Fe random_nonzero_fe(const Field& F, std::mt19937_64& rng)
{
    for (;;) {
        const Fe x = random_fe(F, rng);
        if (x.v != 0) return x;
    }
}

Poly random_poly_exact(const Field& F, std::size_t len, std::mt19937_64& rng)
{
    std::vector<Fe> c(len);
    for (auto& x : c) x = random_fe(F, rng);
    if (len > 0) c.back() = random_nonzero_fe(F, rng);
    return Poly(std::move(c));
}

} // namespace ecfft
