#include "ecfft/curve.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ecfft {

namespace {

CurvePoint add_unchecked(const Field& F, const Curve& c, const CurvePoint& P, const CurvePoint& Q)
{
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Fe lambda;
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y.v == 0) return CurvePoint::at_infinity();
        // tangent slope (3x^2 + a) / 2y
        const Fe num = F.add(F.mul(F.from_u64(3), F.sqr(P.x)), c.a);
        lambda = F.div(num, F.add(P.y, P.y));
    } else {
        lambda = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x));
    }
    const Fe x3 = F.sub(F.sub(F.sqr(lambda), P.x), Q.x);
    const Fe y3 = F.sub(F.mul(lambda, F.sub(P.x, x3)), P.y);
    return CurvePoint::affine(x3, y3);
}

CurvePoint mul_unchecked(const Field& F, const Curve& c, std::uint64_t n, CurvePoint P)
{
    CurvePoint acc = CurvePoint::at_infinity();
    while (n) {
        if (n & 1) acc = add_unchecked(F, c, acc, P);
        P = add_unchecked(F, c, P, P);
        n >>= 1;
    }
    return acc;
}

struct HasseInterval {
    std::uint64_t lo;
    std::uint64_t hi;
};

HasseInterval hasse_interval(std::uint64_t p)
{
    const std::uint64_t t = isqrt(4 * p); // |trace| <= 2 sqrt(p)
    return {p + 1 - t, p + 1 + t};
}

// Quadratic-residue table shared by all character-sum counts over one field.
class ResidueTable {
public:
    explicit ResidueTable(const Field& F) : p_(F.modulus()), square_(F.modulus(), 0)
    {
        for (std::uint64_t x = 1; x <= (p_ - 1) / 2; ++x) {
            square_[static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % p_)] = 1;
        }
    }

    std::uint64_t count(const Field& F, const Curve& c) const
    {
        std::uint64_t n = 1; // point at infinity
        for (std::uint64_t x = 0; x < p_; ++x) {
            const Fe r = curve_rhs(F, c, Fe{x});
            if (r.v == 0) {
                n += 1;
            } else if (square_[r.v]) {
                n += 2;
            }
        }
        return n;
    }

private:
    std::uint64_t p_;
    std::vector<std::uint8_t> square_;
};

constexpr std::uint64_t kCharacterSumLimit = std::uint64_t{1} << 26;
constexpr std::uint64_t kExactSearchLimit = std::uint64_t{1} << 16;
constexpr std::uint64_t kSweepLimit = std::uint64_t{1} << 12;

} // namespace

bool is_nonsingular(const Field& F, const Curve& c)
{
    const Fe a3 = F.mul(F.sqr(c.a), c.a);
    const Fe disc = F.add(F.mul(F.from_u64(4), a3), F.mul(F.from_u64(27), F.sqr(c.b)));
    return disc.v != 0;
}

Fe curve_rhs(const Field& F, const Curve& c, Fe x)
{
    return F.add(F.mul(F.add(F.sqr(x), c.a), x), c.b);
}

bool on_curve(const Field& F, const Curve& c, const CurvePoint& P)
{
    return P.infinity || F.sqr(P.y) == curve_rhs(F, c, P.x);
}

CurvePoint point_neg(const Field& F, const CurvePoint& P)
{
    if (P.infinity) return P;
    return CurvePoint::affine(P.x, F.neg(P.y));
}

CurvePoint point_add(const Field& F, const Curve& c, const CurvePoint& P, const CurvePoint& Q)
{
    if (!on_curve(F, c, P) || !on_curve(F, c, Q)) throw std::invalid_argument("point_add: point not on curve");
    return add_unchecked(F, c, P, Q);
}

CurvePoint scalar_mul(const Field& F, const Curve& c, std::int64_t n, const CurvePoint& P)
{
    if (!on_curve(F, c, P)) throw std::invalid_argument("scalar_mul: point not on curve");
    if (n < 0) return mul_unchecked(F, c, static_cast<std::uint64_t>(-(n + 1)) + 1, point_neg(F, P));
    return mul_unchecked(F, c, static_cast<std::uint64_t>(n), P);
}

CurvePoint random_point(const Field& F, const Curve& c, std::mt19937_64& rng)
{
    for (;;) {
        const Fe x = random_fe(F, rng);
        const auto y = F.sqrt(curve_rhs(F, c, x));
        if (!y) continue;
        const bool flip = (rng() & 1) != 0;
        return CurvePoint::affine(x, flip ? F.neg(*y) : *y);
    }
}

std::optional<unsigned> two_power_order(const Field& F, const Curve& c, const CurvePoint& P, unsigned max_log)
{
    CurvePoint Q = P;
    for (unsigned j = 0; j <= max_log; ++j) {
        if (Q.infinity) return j;
        Q = add_unchecked(F, c, Q, Q);
    }
    return std::nullopt;
}

std::uint64_t two_adic_valuation(std::uint64_t n)
{
    if (n == 0) return 64;
    return static_cast<std::uint64_t>(__builtin_ctzll(n));
}

std::uint64_t curve_order_character_sum(const Field& F, const Curve& c)
{
    return ResidueTable(F).count(F, c);
}

std::uint64_t curve_order_bsgs(const Field& F, const Curve& c, std::uint64_t seed)
{
    const auto [lo, hi] = hasse_interval(F.modulus());
    const std::uint64_t width = hi - lo + 1;
    std::uint64_t m = isqrt(width);
    if (m * m < width) ++m;
    std::mt19937_64 rng(seed);
    // candidates that annihilate every sampled point
    std::vector<std::uint64_t> candidates;
    bool first = true;
    for (int sample = 0; sample < 48; ++sample) {
        const CurvePoint P = random_point(F, c, rng);
        std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> baby; // key: x (or p for O)
        CurvePoint jP = CurvePoint::at_infinity();
        for (std::uint64_t j = 0; j < m; ++j) {
            baby[jP.infinity ? F.modulus() : jP.x.v].push_back(j);
            jP = add_unchecked(F, c, jP, P);
        }
        const CurvePoint step = mul_unchecked(F, c, m, P);
        // G_i = (lo + i m) P; N = lo + i m + j annihilates P iff G_i = -(j P)
        CurvePoint G = mul_unchecked(F, c, lo, P);
        std::vector<std::uint64_t> hits;
        for (std::uint64_t i = 0; i * m < width; ++i) {
            const auto it = baby.find(G.infinity ? F.modulus() : G.x.v);
            if (it != baby.end()) {
                for (const std::uint64_t j : it->second) {
                    const std::uint64_t N = lo + i * m + j;
                    if (N > hi) continue;
                    if (mul_unchecked(F, c, N, P).infinity) hits.push_back(N);
                }
            }
            G = add_unchecked(F, c, G, step);
        }
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
        if (first) {
            candidates = hits;
            first = false;
        } else {
            std::vector<std::uint64_t> both;
            std::set_intersection(candidates.begin(), candidates.end(), hits.begin(), hits.end(),
                                  std::back_inserter(both));
            candidates = std::move(both);
        }
        if (candidates.size() == 1) return candidates.front();
        if (candidates.empty()) throw std::runtime_error("curve_order_bsgs: no consistent order");
    }
    throw std::runtime_error("curve_order_bsgs: order ambiguous after sampling");
}

std::uint64_t curve_order(const Field& F, const Curve& c)
{
    if (F.modulus() <= kCharacterSumLimit) return curve_order_character_sum(F, c);
    return curve_order_bsgs(F, c);
}

TwoSylow two_sylow_structure(const Field& F, const Curve& c, std::uint64_t order, std::mt19937_64& rng)
{
    const auto v = static_cast<unsigned>(two_adic_valuation(order));
    if (v == 0) return TwoSylow{0, 0, CurvePoint::at_infinity()};
    const Poly cubic(std::vector<Fe>{c.b, c.a, F.zero(), F.one()});
    const std::size_t torsion_roots = find_roots_small(F, cubic, rng()).size();
    if (torsion_roots == 0) throw std::runtime_error("two_sylow_structure: even order without 2-torsion");
    const std::uint64_t odd = order >> v;
    TwoSylow best;
    const int samples = 64;
    for (int s = 0; s < samples; ++s) {
        const CurvePoint Q = mul_unchecked(F, c, odd, random_point(F, c, rng));
        const auto ord = two_power_order(F, c, Q, v);
        if (!ord) throw std::runtime_error("two_sylow_structure: order does not annihilate the curve");
        if (*ord > best.l2 || best.gen2.infinity) {
            best.l2 = *ord;
            best.gen2 = Q;
        }
        // rank one: the 2-Sylow is cyclic, so the first full-order sample settles it
        if (torsion_roots == 1 && best.l2 == v) break;
    }
    best.l1 = v - best.l2;
    if (torsion_roots == 1 && best.l1 != 0) {
        throw std::runtime_error("two_sylow_structure: failed to find a generator of the cyclic 2-Sylow");
    }
    return best;
}

CurveSearchResult find_curve(const Field& F, std::uint64_t K, std::uint64_t seed)
{
    const std::uint64_t p = F.modulus();
    if (p < 7) throw std::invalid_argument("find_curve: p must be at least 7");
    if (K == 0 || (K & (K - 1)) != 0) throw std::invalid_argument("find_curve: K must be a power of two");
    if (static_cast<unsigned __int128>(K) * K > static_cast<unsigned __int128>(4) * p) {
        throw std::invalid_argument("depth infeasible: K exceeds 2 sqrt(p)");
    }
    const auto [lo, hi] = hasse_interval(p);
    std::vector<std::uint64_t> targets;
    for (std::uint64_t N = (lo + K - 1) / K * K; N <= hi; N += K) {
        if (N > 2 * K) targets.push_back(N);
    }
    if (targets.empty()) throw std::runtime_error("find_curve: no admissible group order in the Hasse interval");
    auto admissible = [&](std::uint64_t N) {
        return std::find(targets.begin(), targets.end(), N) != targets.end();
    };

    std::mt19937_64 rng(seed);
    std::optional<ResidueTable> table;
    if (p <= kCharacterSumLimit) table.emplace(F);
    auto exact_order = [&](const Curve& c) { return table ? table->count(F, c) : curve_order_bsgs(F, c, rng()); };

    const std::uint64_t budget = std::max<std::uint64_t>(4096, 64 * isqrt(p) * 16);
    for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
        const Curve c{random_fe(F, rng), random_fe(F, rng)};
        if (!is_nonsingular(F, c)) continue;
        if (p >= kExactSearchLimit) {
            // cheap filter: some admissible N must annihilate a random point
            const CurvePoint P = random_point(F, c, rng);
            bool plausible = false;
            for (const std::uint64_t N : targets) {
                if (mul_unchecked(F, c, N, P).infinity) {
                    plausible = true;
                    break;
                }
            }
            if (!plausible) continue;
        }
        const std::uint64_t N = exact_order(c);
        if (admissible(N)) return {c, N};
    }
    if (p < kSweepLimit) {
        for (std::uint64_t a = 0; a < p; ++a) {
            for (std::uint64_t b = 0; b < p; ++b) {
                const Curve c{Fe{a}, Fe{b}};
                if (!is_nonsingular(F, c)) continue;
                const std::uint64_t N = exact_order(c);
                if (admissible(N)) return {c, N};
            }
        }
    }
    throw std::runtime_error("find_curve: search budget exhausted");
}

Isogeny2 velu_2_isogeny(const Field& F, const Curve& c, const CurvePoint& T)
{
    if (T.infinity || T.y.v != 0 || !on_curve(F, c, T)) {
        throw std::invalid_argument("velu_2_isogeny: kernel point must have order 2");
    }
    const Fe x0 = T.x;
    const Fe t = F.add(F.mul(F.from_u64(3), F.sqr(x0)), c.a);
    const Fe w = F.mul(x0, t);
    Isogeny2 iso;
    iso.source = c;
    iso.target = Curve{F.sub(c.a, F.mul(F.from_u64(5), t)), F.sub(c.b, F.mul(F.from_u64(7), w))};
    iso.kernel_x = x0;
    iso.t = t;
    iso.u = Poly(std::vector<Fe>{t, F.neg(x0), F.one()});
    iso.v = Poly(std::vector<Fe>{F.neg(x0), F.one()});
    return iso;
}

CurvePoint isogeny_apply(const Field& F, const Isogeny2& iso, const CurvePoint& P)
{
    if (P.infinity || P.x == iso.kernel_x) return CurvePoint::at_infinity();
    const Fe d_inv = F.inv(F.sub(P.x, iso.kernel_x));
    const Fe ratio = F.mul(iso.t, d_inv);
    const Fe x = F.add(P.x, ratio);
    const Fe y = F.mul(P.y, F.sub(F.one(), F.mul(ratio, d_inv)));
    return CurvePoint::affine(x, y);
}

Fe isogeny_psi(const Field& F, const Isogeny2& iso, Fe x)
{
    return F.add(x, F.div(iso.t, F.sub(x, iso.kernel_x)));
}

} // namespace ecfft
