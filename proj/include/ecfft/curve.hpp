#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ecfft/field.hpp"
#include "ecfft/poly.hpp"

namespace ecfft {

/// Short Weierstrass curve Y^2 = X^3 + aX + b.
struct Curve {
    Fe a;
    Fe b;

    friend bool operator==(const Curve&, const Curve&) = default;
};

/// Affine point or the point at infinity (the group identity).
struct CurvePoint {
    bool infinity = true;
    Fe x;
    Fe y;

    static CurvePoint at_infinity() { return CurvePoint{}; }
    static CurvePoint affine(Fe x, Fe y) { return CurvePoint{false, x, y}; }

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

bool is_nonsingular(const Field& F, const Curve& c);
/// X^3 + aX + b at x.
Fe curve_rhs(const Field& F, const Curve& c, Fe x);
bool on_curve(const Field& F, const Curve& c, const CurvePoint& P);

CurvePoint point_neg(const Field& F, const CurvePoint& P);
/// Chord-and-tangent addition. Throws std::invalid_argument on off-curve input.
CurvePoint point_add(const Field& F, const Curve& c, const CurvePoint& P, const CurvePoint& Q);
/// n*P by double-and-add; negative n negates first.
CurvePoint scalar_mul(const Field& F, const Curve& c, std::int64_t n, const CurvePoint& P);

/// Uniform-ish random affine point: random x until the right-hand side is a
/// square. Requires at least one affine point to exist.
CurvePoint random_point(const Field& F, const Curve& c, std::mt19937_64& rng);

/// Smallest 2^j with 2^j * P = O; nullopt when P has no 2-power order
/// within `max_log` doublings.
std::optional<unsigned> two_power_order(const Field& F, const Curve& c, const CurvePoint& P, unsigned max_log = 64);

/// Exact |E(F_p)| including the point at infinity. Quadratic-character sum
/// for p <= 2^26, baby-step giant-step in the Hasse interval beyond that.
std::uint64_t curve_order(const Field& F, const Curve& c);

/// Character-sum point count, usable for any p (O(p) time and memory).
std::uint64_t curve_order_character_sum(const Field& F, const Curve& c);
/// Order via baby-step giant-step on random points; throws std::runtime_error
/// if the order stays ambiguous after many samples.
std::uint64_t curve_order_bsgs(const Field& F, const Curve& c, std::uint64_t seed = 1);

std::uint64_t two_adic_valuation(std::uint64_t n);

struct TwoSylow {
    unsigned l1 = 0; // 2-Sylow is Z/2^l1 x Z/2^l2 with l1 <= l2
    unsigned l2 = 0;
    CurvePoint gen2; // a point of order 2^l2
};

/// 2-Sylow structure of a curve of known order `order`.
TwoSylow two_sylow_structure(const Field& F, const Curve& c, std::uint64_t order, std::mt19937_64& rng);

struct CurveSearchResult {
    Curve curve;
    std::uint64_t order = 0;
};

/// Finds a curve with K | N and N > 2K. Requires p >= 7 and K a power of two
/// with K <= 2 sqrt(p) (throws std::invalid_argument otherwise); throws
/// std::runtime_error if the search budget is exhausted.
CurveSearchResult find_curve(const Field& F, std::uint64_t K, std::uint64_t seed);

/// Separable 2-isogeny with kernel {O, (kernel_x, 0)} and its x-line map
/// psi = u / v with u = X^2 - x0 X + t, v = X - x0, t = 3 x0^2 + a.
struct Isogeny2 {
    Curve source;
    Curve target;
    Fe kernel_x;
    Fe t;
    Poly u;
    Poly v;
};

/// Throws std::invalid_argument unless T is an affine point of order 2 on c.
Isogeny2 velu_2_isogeny(const Field& F, const Curve& c, const CurvePoint& T);

/// Pushes a source point through the isogeny.
CurvePoint isogeny_apply(const Field& F, const Isogeny2& iso, const CurvePoint& P);

/// psi(x) = u(x) / v(x); x must not be the kernel abscissa.
Fe isogeny_psi(const Field& F, const Isogeny2& iso, Fe x);

} // namespace ecfft
