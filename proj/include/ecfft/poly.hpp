#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecfft/field.hpp"

namespace ecfft {

/// Degree of a polynomial; nullopt is the bottom value of the zero polynomial.
using DegreeValue = std::optional<std::size_t>;

/// "-inf" for the zero polynomial, the decimal degree otherwise.
std::string degree_to_string(DegreeValue d);

/// Dense polynomial in monomial form: coeffs()[i] multiplies X^i.
/// Always normalized, so the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Fe> coeffs);

    static Poly constant(Fe c) { return Poly(std::vector<Fe>{c}); }
    /// c * X^k
    static Poly monomial(Fe c, std::size_t k);

    const std::vector<Fe>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    DegreeValue degree() const;
    /// Number of stored coefficients (degree + 1, or 0).
    std::size_t size() const { return coeffs_.size(); }
    Fe coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Fe{}; }
    Fe leading() const { return coeffs_.empty() ? Fe{} : coeffs_.back(); }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    std::vector<Fe> coeffs_;
};

// Reference (schoolbook) polynomial arithmetic. These routines are the
// oracles for the fast algorithms and are also used to precompute advice.

Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_scale(const Field& F, const Poly& a, Fe c);
Poly poly_mul_naive(const Field& F, const Poly& a, const Poly& b);

/// (quotient, remainder) with a = q*b + r and deg r < deg b.
/// Throws std::domain_error on a zero divisor.
std::pair<Poly, Poly> poly_divrem_naive(const Field& F, const Poly& a, const Poly& b);
Poly poly_rem(const Field& F, const Poly& a, const Poly& b);

/// Horner evaluation.
Fe poly_eval(const Field& F, const Poly& a, Fe x);
std::vector<Fe> poly_eval_many(const Field& F, const Poly& a, std::span<const Fe> xs);

/// Unique polynomial of degree < xs.size() through (xs[i], ys[i]).
/// Throws std::invalid_argument on duplicate abscissae or size mismatch.
Poly lagrange_interpolate(const Field& F, std::span<const Fe> xs, std::span<const Fe> ys);

struct EgcdResult {
    Poly g; // monic gcd
    Poly s;
    Poly t; // s*a + t*b = g
};

/// Extended Euclid. Throws std::invalid_argument when both inputs are zero.
EgcdResult poly_egcd(const Field& F, const Poly& a, const Poly& b);

/// Inverse of b modulo a (degree < deg a). Throws std::domain_error when
/// gcd(a, b) != 1.
Poly poly_inverse_mod(const Field& F, const Poly& b, const Poly& a);

Poly poly_monic(const Field& F, const Poly& a);

/// prod (X - r) over the given roots.
Poly vanishing_poly(const Field& F, std::span<const Fe> roots);

/// b^e mod m.
Poly poly_powmod(const Field& F, const Poly& b, std::uint64_t e, const Poly& m);

/// Distinct roots in F_p of a polynomial of degree 1..3, ascending.
/// Brute-force scan for small p; otherwise gcd with X^p - X followed by
/// randomized equal-degree splitting. Throws std::invalid_argument on a
/// degree outside 1..3.
std::vector<Fe> find_roots_small(const Field& F, const Poly& a, std::uint64_t seed = 0x5eed);

/// Uniformly random element.
Fe random_fe(const Field& F, std::mt19937_64& rng);
/// Uniformly random nonzero element.
Fe random_nonzero_fe(const Field& F, std::mt19937_64& rng);
/// Random polynomial with exactly `len` coefficients, leading one nonzero
/// (len = 0 gives zero).
Poly random_poly_exact(const Field& F, std::size_t len, std::mt19937_64& rng);

} // namespace ecfft
