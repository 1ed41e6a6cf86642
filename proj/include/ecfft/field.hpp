#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ecfft {

/// A residue modulo the prime of some ambient Field. The value is always
/// kept canonical, so equality of elements is equality of residues.
struct Fe {
    std::uint64_t v = 0;

    friend constexpr bool operator==(Fe, Fe) = default;
    friend constexpr auto operator<=>(Fe, Fe) = default;
};

/// Per-thread tally of field operations. Algorithms are costed in these
/// units when checking asymptotic growth.
struct OpCounts {
    std::uint64_t add = 0;
    std::uint64_t mul = 0;
    std::uint64_t inv = 0;

    std::uint64_t total() const { return add + mul + inv; }
};

inline thread_local OpCounts tl_op_counts;

inline OpCounts& op_counts() { return tl_op_counts; }
inline void reset_op_counts() { tl_op_counts = OpCounts{}; }

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Integer square root, floor(sqrt(n)).
std::uint64_t isqrt(std::uint64_t n);

/// Prime field F_p for an odd prime 3 < p < 2^62.
class Field {
public:
    explicit Field(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }
    Fe from_u64(std::uint64_t x) const { return Fe{x % p_}; }
    Fe from_i64(std::int64_t x) const;

    Fe add(Fe a, Fe b) const
    {
        ++tl_op_counts.add;
        std::uint64_t r = a.v + b.v;
        return Fe{r >= p_ ? r - p_ : r};
    }

    Fe sub(Fe a, Fe b) const
    {
        ++tl_op_counts.add;
        return Fe{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    }

    Fe neg(Fe a) const { return Fe{a.v == 0 ? 0 : p_ - a.v}; }

    Fe mul(Fe a, Fe b) const
    {
        ++tl_op_counts.mul;
        if (small_) {
            // p < 2^32: one-word Barrett reduction
            const std::uint64_t x = a.v * b.v;
            const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
            const std::uint64_t r = x - q * p_;
            return Fe{r >= p_ ? r - p_ : r};
        }
        return Fe{static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v) * b.v % p_)};
    }

    Fe sqr(Fe a) const { return mul(a, a); }

    /// Multiplicative inverse; throws std::domain_error("inverse of zero").
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    /// a^e by square-and-multiply, with 0^0 = 1.
    Fe pow(Fe a, std::uint64_t e) const;

    /// Quadratic character: 0 for zero, 1 for nonzero squares, -1 otherwise.
    int legendre(Fe a) const;
    /// Tonelli-Shanks. Returns the root r with r <= p - r, or nullopt.
    std::optional<Fe> sqrt(Fe a) const;

    /// Replaces every element by its inverse (Montgomery's trick).
    void batch_invert(std::span<Fe> xs) const;

    Fe parse(std::string_view text) const;
    std::string to_string(Fe a) const { return std::to_string(a.v); }

    friend bool operator==(const Field& x, const Field& y) { return x.p_ == y.p_; }

private:
    std::uint64_t p_;
    std::uint64_t barrett_ = 0;
    bool small_ = false;
    // p - 1 = odd * 2^two_adicity, with a fixed non-residue for Tonelli-Shanks
    std::uint64_t odd_part_;
    unsigned two_adicity_;
    Fe non_residue_;
};

} // namespace ecfft
