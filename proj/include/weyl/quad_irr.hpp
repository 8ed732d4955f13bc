#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weyl/integer.hpp"

namespace weyl {

/// A real quadratic irrational (P + sqrt(D)) / Q held in exact integers.
///
/// The constructor rejects square D and Q = 0, and rescales (P, D, Q) so that
/// Q divides D - P^2, which is what the continued-fraction recurrence needs.
class QuadIrr {
public:
    QuadIrr(std::int64_t p, std::int64_t d, std::int64_t q);

    static QuadIrr sqrt_of(std::int64_t d) { return QuadIrr(0, d, 1); }

    std::int64_t p() const noexcept { return p_; }
    std::int64_t d() const noexcept { return d_; }
    std::int64_t q() const noexcept { return q_; }

    long double approx() const noexcept;

    /// floor(m * alpha), exact.
    BigInt floor_multiple(const BigInt& m) const;
    BigInt floor_value() const { return floor_multiple(BigInt(1)); }

    /// Nearest integer to m * alpha.
    BigInt nearest_multiple(const BigInt& m) const;

    /// Exact test of |m*alpha - a| <= bound.
    bool within(const BigInt& m, const BigInt& a, const BigRational& bound) const;

    /// Rational U with |m*alpha - a| <= U <= |m*alpha - a| + 2^-bits.
    BigRational abs_diff_upper(const BigInt& m, const BigInt& a, int bits = 128) const;

    std::string to_string() const;

    friend bool operator==(const QuadIrr&, const QuadIrr&) = default;

private:
    std::int64_t p_;
    std::int64_t d_;
    std::int64_t q_;
};

/// Exact rational num/den with den > 0, reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    long double approx() const noexcept { return static_cast<long double>(num) / den; }
    std::string to_string() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Argument of a Weyl sum: either an exact rational or a quadratic irrational.
using Alpha = std::variant<Rational, QuadIrr>;

/// Parses "(P+sqrt(D))/Q", "(P-sqrt(D))/Q", "P+sqrt(D)", "sqrt(D)", "sqrt(D)/Q".
QuadIrr parse_quad_irr(std::string_view text);

/// Like parse_quad_irr, but also accepts rationals "a" and "a/b".
Alpha parse_alpha(std::string_view text);

std::string to_string(const Alpha& alpha);

/// Partial quotients of a quadratic irrational with the exact period structure.
struct CfExpansion {
    std::vector<std::int64_t> quotients;  // first `count` quotients
    std::size_t preperiod = 0;
    std::size_t period = 0;
    std::vector<std::int64_t> cycle;  // one full cycle of quotients, starting at preperiod
    std::vector<std::int64_t> head;   // quotients before the cycle

    /// i-th partial quotient for any i, using the periodic structure.
    std::int64_t quotient(std::size_t i) const;
};

CfExpansion cf_expand(const QuadIrr& alpha, std::size_t count);

struct Convergent {
    std::size_t index = 0;
    std::int64_t p = 0;
    std::int64_t q = 1;
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// All convergents p_n/q_n with q_n <= q_limit.
std::vector<Convergent> convergents(const QuadIrr& alpha, std::int64_t q_limit);

}  // namespace weyl
