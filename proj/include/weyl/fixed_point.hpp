#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "weyl/integer.hpp"
#include "weyl/quad_irr.hpp"

namespace weyl {

/// x ~= mantissa * 2^-bits.
struct FixedPointReal {
    BigInt mantissa;
    int bits = 0;

    long double to_long_double() const;
    std::string mantissa_decimal() const;
    std::string mantissa_hex() const;

    friend bool operator==(const FixedPointReal&, const FixedPointReal&) = default;
};

/// |alpha - result| <= 2^-bits. Uses an exact integer square root with bits + 8 guard bits.
FixedPointReal fixed_point(const QuadIrr& alpha, int bits);

/// Nearest fixed-point value to a rational; exact when the denominator is a power of two.
FixedPointReal fixed_point(const Rational& alpha, int bits);
FixedPointReal fixed_point(const Alpha& alpha, int bits);

/// Bits required by the precision policy for k-th powers of integers up to n.
constexpr int required_bits(std::uint64_t n, int k) noexcept { return k * ceil_log2(n) + 64; }

struct FracResult {
    FixedPointReal value;      // in [0, 1)
    long double error_bound;   // certified |value - frac(alpha * n^k)|, from the input's 2^-bits
};

/// Fractional part of alpha * n^k; throws InsufficientPrecision below the policy.
FracResult frac_power_mul(const FixedPointReal& alpha, std::uint64_t n, int k);

/// Hot-loop form of frac_power_mul: frac(alpha * m) scaled to a 64-bit turn, rounded.
/// Holds the fractional part of the mantissa in up to four 64-bit limbs.
class FracMultiplier {
public:
    explicit FracMultiplier(const FixedPointReal& alpha);

    /// round(frac(alpha * m) * 2^64) mod 2^64, ignoring the input's own representation error.
    std::uint64_t turn(u128 m) const noexcept;

    int bits() const noexcept { return bits_; }

private:
    static constexpr int kMaxLimbs = 5;
    std::array<std::uint64_t, kMaxLimbs> limbs_{};
    int limbs_used_ = 0;
    int bits_ = 0;
};

/// e(x) for x = turn * 2^-64.
std::complex<long double> unit_root(std::uint64_t turn) noexcept;

/// e(j / r) with the exact rational angle.
std::complex<long double> unit_root_rational(std::uint64_t j, std::uint64_t r) noexcept;

/// Turn value round(j/r * 2^64) for 0 <= j < r.
std::uint64_t rational_turn(std::uint64_t j, std::uint64_t r) noexcept;

/// Absolute error of unit_root and unit_root_rational on the complex value: each component is a
/// quad-precision value (error ~2^-110) rounded to long double, at most 2^-65 apiece.
inline constexpr long double kUnitRootError = 0x1p-64L;

}  // namespace weyl
