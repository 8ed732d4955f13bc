#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace weyl {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

using i128 = __int128;
using u128 = unsigned __int128;

/// Least nonnegative residue of x mod m (m > 0).
constexpr std::int64_t mod(std::int64_t x, std::int64_t m) noexcept {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

constexpr std::int64_t mod(i128 x, std::int64_t m) noexcept {
    auto r = static_cast<std::int64_t>(x % m);
    return r < 0 ? r + m : r;
}

constexpr std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) noexcept {
    return mod(static_cast<i128>(a) * b, m);
}

constexpr std::uint64_t mul_mod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

constexpr std::uint64_t pow_mod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) noexcept {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod_u(r, b, m);
        b = mul_mod_u(b, b, m);
        e >>= 1;
    }
    return r;
}

/// x^k mod m for small k.
constexpr std::int64_t pow_mod(std::int64_t x, int k, std::int64_t m) noexcept {
    std::int64_t base = mod(x, m);
    std::int64_t r = 1 % m;
    for (int i = 0; i < k; ++i) r = mul_mod(r, base, m);
    return r;
}

/// floor(a / b) for b != 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Inverse of a modulo m, if gcd(a, m) = 1. Returns 0 for m = 1.
inline std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t old_r = mod(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) return std::nullopt;
    return mod(old_s, m);
}

/// Exact product, throwing std::overflow_error when it leaves int64.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
    return r;
}

/// floor(sqrt(n)).
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept {
    if (n < 2) return n;
    std::uint64_t x = n;
    std::uint64_t y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

/// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt& n) { return boost::multiprecision::sqrt(n); }

constexpr bool is_perfect_square(std::uint64_t n) noexcept {
    std::uint64_t s = isqrt(n);
    return s * s == n;
}

/// ceil(log2(n)) for n >= 1; 0 for n = 1.
constexpr int ceil_log2(std::uint64_t n) noexcept {
    int b = 0;
    while ((std::uint64_t{1} << b) < n && b < 64) ++b;
    return b;
}

}  // namespace weyl
