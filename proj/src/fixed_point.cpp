#include "weyl/fixed_point.hpp"

#include <cmath>
#include <quadmath.h>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// round(a / 2^shift), ties up.
BigInt round_shift(const BigInt& a, int shift) {
    if (shift == 0) return a;
    BigInt half = BigInt(1) << (shift - 1);
    return floor_div(a + half, BigInt(1) << shift);
}

BigInt mod_pow2(const BigInt& a, int bits) {
    BigInt m = BigInt(1) << bits;
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}


}  // namespace

long double FixedPointReal::to_long_double() const {
    return std::ldexp(mantissa.convert_to<long double>(), -bits);
}

std::string FixedPointReal::mantissa_decimal() const { return mantissa.str(); }

std::string FixedPointReal::mantissa_hex() const {
    std::ostringstream os;
    if (mantissa < 0)
        os << "-0x" << std::hex << BigInt(-mantissa);
    else
        os << "0x" << std::hex << mantissa;
    return os.str();
}

FixedPointReal fixed_point(const QuadIrr& alpha, int bits) {
    if (bits < 1) throw PreconditionViolated("fixed_point needs bits >= 1");
    const int guard = bits + 8;
    BigInt scale = BigInt(1) << guard;
    BigInt root = boost::multiprecision::sqrt(BigInt(alpha.d()) * scale * scale);
    // |alpha * 2^guard - coarse| < 2
    BigInt coarse = floor_div(BigInt(alpha.p()) * scale + root, BigInt(alpha.q()));
    return {round_shift(coarse, guard - bits), bits};
}

FixedPointReal fixed_point(const Rational& alpha, int bits) {
    if (bits < 1) throw PreconditionViolated("fixed_point needs bits >= 1");
    BigInt num = BigInt(alpha.num) << bits;
    BigInt den(alpha.den);
    return {floor_div(2 * num + den, 2 * den), bits};
}

FixedPointReal fixed_point(const Alpha& alpha, int bits) {
    return std::visit([bits](const auto& a) { return fixed_point(a, bits); }, alpha);
}

FracResult frac_power_mul(const FixedPointReal& alpha, std::uint64_t n, int k) {
    if (n == 0) throw PreconditionViolated("frac_power_mul needs n >= 1");
    const int need = required_bits(n, k);
    if (alpha.bits < need)
        throw InsufficientPrecision("frac_power_mul: have " + std::to_string(alpha.bits) + " bits, need " +
                                    std::to_string(need) + " for n=" + std::to_string(n) + ", k=" + std::to_string(k));
    BigInt power = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k));
    FracResult out;
    out.value = {mod_pow2(alpha.mantissa * power, alpha.bits), alpha.bits};
    out.error_bound = std::ldexp(power.convert_to<long double>(), -alpha.bits);
    return out;
}

FracMultiplier::FracMultiplier(const FixedPointReal& alpha) : bits_(alpha.bits) {
    if (bits_ < 64) throw InsufficientPrecision("FracMultiplier needs at least 64 bits");
    limbs_used_ = (bits_ + 63) / 64;
    if (limbs_used_ > kMaxLimbs) throw InsufficientPrecision("FracMultiplier supports at most 320 bits");
    BigInt frac = mod_pow2(alpha.mantissa, bits_);
    for (int i = 0; i < limbs_used_; ++i) {
        limbs_[i] = static_cast<std::uint64_t>(frac & BigInt(~std::uint64_t{0}));
        frac >>= 64;
    }
}

std::uint64_t FracMultiplier::turn(u128 m) const noexcept {
    const auto m_lo = static_cast<std::uint64_t>(m);
    const auto m_hi = static_cast<std::uint64_t>(m >> 64);
    std::array<std::uint64_t, kMaxLimbs + 2> prod{};
    for (int i = 0; i < limbs_used_; ++i) {
        u128 carry = 0;
        u128 t = static_cast<u128>(limbs_[i]) * m_lo + prod[i] + carry;
        prod[i] = static_cast<std::uint64_t>(t);
        carry = t >> 64;
        t = static_cast<u128>(limbs_[i]) * m_hi + prod[i + 1] + carry;
        prod[i + 1] = static_cast<std::uint64_t>(t);
        carry = t >> 64;
        for (int j = i + 2; carry != 0 && j < kMaxLimbs + 2; ++j) {
            t = static_cast<u128>(prod[j]) + carry;
            prod[j] = static_cast<std::uint64_t>(t);
            carry = t >> 64;
        }
    }
    // Bits [bits_-65, bits_) of the product; everything at or above bits_ is the integer part.
    auto bit_window = [&](int start) -> std::uint64_t {
        if (start < 0) return 0;
        int limb = start / 64, off = start % 64;
        std::uint64_t lo = prod[limb] >> off;
        if (off == 0) return lo;
        return lo | (prod[limb + 1] << (64 - off));
    };
    const int top = bits_ - 64;
    std::uint64_t word = bit_window(top);
    if (top > 0) {
        std::uint64_t below = bit_window(top - 1) & 1;
        word += below;
    }
    return word;
}

namespace {

// e(x) for x in turns, evaluated in quad precision and rounded once to long double.
std::complex<long double> round_root(__float128 turns) noexcept {
    __float128 s, c;
    sincosq(2 * M_PIq * turns, &s, &c);
    return {static_cast<long double>(c), static_cast<long double>(s)};
}

}  // namespace

std::complex<long double> unit_root(std::uint64_t turn) noexcept {
    return round_root(ldexpq(static_cast<__float128>(turn), -64));
}

std::complex<long double> unit_root_rational(std::uint64_t j, std::uint64_t r) noexcept {
    return round_root(static_cast<__float128>(j % r) / static_cast<__float128>(r));
}

std::uint64_t rational_turn(std::uint64_t j, std::uint64_t r) noexcept {
    u128 num = (static_cast<u128>(j % r) << 64) + r / 2;
    return static_cast<std::uint64_t>(num / r);
}

}  // namespace weyl
