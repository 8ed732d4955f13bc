#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weyl/quad_irr.hpp"

namespace weyl {

struct PrimePower {
    std::uint64_t prime = 0;
    int exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly increasing primes.
struct Factorization {
    std::vector<PrimePower> factors;

    std::uint64_t value() const;
    std::uint64_t largest_prime() const noexcept { return factors.empty() ? 1 : factors.back().prime; }
    std::string to_string() const;  // "2^3*3*17"

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

bool is_prime(std::uint64_t n) noexcept;

/// Trial division to 10^6, then Miller-Rabin and Brent-Pollard rho with a fixed seed.
Factorization factorize(std::uint64_t n);

/// All primes <= bound.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// A real exponent read as the nearest fraction with denominator <= 1000; powers are compared exactly
/// against it, so boundary cases never depend on floating-point rounding.
Rational exponent_rational(double x);

/// Sign of x^(a.num/a.den) - y^(b.num/b.den) for x, y >= 1 and nonnegative exponents.
int compare_powers(std::uint64_t x, const Rational& a, std::uint64_t y, const Rational& b);

/// True iff every prime factor p of q satisfies p <= q^eps.
bool is_smooth(std::uint64_t q, double eps);
bool is_smooth(const Factorization& fac, double eps);

/// Ascending stream of all numbers <= limit whose prime factors are all <= prime_bound.
/// Priority-queue merge over prime powers; single consumer.
class SmoothNumberStream {
public:
    SmoothNumberStream(std::uint64_t prime_bound, std::uint64_t limit);

    /// Next smooth number, or 0 when exhausted. The first value is 1.
    std::uint64_t next();

private:
    struct Node {
        std::uint64_t value;
        std::uint64_t base;
        std::size_t prime_index;
        bool operator>(const Node& o) const noexcept { return value > o.value; }
    };
    void push(std::uint64_t base, std::size_t prime_index);

    std::vector<std::uint64_t> primes_;
    std::uint64_t limit_;
    std::vector<Node> heap_;
    bool started_ = false;
};

}  // namespace weyl
