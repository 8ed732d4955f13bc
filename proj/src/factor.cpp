#include "weyl/factor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "weyl/errors.hpp"
#include "weyl/integer.hpp"

namespace weyl {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

const std::vector<std::uint64_t>& trial_primes() {
    static const std::vector<std::uint64_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

std::uint64_t pollard_brent(std::uint64_t n, std::mt19937_64& rng) {
    if (n % 2 == 0) return 2;
    std::uniform_int_distribution<std::uint64_t> dist(1, n - 1);
    for (;;) {
        std::uint64_t y = dist(rng), c = dist(rng), m = 128;
        std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](std::uint64_t v) {
            return static_cast<std::uint64_t>((static_cast<u128>(mul_mod_u(v, v, n)) + c) % n);
        };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod_u(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(std::uint64_t n, std::vector<std::uint64_t>& out, std::mt19937_64& rng) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (const std::uint64_t s = isqrt(n); s * s == n) {
        split_into(s, out, rng);
        split_into(s, out, rng);
        return;
    }
    std::uint64_t d = pollard_brent(n, rng);
    split_into(d, out, rng);
    split_into(n / d, out, rng);
}

}  // namespace

std::uint64_t Factorization::value() const {
    std::uint64_t v = 1;
    for (const auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) v *= p;
    return v;
}

std::string Factorization::to_string() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [p, e] : factors) {
        if (!s.empty()) s += "*";
        s += std::to_string(p);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod_u(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod_u(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw PreconditionViolated("factorize needs n >= 1");
    Factorization fac;
    for (std::uint64_t p : trial_primes()) {
        if (p * p > n) break;
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        fac.factors.push_back({p, e});
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        std::mt19937_64 rng(0x5EEDF00Dull);
        split_into(n, rest, rng);
        std::sort(rest.begin(), rest.end());
        for (std::uint64_t p : rest) {
            if (!fac.factors.empty() && fac.factors.back().prime == p)
                ++fac.factors.back().exponent;
            else
                fac.factors.push_back({p, 1});
        }
    }
    return fac;
}

Rational exponent_rational(double x) {
    if (!(x >= 0) || !std::isfinite(x)) throw PreconditionViolated("exponent must be finite and nonnegative");
    constexpr std::int64_t kMaxDen = 1000;
    // Best approximation from the continued fraction of x.
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rem = x;
    Rational best{static_cast<std::int64_t>(std::llround(x)), 1};
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(rem);
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > kMaxDen) break;
        best = {h2, k2};
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = rem - a;
        if (frac < 1e-12) break;
        rem = 1.0 / frac;
    }
    return Rational::make(best.num, best.den);
}

int compare_powers(std::uint64_t x, const Rational& a, std::uint64_t y, const Rational& b) {
    long double lhs = static_cast<long double>(a.num) / a.den * std::log(static_cast<long double>(x));
    long double rhs = static_cast<long double>(b.num) / b.den * std::log(static_cast<long double>(y));
    long double scale = 1 + std::fabs(lhs) + std::fabs(rhs);
    if (lhs - rhs > 1e-12L * scale) return 1;
    if (rhs - lhs > 1e-12L * scale) return -1;
    BigInt l = boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(a.num * b.den));
    BigInt r = boost::multiprecision::pow(BigInt(y), static_cast<unsigned>(b.num * a.den));
    return l < r ? -1 : (l > r ? 1 : 0);
}

bool is_smooth(const Factorization& fac, double eps) {
    std::uint64_t q = fac.value();
    if (q < 2) throw PreconditionViolated("is_smooth needs q >= 2");
    return compare_powers(fac.largest_prime(), Rational{1, 1}, q, exponent_rational(eps)) <= 0;
}

bool is_smooth(std::uint64_t q, double eps) { return is_smooth(factorize(q), eps); }

SmoothNumberStream::SmoothNumberStream(std::uint64_t prime_bound, std::uint64_t limit)
    : primes_(primes_up_to(prime_bound)), limit_(limit) {}

void SmoothNumberStream::push(std::uint64_t base, std::size_t prime_index) {
    if (prime_index >= primes_.size()) return;
    u128 v = static_cast<u128>(base) * primes_[prime_index];
    if (v > limit_) return;
    heap_.push_back({static_cast<std::uint64_t>(v), base, prime_index});
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
}

std::uint64_t SmoothNumberStream::next() {
    if (!started_) {
        started_ = true;
        if (limit_ < 1) return 0;
        push(1, 0);
        return 1;
    }
    if (heap_.empty()) return 0;
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    Node node = heap_.back();
    heap_.pop_back();
    // Every smooth number has a unique nondecreasing prime sequence: extend with the same
    // prime, or replace the last prime by the next one.
    push(node.value, node.prime_index);
    push(node.base, node.prime_index + 1);
    return node.value;
}

}  // namespace weyl
