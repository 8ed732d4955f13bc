#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "weyl/approx.hpp"
#include "weyl/errors.hpp"
#include "weyl/factor.hpp"
#include "weyl/fixed_point.hpp"
#include "weyl/sums.hpp"

using namespace weyl;

namespace {

// Small hand-rolled generator with a fixed seed per property.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }

    std::int64_t non_square(std::int64_t lo, std::int64_t hi) {
        for (;;) {
            std::int64_t d = range(lo, hi);
            std::int64_t s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
            while (s * s > d) --s;
            while ((s + 1) * (s + 1) <= d) ++s;
            if (s * s != d) return d;
        }
    }

    QuadIrr quad_irr() {
        std::int64_t q = range(1, 9);
        if (range(0, 1)) q = -q;
        return QuadIrr(range(-20, 20), non_square(2, 500), q);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("conjugation and periodicity of complete sums") {
    Gen g(101);
    for (int i = 0; i < 300; ++i) {
        const std::int64_t r = g.range(1, 600), u = g.range(-2000, 2000), v = g.range(-2000, 2000);
        const SumResult s = complete_sum({r, u, v});
        const SumResult c = complete_sum({r, -u, -v});
        CHECK(std::abs(c.value - std::conj(s.value)) <= 1e-9L);
        CHECK(complete_sum({r, u + r, v + r}).value == s.value);
        CHECK(s.abs() <= r + s.err_bound);
    }
}

TEST_CASE("CRT multiplicativity on generated coprime pairs") {
    Gen g(202);
    for (int i = 0; i < 150; ++i) {
        const std::int64_t r1 = g.range(1, 120);
        std::int64_t r2 = g.range(1, 10000 / r1);
        while (std::gcd(r1, r2) != 1) r2 = g.range(1, 10000 / r1);
        const std::int64_t u = g.range(-500, 500), v = g.range(-500, 500);
        CHECK(std::abs(complete_sum_crt(r1, r2, u, v).value - complete_sum({r1 * r2, u, v}).value) <= 1e-9L);
    }
}

TEST_CASE("completion identity on generated intervals") {
    Gen g(303);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t r = g.range(1, 400), N = g.range(1, 3 * r);
        std::int64_t t0 = g.range(0, N), t1 = g.range(0, N);
        if (t0 > t1) std::swap(t0, t1);
        const IncompleteSumSpec s{r, g.range(0, r - 1), g.range(0, r - 1), t0, t1, N};
        const SumResult d = incomplete_sum(s), c = incomplete_via_completion(s);
        CHECK(std::abs(d.value - c.value) <= d.err_bound + c.err_bound);
        CHECK(d.abs() <= static_cast<long double>(t1 - t0) + d.err_bound);
    }
}

TEST_CASE("B2 reduction keeps the sum and makes r, u coprime") {
    Gen g(404);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t q2 = g.range(1, 3000), q1 = g.range(1, 30), h = g.range(1, 30);
        std::int64_t a = g.range(1, 3000);
        while (std::gcd(a, q1 * q2) != 1) a = g.range(1, 3000);
        const B2Reduction red = reduce_b2(q2, a, h, q1);
        CHECK(std::gcd(red.r, red.u) == 1);
        CHECK(red.d * red.r == q2);
        const std::int64_t N = g.range(1, 500);
        std::int64_t t0 = g.range(0, N), t1 = g.range(0, N);
        if (t0 > t1) std::swap(t0, t1);
        const std::int64_t U = mul_mod(4 * a, h, q2);
        const std::int64_t V = mul_mod(mul_mod(U, h * h, q2), q1 * q1, q2);
        const SumResult lhs = incomplete_sum({q2, U, V, t0, t1, N});
        const SumResult rhs = incomplete_sum({red.r, mod(red.u, red.r), mod(red.v, red.r), t0, t1, N});
        CHECK(std::abs(lhs.value - rhs.value) <= 1e-9L);
    }
}

TEST_CASE("Weyl sums obey the triangle bound and chunking agrees with one pass") {
    Gen g(505);
    for (int i = 0; i < 12; ++i) {
        const QuadIrr a = g.quad_irr();
        const auto N = static_cast<std::uint64_t>(g.range(1, 3 * static_cast<std::int64_t>(kWeylChunk)));
        const int k = static_cast<int>(g.range(3, 4));
        CAPTURE(a.to_string());
        CAPTURE(N);
        const SumResult chunked = weyl_sum_real(a, k, N, 3);
        const SumResult flat = weyl_sum_real_single_pass(a, k, N);
        CHECK(chunked.abs() <= static_cast<long double>(N) + chunked.err_bound);
        CHECK(std::abs(chunked.value - flat.value) <= chunked.err_bound + flat.err_bound);
    }
}

TEST_CASE("fixed point of sqrt(D) is within 2^-B") {
    Gen g(606);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t D = g.non_square(2, 1'000'000'000);
        const int B = static_cast<int>(g.range(1, 300));
        const FixedPointReal f = fixed_point(QuadIrr::sqrt_of(D), B);
        // |m 2^-B - sqrt(D)| <= 2^-B  <=>  (m-1)^2 <= D 4^B <= (m+1)^2
        const BigInt target = BigInt(D) << (2 * B);
        CHECK((f.mantissa - 1) * (f.mantissa - 1) <= target);
        CHECK(target <= (f.mantissa + 1) * (f.mantissa + 1));
    }
}

TEST_CASE("fractional parts of sqrt(D) n^k against exact integer square roots") {
    Gen g(707);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t D = g.non_square(2, 10000);
        const auto n = static_cast<std::uint64_t>(g.range(1, 1'000'000));
        const int k = static_cast<int>(g.range(3, 4));
        const int B = required_bits(n, k);
        const FracResult r = frac_power_mul(fixed_point(QuadIrr::sqrt_of(D), B), n, k);
        // frac(sqrt(D) n^k) * 2^B lies in [floor(sqrt(D n^2k 4^B)) - floor(sqrt(D n^2k)) 2^B, +1).
        const BigInt nk = boost::multiprecision::pow(BigInt(n), k);
        const BigInt whole = isqrt(BigInt(D) * nk * nk);
        const BigInt scaled = isqrt((BigInt(D) * nk * nk) << (2 * B)) - (whole << B);
        const long double exact = std::ldexp(scaled.convert_to<long double>(), -B);
        CHECK(std::fabs(r.value.to_long_double() - exact) <= r.error_bound + std::ldexp(1.0L, -B) + 1e-18L);
        CHECK(r.error_bound <= 0x1p-64L);
    }
}

TEST_CASE("greedy split never fails on smooth denominators up to 10^6") {
    for (double eps : {0.2, 0.3, 0.5}) {
        std::size_t smooth = 0;
        for (std::uint64_t q = 2; q <= 1'000'000; ++q) {
            const Factorization f = factorize(q);
            if (!is_smooth(f, eps)) continue;
            ++smooth;
            const FactorSplit s = greedy_split(f, eps);
            if (s.q1 * s.q2 != q || compare_powers(s.q1, {1, 1}, q, {1, 3}) < 0)
                FAIL("bad split of " << q << " at eps " << eps);
        }
        CAPTURE(eps);
        CHECK(smooth > 0);
    }
}

TEST_CASE("smooth stream equals filtered factorizations") {
    Gen g(808);
    for (int i = 0; i < 10; ++i) {
        const auto bound = static_cast<std::uint64_t>(g.range(2, 60));
        const auto limit = static_cast<std::uint64_t>(g.range(1, 200000));
        SmoothNumberStream s(bound, limit);
        std::uint64_t expect = 1;
        auto advance = [&] {
            for (; expect <= limit; ++expect)
                if (factorize(expect).largest_prime() <= bound) return expect++;
            return std::uint64_t{0};
        };
        for (std::uint64_t x = s.next();; x = s.next()) {
            const std::uint64_t want = advance();
            CHECK(x == want);
            if (x == 0 || want == 0) break;
        }
    }
}

TEST_CASE("within agrees with the certified distance") {
    Gen g(909);
    for (int i = 0; i < 300; ++i) {
        const QuadIrr a = g.quad_irr();
        const BigInt m(g.range(1, 100000));
        const BigInt n = a.nearest_multiple(m);
        const BigRational upper = a.abs_diff_upper(m, n);
        CHECK(a.within(m, n, upper));
        CHECK_FALSE(a.within(m, n, upper - BigRational(1, BigInt(1) << 100)));
    }
}

TEST_CASE("smooth approximations against brute force on random square roots") {
    Gen g(1001);
    for (int i = 0; i < 25; ++i) {
        const std::int64_t D = g.non_square(2, 200);
        const auto Q = static_cast<std::uint64_t>(g.range(2, 10000));
        const QuadIrr a = QuadIrr::sqrt_of(D);
        const RationalApprox r = find_smooth_approx(a, Q, 0.5);
        // No smooth q <= Q admits a smaller schedule constant, and no smaller q ties.
        for (std::uint64_t q = 2; q <= Q; ++q) {
            if (!is_smooth(q, 0.5)) continue;
            const BigInt n = a.nearest_multiple(BigInt(q));
            if (std::gcd(static_cast<std::uint64_t>(boost::multiprecision::abs(n) % q), q) != 1) continue;
            const BigRational tol(BigInt(static_cast<std::int64_t>(r.c_used)), BigInt(Q));
            if (q < r.q) CHECK_FALSE(a.within(BigInt(q), n, tol));
            if (r.c_used > 1) CHECK_FALSE(a.within(BigInt(q), n, tol / 2));
        }
    }
}
