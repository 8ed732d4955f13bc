#include "doctest.h"

#include <cmath>
#include <numeric>
#include <optional>

#include "weyl/approx.hpp"
#include "weyl/errors.hpp"

using namespace weyl;

namespace {

// |m sqrt(D) - b| <= c/Q, by squaring integers: (bQ - c)^2 <= D m^2 Q^2 <= (bQ + c)^2.
bool sqrt_within(std::int64_t D, std::int64_t m, std::int64_t b, std::int64_t c, std::int64_t Q) {
    const BigInt lhs = BigInt(D) * m * m * Q * Q;
    const BigInt lo = BigInt(b) * Q - c, hi = BigInt(b) * Q + c;
    if (hi < 0) return false;
    return (lo <= 0 || lo * lo <= lhs) && lhs <= hi * hi;
}

// Every prime p of q satisfies p^den <= q^num, by trial division.
bool smooth_oracle(std::uint64_t q, int num, int den) {
    std::uint64_t m = q;
    for (std::uint64_t p = 2; p * p <= m || m > 1; ++p) {
        if (p * p > m) p = m;
        if (m % p) continue;
        while (m % p == 0) m /= p;
        if (boost::multiprecision::pow(BigInt(p), den) > boost::multiprecision::pow(BigInt(q), num)) return false;
    }
    return true;
}

struct Oracle {
    std::uint64_t q = 0;
    std::int64_t a = 0;
    std::int64_t c = 0;
};

// alpha = (P + sqrt(D)) / S with S in {1, 2}. Smallest power-of-two C, then smallest q.
std::optional<Oracle> brute_force(std::int64_t P, std::int64_t D, std::int64_t S, std::uint64_t Q, int num, int den,
                                  std::int64_t c_max) {
    const long double alpha = (P + std::sqrt(static_cast<long double>(D))) / S;
    std::optional<Oracle> best;
    for (std::uint64_t q = 2; q <= Q; ++q) {
        const auto a = static_cast<std::int64_t>(std::llround(alpha * q));
        if (std::gcd(static_cast<std::uint64_t>(std::llabs(a)), q) != 1) continue;
        if (!smooth_oracle(q, num, den)) continue;
        const auto m = static_cast<std::int64_t>(q);
        for (std::int64_t c = 1; c <= c_max && (!best || c < best->c); c *= 2) {
            // q alpha - a = (q sqrt(D) - (S a - P q)) / S
            if (sqrt_within(D, m, S * a - P * m, S * c, static_cast<std::int64_t>(Q))) {
                best = Oracle{q, a, c};
                break;
            }
        }
    }
    return best;
}

void check_against_oracle(const QuadIrr& alpha, std::int64_t P, std::int64_t D, std::int64_t S, std::uint64_t Q,
                          double eps, int num, int den, std::int64_t c_max, SearchStrategy strategy) {
    auto want = brute_force(P, D, S, Q, num, den, c_max);
    CAPTURE(Q);
    if (!want) {
        CHECK_THROWS_AS(find_smooth_approx(alpha, Q, eps, {static_cast<double>(c_max), strategy}), NotFound);
        return;
    }
    const RationalApprox got = find_smooth_approx(alpha, Q, eps, {static_cast<double>(c_max), strategy});
    CHECK(got.q == want->q);
    CHECK(got.a == want->a);
    CHECK(got.c_used == static_cast<double>(want->c));
}

}  // namespace

TEST_CASE("Pell fixture at Q = 500") {
    const RationalApprox r = find_smooth_approx(QuadIrr::sqrt_of(2), 500, 0.5);
    CHECK(r.q == 408);
    CHECK(r.a == 577);
    CHECK(r.c_used == 1);
    CHECK(r.factorization.to_string() == "2^3*3*17");
    CHECK(r.delta() == doctest::Approx(2.1239014147551e-06).epsilon(1e-12));
    CHECK(r.q_over_Q() == doctest::Approx(0.816));
    CHECK(577 * 577 - 2 * 408 * 408 == 1);
}

TEST_CASE("Q = 2 has no 0.5-smooth denominator") {
    // 2 > 2^0.5, so q = 2 is not smooth even though 3/2 would meet C = 1.
    CHECK_FALSE(is_smooth(2, 0.5));
    CHECK(QuadIrr::sqrt_of(2).within(BigInt(2), BigInt(3), BigRational(1, 2)));
    CHECK(std::fabs(std::sqrt(2.0) - 1.5) * 4 <= 1);
    CHECK_THROWS_AS(find_smooth_approx(QuadIrr::sqrt_of(2), 2, 0.5), NotFound);
}

TEST_CASE("golden ratio at Q = 100 follows the brute-force escalation") {
    const QuadIrr phi = parse_quad_irr("(1+sqrt(5))/2");
    for (std::int64_t c_max : {1, 2, 4, 8, 16, 64, 1024})
        for (auto strategy : {SearchStrategy::Enumerate, SearchStrategy::Lattice}) {
            CAPTURE(c_max);
            check_against_oracle(phi, 1, 5, 2, 100, 0.3, 3, 10, c_max, strategy);
        }
    CHECK_THROWS_AS(find_smooth_approx(phi, 100, 0.3, 1.0), NotFound);
}

TEST_CASE("brute-force agreement for sqrt(2) and sqrt(3)") {
    for (std::uint64_t Q : {10, 37, 100, 500, 1000, 2024, 5000, 10000}) {
        check_against_oracle(QuadIrr::sqrt_of(2), 0, 2, 1, Q, 0.5, 1, 2, 1 << 20, SearchStrategy::Enumerate);
        check_against_oracle(QuadIrr::sqrt_of(2), 0, 2, 1, Q, 0.25, 1, 4, 1 << 20, SearchStrategy::Lattice);
        check_against_oracle(QuadIrr::sqrt_of(3), 0, 3, 1, Q, 0.5, 1, 2, 1 << 20, SearchStrategy::Auto);
    }
}

TEST_CASE("enumeration and lattice strategies agree") {
    for (std::uint64_t Q : {1000ULL, 123457ULL, 1ULL << 20, 9999991ULL}) {
        for (double eps : {0.2, 0.25, 0.5}) {
            CAPTURE(Q);
            CAPTURE(eps);
            auto e = find_smooth_approx(QuadIrr::sqrt_of(2), Q, eps, {1 << 20, SearchStrategy::Enumerate});
            auto l = find_smooth_approx(QuadIrr::sqrt_of(2), Q, eps, {1 << 20, SearchStrategy::Lattice});
            CHECK(e.q == l.q);
            CHECK(e.a == l.a);
            CHECK(e.c_used == l.c_used);
        }
    }
}

TEST_CASE("close_denominators matches a scan") {
    const QuadIrr r7 = QuadIrr::sqrt_of(7);
    const std::uint64_t Q = 3000;
    for (double c : {1.0, 4.0, 32.0}) {
        std::vector<std::uint64_t> want;
        for (std::uint64_t q = 2; q <= Q; ++q) {
            const auto a = static_cast<std::int64_t>(std::llround(std::sqrt(7.0L) * q));
            if (sqrt_within(7, static_cast<std::int64_t>(q), a, static_cast<std::int64_t>(c), Q)) want.push_back(q);
        }
        CHECK(close_denominators(r7, Q, c) == want);
    }
}

TEST_CASE("returned approximations satisfy their contract") {
    for (std::uint64_t Q : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        const RationalApprox r = find_smooth_approx(QuadIrr::sqrt_of(2), Q, 0.5);
        CAPTURE(Q);
        CHECK(r.q <= Q);
        CHECK(std::gcd(static_cast<std::uint64_t>(r.a), r.q) == 1);
        CHECK(smooth_oracle(r.q, 1, 2));
        CHECK(sqrt_within(2, static_cast<std::int64_t>(r.q), r.a, static_cast<std::int64_t>(r.c_used),
                          static_cast<std::int64_t>(Q)));
    }
}

TEST_CASE("greedy_split fixtures") {
    auto s = greedy_split(factorize(408), 0.25);
    CHECK(s.q1 == 8);
    CHECK(s.q2 == 51);
    auto t = greedy_split(factorize(1024), 0.2);
    CHECK(t.q1 == 16);
    CHECK(t.q2 == 64);
    CHECK_THROWS_AS(greedy_split(factorize(2 * 1000003ULL), 0.1), RangeViolation);
    CHECK_THROWS_AS(greedy_split(factorize(1), 0.5), PreconditionViolated);
}
