#include "doctest.h"

#include <cmath>
#include <numbers>

#include "weyl/errors.hpp"
#include "weyl/fixed_point.hpp"
#include "weyl/sums.hpp"

using namespace weyl;
using cld = std::complex<long double>;

namespace {

const long double kTwoPi = 2 * std::numbers::pi_v<long double>;

cld e(long double x) { return std::polar(1.0L, kTwoPi * x); }

void check_close(cld got, cld want, long double tol = 1e-12L) {
    CHECK(static_cast<double>(std::abs(got - want)) <= static_cast<double>(tol));
}

}  // namespace

TEST_CASE("real-argument Weyl sums with trivial values") {
    auto zero = weyl_sum_real(Rational{0, 1}, 4, 57);
    check_close(zero.value, 57);
    CHECK(zero.n_terms == 57);
    auto half = weyl_sum_real(Rational{1, 2}, 4, 10);
    check_close(half.value, 0);
    auto cubic = weyl_sum_real(Rational{1, 2}, 3, 11);
    check_close(cubic.value, -1);
}

TEST_CASE("Weyl sum error bound policy") {
    auto s = weyl_sum_real(QuadIrr::sqrt_of(2), 4, 1000);
    CHECK(s.err_bound <= 1000 * 2 * std::numbers::pi_v<long double> * 0x1p-64L);
    CHECK(s.abs() <= 1000 + s.err_bound);
    CHECK_THROWS_AS(weyl_sum_real(QuadIrr::sqrt_of(2), 5, 10), PreconditionViolated);
}

TEST_CASE("chunked sums do not depend on the thread count") {
    const Alpha a = QuadIrr::sqrt_of(3);
    const std::uint64_t N = 5 * kWeylChunk + 123;
    const SumResult one = weyl_sum_real(a, 4, N, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        const SumResult many = weyl_sum_real(a, 4, N, t);
        CHECK(many.value == one.value);
        CHECK(many.err_bound == one.err_bound);
    }
    const SumResult flat = weyl_sum_real_single_pass(a, 4, N);
    CHECK(std::abs(flat.value - one.value) <= flat.err_bound + one.err_bound);
}

TEST_CASE("weyl_scan total equals weyl_sum_real") {
    const Alpha a = QuadIrr::sqrt_of(2);
    const WeylScan scan = weyl_scan(a, 4, 3 * kWeylChunk + 5, kWeylChunk, 4);
    const SumResult direct = weyl_sum_real(a, 4, 3 * kWeylChunk + 5, 1);
    CHECK(scan.total.value == direct.value);
    CHECK(scan.window_max >= scan.total.abs());
    CHECK(scan.window_argmax >= kWeylChunk);
}

TEST_CASE("rational partial sums") {
    check_close(weyl_sum_rational_partial(1, 2, 4, 4).value, 0);
    check_close(weyl_sum_rational_partial(1, 5, 4, 5).value, 4.0L * e(0.2L) + 1.0L);
    check_close(weyl_sum_rational_partial(3, 7, 3, 7).value, complete_sum({7, 3, 0}).value);
    check_close(weyl_sum_rational_partial(1, 5, 4, 2.9).value, 2.0L * e(0.2L));
    CHECK_THROWS_AS(weyl_sum_rational_partial(2, 4, 4, 3), GcdError);
}

TEST_CASE("complete cubic sums") {
    check_close(complete_sum({1, 0, 0}).value, 1);
    check_close(complete_sum({2, 1, 0}).value, 0);
    const auto s7 = complete_sum({7, 1, 0});
    check_close(s7.value, 1.0L + 6.0L * std::cos(kTwoPi / 7));
    CHECK(static_cast<double>(s7.re()) == doctest::Approx(4.7409).epsilon(1e-4));
    CHECK(s7.err_bound <= 7 * 0x1p-62L);
}

TEST_CASE("CRT factorization of complete sums") {
    check_close(complete_sum_crt(2, 3, 1, 0).value, complete_sum({6, 1, 0}).value);
    check_close(complete_sum_crt(1, 11, 4, 5).value, complete_sum({11, 4, 5}).value);
    check_close(complete_sum_crt(5, 7, 2, 3).value, complete_sum({35, 2, 3}).value, 1e-9L);
    CHECK_THROWS_AS(complete_sum_crt(4, 6, 1, 1), NotCoprime);
}

TEST_CASE("incomplete sums") {
    check_close(incomplete_sum({17, 3, 5, 4, 4, 17}).value, 0);
    check_close(incomplete_sum({17, 3, 5, 0, 17, 17}).value, complete_sum({17, 3, 5}).value);
    cld want = 0;
    for (int n = 1; n <= 9; ++n) want += e(static_cast<long double>((3 * n * n * n + 5 * n) % 17) / 17);
    check_close(incomplete_sum({17, 3, 5, 0, 9, 17}).value, want);
}

TEST_CASE("completion identity fixtures") {
    for (const IncompleteSumSpec& s : {IncompleteSumSpec{17, 3, 5, 0, 9, 17}, IncompleteSumSpec{2, 1, 0, 0, 1, 1},
                                       IncompleteSumSpec{51, 28, 12, 3, 40, 51}}) {
        const SumResult d = incomplete_sum(s), c = incomplete_via_completion(s);
        check_close(d.value, c.value, 1e-9L);
        CHECK(std::abs(d.value - c.value) <= d.err_bound + c.err_bound);
    }
    check_close(incomplete_via_completion({2, 1, 0, 0, 1, 1}).value, -1);
}

TEST_CASE("B2 reduction fixtures") {
    const B2Reduction r = reduce_b2(51, 7, 3, 8);
    CHECK(r.d == 3);
    CHECK(r.r == 17);
    CHECK(r.u == 28);
    CHECK(r.v == 16128);
    CHECK(r.v % 17 == 12);
    for (auto [t0, t1] : {std::pair{0, 51}, std::pair{5, 33}, std::pair{20, 21}})
        check_close(incomplete_sum({51, 4 * 7 * 3, 4 * 7 * 27 * 64, t0, t1, 51}).value,
                    incomplete_sum({17, 28 % 17, 16128 % 17, t0, t1, 51}).value);

    const B2Reduction one = reduce_b2(1, 5, 2, 3);
    CHECK(one.d == 1);
    CHECK(one.r == 1);

    const B2Reduction p = reduce_b2(64, 3, 4, 5);
    CHECK(p.d == 16);
    CHECK(p.r == 4);
    CHECK(p.u == 3);
    CHECK(p.v == 3 * 16 * 25);
    check_close(incomplete_sum({64, 48, 48 * 16 * 25 % 64, 0, 20, 20}).value,
                incomplete_sum({4, 3, 1200 % 4, 0, 20, 20}).value);

    CHECK_THROWS_AS(reduce_b2(51, 17, 3, 8), PreconditionViolated);
}

TEST_CASE("B2 residues agree with the exact reduction") {
    for (std::int64_t q2 : {1, 12, 51, 64, 97, 360})
        for (std::int64_t h : {1, 2, 3, 8, 45})
            for (std::int64_t a : {1, 7, 13}) {
                if (std::gcd(a, q2) != 1) continue;
                const B2Reduction x = reduce_b2(q2, a, h, 5), y = reduce_b2_residues(q2, a, h, 5);
                CHECK(x.d == y.d);
                CHECK(x.r == y.r);
                CHECK(((x.u - y.u) % x.r) == 0);
                CHECK(((x.v - y.v) % x.r) == 0);
            }
}

TEST_CASE("root table and unit roots") {
    const RootTable t(12);
    check_close(t[0], 1);
    check_close(t[3], cld(0, 1));
    check_close(t[6], -1);
    check_close(unit_root(rational_turn(1, 4)), cld(0, 1));
    check_close(unit_root(rational_turn(1, 3)), e(1.0L / 3));
    CHECK(rational_turn(0, 7) == 0);
}

TEST_CASE("fixed point fixtures") {
    const FixedPointReal r2 = fixed_point(QuadIrr::sqrt_of(2), 4);
    CHECK((r2.mantissa == 22 || r2.mantissa == 23));
    const FixedPointReal half = fixed_point(Rational{1, 2}, required_bits(3, 4));
    CHECK(half.mantissa == BigInt(1) << 71);
    const FracResult f = frac_power_mul(half, 3, 4);
    CHECK(f.value.to_long_double() == 0.5L);
    const FracResult g = frac_power_mul(fixed_point(QuadIrr::sqrt_of(2), 4 * 17 + 64), 100000, 4);
    CHECK(g.error_bound <= 0x1p-64L);
    CHECK_THROWS_AS(frac_power_mul(fixed_point(QuadIrr::sqrt_of(2), 64), 100000, 4), InsufficientPrecision);
    CHECK(required_bits(100000, 4) == 4 * 17 + 64);
}
