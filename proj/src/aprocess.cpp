#include "weyl/aprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weyl/errors.hpp"
#include "weyl/integer.hpp"

namespace weyl {

namespace {

// c a h mod q2 and c a h^3 q1^2 mod q2.
std::pair<std::int64_t, std::int64_t> inner_coefficients(std::int64_t a, std::int64_t q2, std::int64_t q1,
                                                         std::int64_t h, std::int64_t c) {
    std::int64_t u = mul_mod(mul_mod(c, a, q2), h, q2);
    std::int64_t v = mul_mod(mul_mod(u, mul_mod(h, h, q2), q2), mul_mod(q1, q1, q2), q2);
    return {u, v};
}

}  // namespace

SumResult aprocess_inner(std::int64_t a, std::int64_t q2, std::int64_t q1, std::int64_t h, std::int64_t t,
                         std::int64_t N, std::int64_t coefficient) {
    const std::int64_t lo = h * q1, hi = t - h * q1;
    if (hi <= lo) return {};
    auto [u, v] = inner_coefficients(a, q2, q1, h, coefficient);
    return incomplete_sum({q2, u, v, lo, hi, N});
}

AProcessReport aprocess_check(std::int64_t a, std::int64_t q, std::int64_t q1, std::int64_t t, std::int64_t N,
                              std::int64_t coefficient) {
    if (q < 1 || q1 < 1) throw PreconditionViolated("aprocess_check needs q, q1 >= 1");
    if (std::gcd(a, q) != 1) throw PreconditionViolated("aprocess_check needs gcd(a, q) = 1");
    if (q % q1 != 0) throw PreconditionViolated("aprocess_check needs q1 | q");
    if (2 * q1 > N) throw PreconditionViolated("aprocess_check needs 2 q1 <= N");
    if (t < 0 || t > N) throw PreconditionViolated("aprocess_check needs 0 <= t <= N");

    AProcessReport rep;
    rep.N = N;
    rep.q = q;
    rep.q1 = q1;
    rep.q2 = q / q1;
    rep.a = a;
    rep.t = t;
    rep.H = N / (2 * q1);

    const SumResult s = weyl_sum_rational_partial(mod(a, q), q, 4, static_cast<double>(t));
    const double H = static_cast<double>(rep.H);
    rep.lhs = H * H * static_cast<double>(std::norm(s.value));

    // h = 0: every phase is 1, the inner sum counts 0 < m <= t.
    rep.h_terms.push_back(static_cast<double>(t));
    const RootTable table(static_cast<std::uint64_t>(rep.q2));
    for (std::int64_t h = 1; h <= rep.H; ++h) {
        const std::int64_t lo = h * q1, hi = t - h * q1;
        if (hi <= lo) {
            rep.h_terms.push_back(0);
            continue;
        }
        auto [u, v] = inner_coefficients(a, rep.q2, q1, h, coefficient);
        const SumResult direct = incomplete_sum({rep.q2, u, v, lo, hi, N}, table);
        rep.h_terms.push_back(static_cast<double>(direct.abs()));

        // The same inner sum after dividing out d = gcd(q2, c h).
        const B2Reduction red = reduce_b2_residues(rep.q2, a, h, q1, coefficient);
        const SumResult reduced = incomplete_sum({red.r, red.u, red.v, lo, hi, N});
        rep.b2_mismatch = std::max(rep.b2_mismatch, static_cast<double>(std::abs(direct.value - reduced.value)));
    }
    double inner = 0;
    for (double x : rep.h_terms) inner += x;
    rep.rhs = 4.0 * static_cast<double>(N) * H * inner;
    rep.holds = rep.lhs <= rep.rhs * (1 + 1e-9);
    return rep;
}

double max_subinterval_sum(std::int64_t r, std::int64_t u, std::int64_t v, std::int64_t N) {
    if (r < 1 || N < 1) throw PreconditionViolated("max_subinterval_sum needs r, N >= 1");
    const RootTable table(static_cast<std::uint64_t>(r));
    const std::int64_t ur = mod(u, r), vr = mod(v, r);
    // prefix[j] = sum over 0 < n <= j
    std::vector<std::complex<long double>> prefix(static_cast<std::size_t>(N) + 1);
    ComplexAccumulator acc;
    for (std::int64_t n = 1; n <= N; ++n) {
        std::int64_t nr = n % r;
        std::int64_t res = mod(static_cast<i128>(mul_mod(ur, mul_mod(mul_mod(nr, nr, r), nr, r), r)) +
                                   mul_mod(vr, nr, r),
                               r);
        acc.add(table[res]);
        prefix[n] = acc.value();
    }
    std::vector<std::int64_t> ends;
    if (N <= kExactScanLimit) {
        ends.resize(static_cast<std::size_t>(N) + 1);
        std::iota(ends.begin(), ends.end(), 0);
    } else {
        for (int i = 0; i <= 64; ++i) ends.push_back(N * i / 64);
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    }
    double best = 0;
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j)
            best = std::max(best, static_cast<double>(std::abs(prefix[ends[j]] - prefix[ends[i]])));
    return best;
}

}  // namespace weyl
