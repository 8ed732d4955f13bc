#include "weyl/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "weyl/errors.hpp"
#include "weyl/fixed_point.hpp"

namespace weyl {

namespace {

constexpr std::uint64_t kEnumerateLimit = 10'000'000;
// Above kEnumerateLimit, Auto still enumerates when the smooth stream stays below this many terms.
constexpr std::uint64_t kEnumerateBudget = 4'000'000;

BigRational c_over_Q(double c, std::uint64_t Q) {
    // c is a power of two (possibly below 1 only in callers' own schedules); exact as a rational.
    int exp = 0;
    double mant = std::frexp(c, &exp);
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    BigRational r(m);
    if (exp >= 0)
        r *= BigRational(BigInt(1) << exp);
    else
        r /= BigRational(BigInt(1) << -exp);
    return r / BigRational(BigInt(Q));
}

// Smallest schedule value 1, 2, 4, ... that is >= need.
double schedule_at_least(double need) {
    double c = 1;
    while (c < need) c *= 2;
    return c;
}

// ||q alpha|| * Q from a 64-bit turn.
double float_need(const FracMultiplier& mul, std::uint64_t q, std::uint64_t Q) {
    std::uint64_t t = mul.turn(q);
    std::uint64_t dist = std::min(t, std::uint64_t{0} - t);
    return std::ldexp(static_cast<double>(dist), -64) * static_cast<double>(Q);
}

// Exact schedule constant for (q, a), or nullopt if it exceeds c_max.
std::optional<double> exact_schedule(const QuadIrr& alpha, std::uint64_t q, const BigInt& a, std::uint64_t Q,
                                     double guess, double c_max) {
    double c = std::max(1.0, guess);
    while (!alpha.within(BigInt(q), a, c_over_Q(c, Q))) {
        c *= 2;
        if (c > c_max) return std::nullopt;
    }
    while (c > 1 && alpha.within(BigInt(q), a, c_over_Q(c / 2, Q))) c /= 2;
    if (c > c_max) return std::nullopt;
    return c;
}

RationalApprox make_result(const QuadIrr& alpha, std::uint64_t q, const BigInt& a, std::uint64_t Q, double c,
                           Factorization fac) {
    RationalApprox out;
    out.a = a.convert_to<std::int64_t>();
    out.q = q;
    out.Q = Q;
    out.factorization = std::move(fac);
    out.c_used = c;
    BigRational tight = alpha.abs_diff_upper(BigInt(q), a) / BigRational(BigInt(q));
    BigRational loose = c_over_Q(c, Q) / BigRational(BigInt(q));
    out.delta_bound = tight < loose ? tight : loose;
    return out;
}

bool coprime(const BigInt& a, std::uint64_t q) {
    return std::gcd(static_cast<std::uint64_t>(boost::multiprecision::abs(a) % q), q) == 1;
}

// nullopt only when the stream outgrows `budget` terms.
std::optional<RationalApprox> search_enumerate(const QuadIrr& alpha, std::uint64_t Q, double eps, double c_max,
                                               std::uint64_t budget) {
    const FracMultiplier mul(fixed_point(alpha, 192));
    const auto prime_bound = static_cast<std::uint64_t>(std::pow(static_cast<long double>(Q), eps)) + 1;
    SmoothNumberStream stream(prime_bound, Q);

    std::optional<double> best_c;
    std::uint64_t best_q = 0;
    BigInt best_a;
    Factorization best_fac;
    std::uint64_t seen = 0;
    for (std::uint64_t q = stream.next(); q != 0; q = stream.next()) {
        if (++seen > budget) return std::nullopt;
        if (q < 2) continue;
        double need = float_need(mul, q, Q) * (1 - 1e-9);
        double c_low = schedule_at_least(need);
        if (c_low > c_max) continue;
        if (best_c && c_low >= *best_c) continue;
        BigInt a = alpha.nearest_multiple(BigInt(q));
        if (!coprime(a, q)) continue;
        auto c = exact_schedule(alpha, q, a, Q, c_low, best_c ? std::min(c_max, *best_c / 2) : c_max);
        if (!c) continue;
        Factorization fac = factorize(q);
        if (!is_smooth(fac, eps)) continue;
        best_c = *c;
        best_q = q;
        best_a = a;
        best_fac = std::move(fac);
        if (*best_c == 1) break;  // ascending order: nothing later can beat it
    }
    if (!best_c) throw NotFound("no eps-smooth denominator up to Q with C <= c_max");
    return make_result(alpha, best_q, best_a, Q, *best_c, std::move(best_fac));
}

RationalApprox search_lattice(const QuadIrr& alpha, std::uint64_t Q, double eps, double c_max) {
    for (double c = 1; c <= c_max; c *= 2) {
        for (std::uint64_t q : close_denominators(alpha, Q, c)) {
            BigInt a = alpha.nearest_multiple(BigInt(q));
            if (!coprime(a, q)) continue;
            Factorization fac = factorize(q);
            if (!is_smooth(fac, eps)) continue;
            return make_result(alpha, q, a, Q, c, std::move(fac));
        }
    }
    throw NotFound("no eps-smooth denominator up to Q with C <= c_max");
}

}  // namespace

std::vector<std::uint64_t> close_denominators(const QuadIrr& alpha, std::uint64_t Q, double c) {
    if (Q < 2) throw PreconditionViolated("close_denominators needs Q >= 2");
    auto convs = convergents(alpha, static_cast<std::int64_t>(Q));
    const Convergent lo = convs.back();
    CfExpansion cf = cf_expand(alpha, 0);
    const std::int64_t a_next = cf.quotient(lo.index + 1);
    const std::int64_t p_prev = convs.size() >= 2 ? convs[convs.size() - 2].p : 1;
    const std::int64_t q_prev = convs.size() >= 2 ? convs[convs.size() - 2].q : 0;
    const Convergent hi{lo.index + 1, checked_add(checked_mul(a_next, lo.p), p_prev),
                        checked_add(checked_mul(a_next, lo.q), q_prev)};

    const int bits = 192;
    const FixedPointReal fp = fixed_point(alpha, bits);
    auto residual = [&](const Convergent& cv) {
        BigInt num = fp.mantissa * cv.q - (BigInt(cv.p) << bits);
        return std::ldexp(num.convert_to<long double>(), -bits);
    };
    const long double e_lo = residual(lo), e_hi = residual(hi);
    const long double tol = static_cast<long double>(c) / static_cast<long double>(Q);
    const long double Qd = static_cast<long double>(Q);

    // (q, a) = x*(q_n, p_n) + y*(q_{n+1}, p_{n+1}) since the basis is unimodular.
    const auto y_max = static_cast<std::int64_t>(std::floor(tol * lo.q + Qd * std::fabs(e_lo))) + 2;
    const BigRational exact_tol = c_over_Q(c, Q);
    std::vector<std::uint64_t> out;
    for (std::int64_t y = -y_max; y <= y_max; ++y) {
        long double x_q_lo = std::ceil((1.0L - static_cast<long double>(y) * hi.q) / lo.q);
        long double x_q_hi = std::floor((Qd - static_cast<long double>(y) * hi.q) / lo.q);
        long double b1 = (-tol - y * e_hi) / e_lo, b2 = (tol - y * e_hi) / e_lo;
        long double x_e_lo = std::floor(std::min(b1, b2)) - 1, x_e_hi = std::ceil(std::max(b1, b2)) + 1;
        auto x_from = static_cast<std::int64_t>(std::max(x_q_lo, x_e_lo));
        auto x_to = static_cast<std::int64_t>(std::min(x_q_hi, x_e_hi));
        for (std::int64_t x = x_from; x <= x_to; ++x) {
            i128 q = static_cast<i128>(x) * lo.q + static_cast<i128>(y) * hi.q;
            if (q < 2 || q > static_cast<i128>(Q)) continue;
            long double e = x * e_lo + y * e_hi;
            if (std::fabs(e) > tol * (1 + 1e-9L) + 1e-30L) continue;
            i128 a = static_cast<i128>(x) * lo.p + static_cast<i128>(y) * hi.p;
            if (alpha.within(BigInt(static_cast<std::int64_t>(q)), BigInt(static_cast<std::int64_t>(a)), exact_tol))
                out.push_back(static_cast<std::uint64_t>(q));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RationalApprox find_smooth_approx(const QuadIrr& alpha, std::uint64_t Q, double eps, const ApproxOptions& options) {
    if (Q < 2) throw PreconditionViolated("find_smooth_approx needs Q >= 2");
    if (!(eps > 0 && eps < 1)) throw PreconditionViolated("eps must lie in (0, 1)");
    if (options.c_max < 1) throw NotFound("c_max below the first schedule value 1");
    constexpr auto unlimited = std::numeric_limits<std::uint64_t>::max();
    switch (options.strategy) {
        case SearchStrategy::Enumerate:
            return *search_enumerate(alpha, Q, eps, options.c_max, unlimited);
        case SearchStrategy::Lattice:
            return search_lattice(alpha, Q, eps, options.c_max);
        case SearchStrategy::Auto:
            break;
    }
    if (Q <= kEnumerateLimit) return *search_enumerate(alpha, Q, eps, options.c_max, unlimited);
    if (auto r = search_enumerate(alpha, Q, eps, options.c_max, kEnumerateBudget)) return *r;
    return search_lattice(alpha, Q, eps, options.c_max);
}

FactorSplit greedy_split(const Factorization& fac, const Rational& target, double eps) {
    const std::uint64_t q = fac.value();
    if (q < 2) throw PreconditionViolated("greedy_split needs q >= 2");
    const Rational e = exponent_rational(eps);
    const Rational upper = Rational::make(target.num * e.den + e.num * target.den, target.den * e.den);
    std::uint64_t q1 = 1;
    for (const auto& [p, mult] : fac.factors) {
        bool done = false;
        for (int i = 0; i < mult && !done; ++i) {
            q1 *= p;
            done = compare_powers(q1, Rational{1, 1}, q, target) >= 0;
        }
        if (done) break;
    }
    if (compare_powers(q1, Rational{1, 1}, q, upper) > 0)
        throw RangeViolation("greedy split overshoots: q1=" + std::to_string(q1) + " > q^(target+eps) for q=" +
                             std::to_string(q));
    return {q, q1, q / q1};
}

}  // namespace weyl
