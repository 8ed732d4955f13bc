#include "weyl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "weyl/aprocess.hpp"
#include "weyl/errors.hpp"
#include "weyl/factor.hpp"
#include "weyl/integer.hpp"
#include "weyl/sums.hpp"

namespace weyl {

namespace {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t coprime_to(Rng& rng, std::int64_t m, std::int64_t lo, std::int64_t hi) {
    for (;;) {
        std::int64_t a = uniform(rng, lo, hi);
        if (std::gcd(a, m) == 1) return a;
    }
}

// Random (t0, t1] inside (0, N].
std::pair<std::int64_t, std::int64_t> interval(Rng& rng, std::int64_t N) {
    std::int64_t x = uniform(rng, 0, N), y = uniform(rng, 0, N);
    return {std::min(x, y), std::max(x, y)};
}

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void record(SuiteReport& rep, bool ok, nlohmann::json c, bool keep_passing = true) {
    ++rep.checked;
    if (!ok) ++rep.failures;
    if (keep_passing || !ok) {
        c["pass"] = ok;
        rep.cases.push_back(std::move(c));
    }
}

}  // namespace

nlohmann::json SuiteReport::to_json() const {
    return {{"suite", name},    {"pass", passed()},       {"checked", checked}, {"failures", failures},
            {"cases", cases},   {"elapsed_ms", elapsed_ms}, {"summary", summary}};
}

SuiteReport verify_completion(std::uint64_t seed, int count, std::int64_t r_max) {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "completion";
    Rng rng(seed);
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        IncompleteSumSpec s;
        s.r = uniform(rng, 1, r_max);
        s.u = uniform(rng, 0, s.r - 1);
        s.v = uniform(rng, 0, s.r - 1);
        s.N = uniform(rng, 1, 2 * s.r);
        std::tie(s.t0, s.t1) = interval(rng, s.N);
        const SumResult direct = incomplete_sum(s);
        const SumResult completed = incomplete_via_completion(s);
        const double diff = static_cast<double>(std::abs(direct.value - completed.value));
        worst = std::max(worst, diff);
        record(rep, diff <= 1e-9,
               {{"r", s.r}, {"u", s.u}, {"v", s.v}, {"t0", s.t0}, {"t1", s.t1}, {"diff", diff},
                {"err_bound", static_cast<double>(direct.err_bound + completed.err_bound)}});
    }
    rep.summary = {{"max_diff", worst}, {"tolerance", 1e-9}};
    rep.elapsed_ms = elapsed(start);
    return rep;
}

SuiteReport verify_b2(std::uint64_t seed, int count, std::int64_t q2_max) {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "b2";
    Rng rng(seed);
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        const std::int64_t q2 = uniform(rng, 1, q2_max);
        const std::int64_t q1 = uniform(rng, 1, 100);
        const std::int64_t h = uniform(rng, 1, 100);
        const std::int64_t a = coprime_to(rng, q1 * q2, 1, 10000);
        const B2Reduction red = reduce_b2(q2, a, h, q1);
        const bool coprime_ok = std::gcd(red.r, red.u) == 1;
        const std::int64_t N = uniform(rng, 1, 2000);
        const RootTable big(static_cast<std::uint64_t>(q2)), small(static_cast<std::uint64_t>(red.r));
        const std::int64_t u_full = mul_mod(mul_mod(4, a, q2), h, q2);
        const std::int64_t v_full =
            mul_mod(mul_mod(u_full, mul_mod(h, h, q2), q2), mul_mod(q1, q1, q2), q2);
        double diff = 0;
        for (int j = 0; j < 3; ++j) {
            auto [t0, t1] = interval(rng, N);
            SumResult lhs = incomplete_sum({q2, u_full, v_full, t0, t1, N}, big);
            SumResult rhs = incomplete_sum({red.r, mod(red.u, red.r), mod(red.v, red.r), t0, t1, N}, small);
            diff = std::max(diff, static_cast<double>(std::abs(lhs.value - rhs.value)));
        }
        worst = std::max(worst, diff);
        record(rep, coprime_ok && diff <= 1e-9,
               {{"q2", q2}, {"a", a}, {"h", h}, {"q1", q1}, {"d", red.d}, {"r", red.r}, {"u", red.u}, {"v", red.v},
                {"gcd_r_u", std::gcd(red.r, red.u)}, {"diff", diff}});
    }
    rep.summary = {{"max_diff", worst}, {"tolerance", 1e-9}};
    rep.elapsed_ms = elapsed(start);
    return rep;
}

SuiteReport verify_aprocess(std::uint64_t seed, int count) {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "aprocess";
    Rng rng(seed);
    double worst_ratio = 0;
    for (int i = 0; i < count; ++i) {
        const std::int64_t N = uniform(rng, 2, 1000);
        const std::int64_t q = uniform(rng, 1, 10000);
        std::vector<std::int64_t> divisors;
        for (std::int64_t d = 1; d <= q && 2 * d <= N; ++d)
            if (q % d == 0) divisors.push_back(d);
        const std::int64_t q1 = divisors[static_cast<std::size_t>(uniform(rng, 0, std::ssize(divisors) - 1))];
        const std::int64_t a = coprime_to(rng, q, 1, std::max<std::int64_t>(q, 2));
        const std::int64_t t = uniform(rng, 0, N);
        const AProcessReport r = aprocess_check(a, q, q1, t, N);
        const double ratio = r.rhs > 0 ? r.lhs / r.rhs : 0;
        worst_ratio = std::max(worst_ratio, ratio);
        record(rep, r.holds && r.b2_mismatch <= 1e-9,
               {{"a", a}, {"q", q}, {"q1", q1}, {"t", t}, {"N", N}, {"H", r.H}, {"lhs", r.lhs}, {"rhs", r.rhs},
                {"b2_mismatch", r.b2_mismatch}});
    }
    rep.summary = {{"max_lhs_over_rhs", worst_ratio}, {"relative_slack", 1e-9}};
    rep.elapsed_ms = elapsed(start);
    return rep;
}

SuiteReport verify_crt(std::uint64_t seed, int count, std::int64_t product_max) {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "crt";
    Rng rng(seed);
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        std::int64_t r1, r2;
        do {
            r1 = uniform(rng, 1, product_max);
            r2 = uniform(rng, 1, product_max / r1);
        } while (std::gcd(r1, r2) != 1);
        const std::int64_t u = uniform(rng, -product_max, product_max);
        const std::int64_t v = uniform(rng, -product_max, product_max);
        const SumResult split = complete_sum_crt(r1, r2, u, v);
        const SumResult whole = complete_sum({r1 * r2, u, v});
        const double diff = static_cast<double>(std::abs(split.value - whole.value));
        worst = std::max(worst, diff);
        record(rep, diff <= 1e-9, {{"r1", r1}, {"r2", r2}, {"u", u}, {"v", v}, {"diff", diff}});
    }
    rep.summary = {{"max_diff", worst}, {"tolerance", 1e-9}};
    rep.elapsed_ms = elapsed(start);
    return rep;
}

SuiteReport verify_hua(std::uint64_t seed, const HuaOptions& options) {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "hua";
    Rng rng(seed);

    double weil_worst = -std::numeric_limits<double>::infinity();  // max |Sigma| - 2 sqrt(p)
    for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(options.weil_prime_max))) {
        if (p <= 3) continue;
        const auto r = static_cast<std::int64_t>(p);
        const RootTable table(p);
        double group_worst = -1e300;
        for (int s = 0; s < options.weil_samples; ++s) {
            const std::int64_t u = uniform(rng, 1, r - 1);
            const std::int64_t v = uniform(rng, 0, r - 1);
            const double mag = static_cast<double>(complete_sum({r, u, v}, table).abs());
            group_worst = std::max(group_worst, mag - 2 * std::sqrt(static_cast<double>(p)));
        }
        weil_worst = std::max(weil_worst, group_worst);
        const bool ok = group_worst <= 1e-6;
        record(rep, ok, {{"check", "weil"}, {"p", p}, {"max_excess", group_worst}}, false);
    }

    double worst23 = 0, worst12 = 0;
    std::int64_t arg23 = 0, arg12 = 0;
    for (std::int64_t r = 1; r <= options.hua_r_max; ++r) {
        const RootTable table(static_cast<std::uint64_t>(r));
        double g23 = 0, g12 = 0;
        for (int s = 0; s < options.hua_samples; ++s) {
            const std::int64_t u = r == 1 ? 0 : coprime_to(rng, r, 1, r - 1);
            const std::int64_t v = uniform(rng, 0, r - 1);
            const double mag = static_cast<double>(complete_sum({r, u, v}, table).abs());
            const double rd = static_cast<double>(r);
            g23 = std::max(g23, mag / std::pow(rd, 2.0 / 3.0));
            g12 = std::max(g12, mag / (std::pow(rd, 0.55) * static_cast<double>(std::gcd(r, v))));
        }
        if (g23 > worst23) {
            worst23 = g23;
            arg23 = r;
        }
        if (g12 > worst12) {
            worst12 = g12;
            arg12 = r;
        }
        const bool ok = g23 <= options.constants.hua_two_thirds && g12 <= options.constants.hua_half;
        record(rep, ok, {{"check", "hua"}, {"r", r}, {"ratio_two_thirds", g23}, {"ratio_half", g12}}, false);
    }
    rep.summary = {{"weil_max_excess", weil_worst},
                   {"hua_two_thirds_max_ratio", worst23},
                   {"hua_two_thirds_argmax_r", arg23},
                   {"hua_two_thirds_constant", options.constants.hua_two_thirds},
                   {"hua_half_max_ratio", worst12},
                   {"hua_half_argmax_r", arg12},
                   {"hua_half_constant", options.constants.hua_half}};
    rep.elapsed_ms = elapsed(start);
    return rep;
}

SuiteReport verify_gcdsum(std::uint64_t q2_max, std::uint64_t x_max) {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "gcdsum";
    double min_gap = 1e300;
    for (std::uint64_t q2 = 1; q2 <= q2_max; ++q2) {
        bool group_ok = true;
        for (std::uint64_t X = 1; X <= x_max; ++X) {
            const GcdPowerSum g = gcd_power_sum_check(q2, X);
            min_gap = std::min(min_gap, g.rhs - g.lhs);
            const bool ok = g.certified;
            group_ok = group_ok && ok;
            ++rep.checked;
            if (!ok) {
                ++rep.failures;
                rep.cases.push_back({{"q2", q2}, {"X", X}, {"lhs", g.lhs}, {"rhs", g.rhs}, {"pass", false}});
            }
        }
        (void)group_ok;
    }
    rep.summary = {{"min_rhs_minus_lhs", min_gap}, {"pairs", rep.checked}};
    rep.elapsed_ms = elapsed(start);
    return rep;
}

SuiteReport verify_addendum() {
    const auto start = Clock::now();
    SuiteReport rep;
    rep.name = "addendum";
    auto frac = [](const Fraction& f) { return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator()); };

    const Fraction quartic = addendum_exponent(4, 3);
    record(rep, quartic == Fraction(5, 6), {{"check", "addendum_exponent(4,3)"}, {"value", frac(quartic)}});
    const Fraction classical = weyl_classical_exponent(4);
    record(rep, classical == Fraction(7, 8), {{"check", "classical_exponent(4)"}, {"value", frac(classical)}});
    const Fraction cubic = weyl_classical_exponent(3);
    record(rep, cubic == Fraction(3, 4), {{"check", "classical_exponent(3)"}, {"value", frac(cubic)}});

    for (int k = 3; k <= 12; ++k) {
        const int s = optimal_s(k);
        Fraction best = addendum_exponent(k, 2);
        std::vector<int> argmins;
        for (int t = 2; t <= k + 5; ++t) {
            Fraction v = addendum_exponent(k, t);
            if (v < best) {
                best = v;
                argmins.clear();
            }
            if (v == best) argmins.push_back(t);
        }
        const bool in_argmin = std::find(argmins.begin(), argmins.end(), s) != argmins.end();
        record(rep, in_argmin && addendum_exponent(k, s) == best,
               {{"check", "optimal_s"}, {"k", k}, {"optimal_s", s}, {"argmin_set", argmins},
                {"min_exponent", frac(best)}, {"beats_weyl", best < weyl_classical_exponent(k)}});
    }
    rep.elapsed_ms = elapsed(start);
    return rep;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"completion", "b2", "aprocess", "crt", "hua", "gcdsum", "addendum"};
    return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "completion") return verify_completion(seed);
    if (name == "b2") return verify_b2(seed);
    if (name == "aprocess") return verify_aprocess(seed);
    if (name == "crt") return verify_crt(seed);
    if (name == "hua") return verify_hua(seed);
    if (name == "gcdsum") return verify_gcdsum();
    if (name == "addendum") return verify_addendum();
    throw PreconditionViolated("unknown suite '" + name + "'");
}

}  // namespace weyl
