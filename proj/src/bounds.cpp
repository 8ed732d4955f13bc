#include "weyl/bounds.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "weyl/errors.hpp"

namespace weyl {

double lemma1_rhs(double delta, std::uint64_t N, std::uint64_t q1, std::span<const double> inner_max_sums) {
    const double n = static_cast<double>(N);
    const double pre = 1 + std::fabs(delta) * n * n * n * n;
    double inner = n;
    for (double s : inner_max_sums) inner += s;
    return pre * pre * static_cast<double>(q1) * inner;
}

double theorem2_expression(double eps, std::uint64_t N, std::uint64_t q1, std::uint64_t q2, double delta) {
    const double n = static_cast<double>(N);
    const double a = static_cast<double>(q1), b = static_cast<double>(q2);
    const double pre = 1 + n * n * n * n * std::fabs(delta);
    const double terms = std::sqrt(n * a) + std::sqrt(n) * std::pow(b, 0.25) + n * std::pow(b, -1.0 / 6.0);
    return pre * terms * std::pow(a * b, eps);
}

double theorem2_bound(const BoundParams& params, std::uint64_t N, std::uint64_t q, std::uint64_t q1, std::uint64_t q2,
                      double delta_bound) {
    if (q1 == 0 || q2 == 0 || q1 * q2 != q) throw PreconditionViolated("theorem2_bound needs q = q1 q2");
    if (N < 2 * q1) throw PreconditionViolated("theorem2_bound needs N >= 2 q1");
    if (delta_bound < 0) throw PreconditionViolated("delta bound must be nonnegative");
    return params.constants.theorem2 * theorem2_expression(params.eps, N, q1, q2, delta_bound);
}

GcdPowerSum gcd_power_sum_check(std::uint64_t q2, std::uint64_t X) {
    if (q2 < 1 || X < 1) throw PreconditionViolated("gcd_power_sum_check needs q2, X >= 1");
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d <= q2; ++d)
        if (q2 % d == 0) divisors.push_back(d);

    // count[d] = #{h <= X : gcd(q2, h) = d}
    std::vector<std::uint64_t> count(q2 + 1, 0);
    GcdPowerSum out;
    for (std::uint64_t h = 1; h <= X; ++h) {
        std::uint64_t g = std::gcd(q2, h);
        ++count[g];
        out.lhs += std::cbrt(static_cast<double>(g));
    }
    out.certified = true;
    for (std::uint64_t d : divisors) {
        out.rhs += std::cbrt(static_cast<double>(d)) * static_cast<double>(X) / static_cast<double>(d);
        // X/d - count[d] >= 0  <=>  X >= d * count[d]
        if (d * count[d] > X) out.certified = false;
    }
    return out;
}

Fraction weyl_classical_exponent(int k) {
    if (k < 3) throw PreconditionViolated("classical Weyl exponent needs k >= 3");
    if (k > 62) throw PreconditionViolated("k too large");
    const std::int64_t half = std::int64_t{1} << (k - 1);
    return Fraction(half - 1, half);
}

double weyl_classical_bound(int k, std::uint64_t N, double eps) {
    const Fraction e = weyl_classical_exponent(k);
    const double exponent = static_cast<double>(e.numerator()) / static_cast<double>(e.denominator()) + eps;
    return std::pow(static_cast<double>(N), exponent);
}

Fraction addendum_exponent(int k, int s) {
    if (s == 1) throw DegenerateDenominator("addendum exponent: 2^s - 2 = 0 for s = 1");
    if (s < 1 || s > 60) throw PreconditionViolated("addendum exponent needs 2 <= s <= 60");
    const std::int64_t den = 2 * ((std::int64_t{1} << s) - 2);
    return Fraction(1) - Fraction(2 * s - k, den);
}

int optimal_s(int k) { return (k + 3) / 2; }

int argmin_s(int k, int s_from, int s_to) {
    if (s_from < 2 || s_to < s_from) throw PreconditionViolated("argmin_s needs 2 <= s_from <= s_to");
    int best = s_from;
    Fraction best_value = addendum_exponent(k, s_from);
    for (int s = s_from + 1; s <= s_to; ++s) {
        Fraction v = addendum_exponent(k, s);
        if (v < best_value) {
            best_value = v;
            best = s;
        }
    }
    return best;
}

}  // namespace weyl
