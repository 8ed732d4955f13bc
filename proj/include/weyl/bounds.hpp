#pragma once

#include <cstdint>
#include <span>

#include <boost/rational.hpp>

namespace weyl {

using Fraction = boost::rational<std::int64_t>;

/// Empirical constants standing in for the implicit constants of the asymptotic bounds.
/// Frozen from pilot runs (alpha = sqrt(2), smoothness 1/7, 16 <= N <= 512, bound eps 0.01), each the pilot
/// maximum rounded up to two significant digits; see tests/calibration_test.cpp.
struct BoundConstants {
    double lemma1 = 1.2e-3;  // |S_4|^2 <= lemma1 * lemma1_rhs
    double theorem2 = 1.3e-2;  // |S_4| <= theorem2 * expression
    double hua_two_thirds = 6.0;
    double hua_half = 6.0;
};

struct BoundParams {
    double eps = 0.01;
    BoundConstants constants{};
};

/// (1 + |delta| N^4)^2 q1 (N + sum of inner maxima).
double lemma1_rhs(double delta, std::uint64_t N, std::uint64_t q1, std::span<const double> inner_max_sums);

/// (1 + N^4 delta)(N^1/2 q1^1/2 + N^1/2 q2^1/4 + N q2^-1/6) q^eps, no constant and no preconditions.
double theorem2_expression(double eps, std::uint64_t N, std::uint64_t q1, std::uint64_t q2, double delta);

/// Constant times theorem2_expression; requires q = q1 q2 and N >= 2 q1.
double theorem2_bound(const BoundParams& params, std::uint64_t N, std::uint64_t q, std::uint64_t q1, std::uint64_t q2,
                      double delta_bound);

struct GcdPowerSum {
    double lhs = 0;   // sum_{h<=X} gcd(q2, h)^(1/3)
    double rhs = 0;   // sum_{d|q2} d^(1/3) X / d
    /// Exact certificate: rhs - lhs = sum_{d|q2} d^(1/3) (X/d - #{h <= X : gcd(q2,h) = d}),
    /// and every coefficient is checked nonnegative in integers.
    bool certified = false;
};

GcdPowerSum gcd_power_sum_check(std::uint64_t q2, std::uint64_t X);

/// 1 - 2^(1-k).
Fraction weyl_classical_exponent(int k);

/// N^(1 - 2^(1-k) + eps).
double weyl_classical_bound(int k, std::uint64_t N, double eps);

/// 1 - (2s - k) / (2 (2^s - 2)); throws DegenerateDenominator for s = 1.
Fraction addendum_exponent(int k, int s);

/// floor((k + 3) / 2).
int optimal_s(int k);

/// Smallest s in [s_from, s_to] minimizing addendum_exponent(k, s).
int argmin_s(int k, int s_from, int s_to);

}  // namespace weyl
