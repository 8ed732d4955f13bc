#pragma once

#include <cstdint>
#include <vector>

#include "weyl/sums.hpp"

namespace weyl {

/// Coefficient c in the differenced phase e_{q2}(c a h (m^3 + h^2 q1^2 m)).
/// (m + h q1)^4 - (m - h q1)^4 = 8 h q1 (m^3 + h^2 q1^2 m), so 8 is the exact value.
inline constexpr std::int64_t kDifferencingCoefficient = 8;

struct AProcessReport {
    std::int64_t N = 0, q = 1, q1 = 1, q2 = 1, a = 0, t = 0;
    std::int64_t H = 0;
    double lhs = 0;                 // H^2 |S_4(a/q, t)|^2
    double rhs = 0;                 // 4 N H sum_{0<=h<=H} |inner_h|
    std::vector<double> h_terms;    // |inner_h|, h = 0..H
    double b2_mismatch = 0;         // max |direct - reduced| over h >= 1
    bool holds = false;             // lhs <= rhs (1 + 1e-9)
};

/// Evaluates both sides of the explicit-constant A-process inequality.
/// Requires gcd(a, q) = 1, q1 | q, 2 q1 <= N, 0 <= t <= N.
AProcessReport aprocess_check(std::int64_t a, std::int64_t q, std::int64_t q1, std::int64_t t, std::int64_t N,
                              std::int64_t coefficient = kDifferencingCoefficient);

/// Inner sum sum_{h q1 < m <= t - h q1} e_{q2}(c a h (m^3 + h^2 q1^2 m)) for h >= 1.
SumResult aprocess_inner(std::int64_t a, std::int64_t q2, std::int64_t q1, std::int64_t h, std::int64_t t,
                         std::int64_t N, std::int64_t coefficient = kDifferencingCoefficient);

/// max over sub-intervals I of (0, N] of |Sigma(r; u, v; I)|. Exact scan for N <= 300,
/// otherwise endpoints on a 64-point grid (the full interval is always included).
double max_subinterval_sum(std::int64_t r, std::int64_t u, std::int64_t v, std::int64_t N);

inline constexpr std::int64_t kExactScanLimit = 300;

}  // namespace weyl
