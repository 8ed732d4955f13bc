#pragma once

#include <cstdint>
#include <functional>

#include "weyl/factor.hpp"
#include "weyl/integer.hpp"
#include "weyl/quad_irr.hpp"

namespace weyl {

/// a/q close to alpha with a smooth denominator.
struct RationalApprox {
    std::int64_t a = 0;
    std::uint64_t q = 1;
    std::uint64_t Q = 1;          // the Q the approximation was built for
    Factorization factorization;
    double c_used = 0;            // |alpha - a/q| <= c_used / (q Q), verified exactly
    BigRational delta_bound;      // certified upper bound on |alpha - a/q|

    double delta() const { return delta_bound.convert_to<double>(); }
    double q_over_Q() const { return static_cast<double>(q) / static_cast<double>(Q); }
};

enum class SearchStrategy {
    Auto,         // enumeration unless the smooth stream is large, then lattice
    Enumerate,    // ascending smooth-number stream over all q <= Q
    Lattice,      // only q with ||q alpha|| <= C/Q, generated from two consecutive convergents
};

struct ApproxOptions {
    double c_max = 1 << 20;
    SearchStrategy strategy = SearchStrategy::Auto;
};

/// Smallest C in 1, 2, 4, ..., c_max admitting an eps-smooth q in [2, Q] with ||q alpha|| <= C/Q;
/// among those q the smallest is returned. Throws NotFound past c_max.
RationalApprox find_smooth_approx(const QuadIrr& alpha, std::uint64_t Q, double eps, const ApproxOptions& options = {});

inline RationalApprox find_smooth_approx(const QuadIrr& alpha, std::uint64_t Q, double eps, double c_max) {
    return find_smooth_approx(alpha, Q, eps, ApproxOptions{c_max, SearchStrategy::Auto});
}

/// Every q in [2, Q] (any factorization) with ||q alpha|| <= C/Q, ascending, via the convergent lattice.
std::vector<std::uint64_t> close_denominators(const QuadIrr& alpha, std::uint64_t Q, double c);

struct FactorSplit {
    std::uint64_t q = 1;
    std::uint64_t q1 = 1;
    std::uint64_t q2 = 1;
};

/// Multiplies primes of q in ascending order (with multiplicity) into q1 until q1 >= q^target.
/// Throws RangeViolation if q1 ends above q^(target+eps).
FactorSplit greedy_split(const Factorization& fac, const Rational& target, double eps);

inline FactorSplit greedy_split(const Factorization& fac, double eps) {
    return greedy_split(fac, Rational{1, 3}, eps);
}

}  // namespace weyl
