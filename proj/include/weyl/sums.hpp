#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "weyl/fixed_point.hpp"
#include "weyl/quad_irr.hpp"

namespace weyl {

/// Complex sum value with a certified absolute error bound.
struct SumResult {
    std::complex<long double> value{};
    long double err_bound = 0;
    std::uint64_t n_terms = 0;

    long double re() const noexcept { return value.real(); }
    long double im() const noexcept { return value.imag(); }
    long double abs() const noexcept { return std::abs(value); }
};

/// Neumaier-compensated complex accumulator in long double.
class ComplexAccumulator {
public:
    void add(std::complex<long double> z) noexcept {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
    }
    std::complex<long double> value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }
    /// Adds another accumulator's sum and compensation, so only value() rounds.
    void merge(const ComplexAccumulator& o) noexcept {
        add_part(re_, re_c_, o.re_);
        add_part(re_, re_c_, o.re_c_);
        add_part(im_, im_c_, o.im_);
        add_part(im_, im_c_, o.im_c_);
    }

private:
    static void add_part(long double& sum, long double& comp, long double x) noexcept {
        long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

/// e(j / r) for j = 0..r-1, from exact rational turns.
class RootTable {
public:
    explicit RootTable(std::uint64_t r);
    std::uint64_t modulus() const noexcept { return static_cast<std::uint64_t>(roots_.size()); }
    const std::complex<long double>& operator[](std::uint64_t j) const noexcept { return roots_[j]; }

private:
    std::vector<std::complex<long double>> roots_;
};

/// Per-term error of a RootTable entry.
inline constexpr long double kTableError = kUnitRootError;

/// Per-term error of unit_root on a turn rounded to 2^-64 from a phase known to 2^-80:
/// |e(x) - e(y)| <= 2 pi |x - y|.
inline constexpr long double kTermError =
    kUnitRootError + 2 * 3.14159265358979323847L * (0x1p-65L + 0x1p-80L);

struct CompleteSumSpec {
    std::int64_t r = 1;
    std::int64_t u = 0;
    std::int64_t v = 0;
};

/// Sum over integers n with t0 < n <= t1, inside (0, N].
struct IncompleteSumSpec {
    std::int64_t r = 1;
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::int64_t t0 = 0;
    std::int64_t t1 = 0;
    std::int64_t N = 1;
};

/// Chunk length for real-argument Weyl sums; reduction order is fixed by it.
inline constexpr std::uint64_t kWeylChunk = 1 << 16;

/// S_k(alpha, N) = sum_{n<=N} e(alpha n^k) for k in {3, 4}.
SumResult weyl_sum_real(const Alpha& alpha, int k, std::uint64_t N, unsigned threads = 1);

/// Same sum without chunking, for cross-checks.
SumResult weyl_sum_real_single_pass(const Alpha& alpha, int k, std::uint64_t N);

struct WeylScan {
    SumResult total;                   // S_k(alpha, N)
    long double window_max = 0;        // max |S_k(alpha, n)| over window_from <= n <= N
    std::uint64_t window_argmax = 0;
};

/// S_k(alpha, N) plus the running maximum of |partial sums| over [window_from, N].
WeylScan weyl_scan(const Alpha& alpha, int k, std::uint64_t N, std::uint64_t window_from, unsigned threads = 1);

/// S_k(a/q, t) = sum_{n<=t} e_q(a n^k); throws GcdError unless gcd(a, q) = 1.
SumResult weyl_sum_rational_partial(std::int64_t a, std::int64_t q, int k, double t);

/// Sigma(r; u, v) = sum_{n=0}^{r-1} e_r(u n^3 + v n).
SumResult complete_sum(const CompleteSumSpec& spec);
SumResult complete_sum(const CompleteSumSpec& spec, const RootTable& table);

/// Sigma(r1; u s2, v s2) * Sigma(r2; u s1, v s1) with s2 = r2^-1 mod r1, s1 = r1^-1 mod r2.
SumResult complete_sum_crt(std::int64_t r1, std::int64_t r2, std::int64_t u, std::int64_t v);

/// Direct sum of e_r(u n^3 + v n) over t0 < n <= t1.
SumResult incomplete_sum(const IncompleteSumSpec& spec);
SumResult incomplete_sum(const IncompleteSumSpec& spec, const RootTable& table);

/// The same sum through r^-1 sum_{-r/2<m<=r/2} (sum_{n in I} e_r(-mn)) Sigma(r; u, v+m).
SumResult incomplete_via_completion(const IncompleteSumSpec& spec);

struct B2Reduction {
    std::int64_t d = 1;
    std::int64_t r = 1;
    std::int64_t u = 0;
    std::int64_t v = 0;
};

/// d = gcd(q2, c h), r = q2/d, u = c a h/d, v = c a h^3 q1^2/d for multiplier c (4 by default),
/// so that Sigma(q2; c a h, c a h^3 q1^2; I) = Sigma(r; u, v; I) with gcd(r, u) = 1.
B2Reduction reduce_b2(std::int64_t q2, std::int64_t a, std::int64_t h, std::int64_t q1, std::int64_t multiplier = 4);

/// As reduce_b2 with u and v reduced mod r, so no intermediate overflows.
B2Reduction reduce_b2_residues(std::int64_t q2, std::int64_t a, std::int64_t h, std::int64_t q1,
                               std::int64_t multiplier = 4);

}  // namespace weyl
