#include "weyl/sums.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <variant>

#include "weyl/errors.hpp"
#include "weyl/fixed_point.hpp"
#include "weyl/integer.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

namespace {

constexpr std::uint64_t kMaxWeylLength = std::uint64_t{1} << 31;

// Neumaier summation in long double, u = 2^-64: |error| <= u|S| + 2 n u^2 sum|x|. For n <= 2^31
// unit-modulus terms the second part is below n 2^-95.
long double summation_error(std::uint64_t n_terms) {
    return static_cast<long double>(n_terms) * (0x1p-64L + 0x1p-80L);
}

// Phase of the n-th Weyl term as a 64-bit turn.
class WeylPhase {
public:
    WeylPhase(const Alpha& alpha, int k, std::uint64_t N) : k_(k) {
        if (k != 3 && k != 4) throw PreconditionViolated("Weyl sums are implemented for k = 3, 4");
        if (N > kMaxWeylLength) throw PreconditionViolated("N above 2^31");
        if (const auto* rat = std::get_if<Rational>(&alpha)) {
            rational_ = *rat;
        } else {
            // 16 guard bits over the precision policy: phase error per term <= 2^-80.
            mul_.emplace(fixed_point(std::get<QuadIrr>(alpha), required_bits(N, k) + 16));
        }
    }

    std::uint64_t turn(std::uint64_t n) const noexcept {
        if (mul_) {
            u128 m = n;
            for (int i = 1; i < k_; ++i) m *= n;
            return mul_->turn(m);
        }
        const auto q = static_cast<std::uint64_t>(rational_.den);
        std::uint64_t res = pow_mod_u(n, static_cast<std::uint64_t>(k_), q);
        res = mul_mod_u(res, static_cast<std::uint64_t>(mod(rational_.num, rational_.den)), q);
        return rational_turn(res, q);
    }

private:
    int k_;
    Rational rational_{};
    std::optional<FracMultiplier> mul_;
};

ComplexAccumulator chunk_sum(const WeylPhase& phase, std::uint64_t lo, std::uint64_t hi) {
    ComplexAccumulator acc;
    for (std::uint64_t n = lo; n <= hi; ++n) acc.add(unit_root(phase.turn(n)));
    return acc;
}

// Chunks merge in index order with their compensations, so the result is rounded once.
std::complex<long double> merge_all(const std::vector<ComplexAccumulator>& parts) {
    ComplexAccumulator total;
    for (const auto& p : parts) total.merge(p);
    return total.value();
}

SumResult finish(std::complex<long double> value, std::uint64_t n_terms, long double per_term) {
    return {value, static_cast<long double>(n_terms) * per_term + summation_error(n_terms), n_terms};
}

std::int64_t residue(std::int64_t u, std::int64_t v, std::int64_t n, std::int64_t r) {
    std::int64_t nr = mod(n, r);
    std::int64_t cube = mul_mod(mul_mod(nr, nr, r), nr, r);
    return mod(static_cast<i128>(mul_mod(u, cube, r)) + mul_mod(v, nr, r), r);
}

void check_interval(const IncompleteSumSpec& s) {
    if (s.r < 1) throw PreconditionViolated("modulus must be >= 1");
    if (!(0 <= s.t0 && s.t0 <= s.t1 && s.t1 <= s.N))
        throw PreconditionViolated("interval (t0, t1] must lie in (0, N]");
}

}  // namespace

RootTable::RootTable(std::uint64_t r) {
    if (r < 1) throw PreconditionViolated("root table modulus must be >= 1");
    roots_.resize(r);
    for (std::uint64_t j = 0; j < r; ++j) roots_[j] = unit_root_rational(j, r);
}

SumResult weyl_sum_real(const Alpha& alpha, int k, std::uint64_t N, unsigned threads) {
    if (N < 1) throw PreconditionViolated("N must be >= 1");
    const WeylPhase phase(alpha, k, N);
    const std::uint64_t chunks = (N + kWeylChunk - 1) / kWeylChunk;
    std::vector<ComplexAccumulator> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t i) {
        std::uint64_t lo = 1 + i * kWeylChunk;
        parts[i] = chunk_sum(phase, lo, std::min(N, lo + kWeylChunk - 1));
    });
    return finish(merge_all(parts), N, kTermError);
}

SumResult weyl_sum_real_single_pass(const Alpha& alpha, int k, std::uint64_t N) {
    if (N < 1) throw PreconditionViolated("N must be >= 1");
    const WeylPhase phase(alpha, k, N);
    return finish(chunk_sum(phase, 1, N).value(), N, kTermError);
}

WeylScan weyl_scan(const Alpha& alpha, int k, std::uint64_t N, std::uint64_t window_from, unsigned threads) {
    if (N < 1) throw PreconditionViolated("N must be >= 1");
    const WeylPhase phase(alpha, k, N);
    const std::uint64_t chunks = (N + kWeylChunk - 1) / kWeylChunk;
    auto bounds = [&](std::size_t i) {
        std::uint64_t lo = 1 + i * kWeylChunk;
        return std::pair{lo, std::min(N, lo + kWeylChunk - 1)};
    };

    std::vector<ComplexAccumulator> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t i) {
        auto [lo, hi] = bounds(i);
        parts[i] = chunk_sum(phase, lo, hi);
    });

    std::vector<std::complex<long double>> offsets(chunks);
    ComplexAccumulator prefix;
    for (std::size_t i = 0; i < chunks; ++i) {
        offsets[i] = prefix.value();
        prefix.merge(parts[i]);
    }

    std::vector<std::pair<long double, std::uint64_t>> maxima(chunks, {-1.0L, 0});
    parallel_for(chunks, threads, [&](std::size_t i) {
        auto [lo, hi] = bounds(i);
        if (hi < window_from) return;
        ComplexAccumulator acc;
        acc.add(offsets[i]);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            acc.add(unit_root(phase.turn(n)));
            if (n < window_from) continue;
            long double a = std::abs(acc.value());
            if (a > maxima[i].first) maxima[i] = {a, n};
        }
    });

    WeylScan out;
    out.total = finish(merge_all(parts), N, kTermError);
    out.window_max = 0;
    for (const auto& [value, at] : maxima) {
        if (value > out.window_max) {
            out.window_max = value;
            out.window_argmax = at;
        }
    }
    return out;
}

SumResult weyl_sum_rational_partial(std::int64_t a, std::int64_t q, int k, double t) {
    if (q < 1) throw PreconditionViolated("q must be >= 1");
    if (std::gcd(a, q) != 1) throw GcdError("weyl_sum_rational_partial needs gcd(a, q) = 1");
    if (k < 1) throw PreconditionViolated("k must be >= 1");
    if (!(t >= 0)) throw PreconditionViolated("t must be >= 0");
    const auto terms = static_cast<std::uint64_t>(std::floor(t));
    const RootTable table(static_cast<std::uint64_t>(q));
    // n^k mod q is q-periodic in n.
    std::vector<std::int64_t> res(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n) res[n] = mul_mod(mod(a, q), pow_mod(n, k, q), q);
    ComplexAccumulator acc;
    for (std::uint64_t n = 1; n <= terms; ++n) acc.add(table[res[n % q]]);
    return finish(acc.value(), terms, kTableError);
}

SumResult complete_sum(const CompleteSumSpec& spec, const RootTable& table) {
    const std::int64_t r = spec.r;
    if (r < 1) throw PreconditionViolated("modulus must be >= 1");
    const std::int64_t u = mod(spec.u, r), v = mod(spec.v, r);
    ComplexAccumulator acc;
    for (std::int64_t n = 0; n < r; ++n) acc.add(table[residue(u, v, n, r)]);
    return finish(acc.value(), static_cast<std::uint64_t>(r), kTableError);
}

SumResult complete_sum(const CompleteSumSpec& spec) {
    if (spec.r < 1) throw PreconditionViolated("modulus must be >= 1");
    return complete_sum(spec, RootTable(static_cast<std::uint64_t>(spec.r)));
}

SumResult complete_sum_crt(std::int64_t r1, std::int64_t r2, std::int64_t u, std::int64_t v) {
    if (r1 < 1 || r2 < 1) throw PreconditionViolated("moduli must be >= 1");
    if (std::gcd(r1, r2) != 1) throw NotCoprime("complete_sum_crt needs coprime moduli");
    const std::int64_t s2 = *inverse_mod(r2, r1);
    const std::int64_t s1 = *inverse_mod(r1, r2);
    SumResult a = complete_sum({r1, mul_mod(mod(u, r1), s2, r1), mul_mod(mod(v, r1), s2, r1)});
    SumResult b = complete_sum({r2, mul_mod(mod(u, r2), s1, r2), mul_mod(mod(v, r2), s1, r2)});
    SumResult out;
    out.value = a.value * b.value;
    out.n_terms = a.n_terms * b.n_terms;
    out.err_bound = (a.abs() + a.err_bound) * b.err_bound + b.abs() * a.err_bound + out.abs() * 0x1p-62L;
    return out;
}

SumResult incomplete_sum(const IncompleteSumSpec& spec, const RootTable& table) {
    check_interval(spec);
    const std::int64_t r = spec.r;
    const std::int64_t u = mod(spec.u, r), v = mod(spec.v, r);
    ComplexAccumulator acc;
    for (std::int64_t n = spec.t0 + 1; n <= spec.t1; ++n) acc.add(table[residue(u, v, n, r)]);
    return finish(acc.value(), static_cast<std::uint64_t>(spec.t1 - spec.t0), kTableError);
}

SumResult incomplete_sum(const IncompleteSumSpec& spec) {
    check_interval(spec);
    return incomplete_sum(spec, RootTable(static_cast<std::uint64_t>(spec.r)));
}

SumResult incomplete_via_completion(const IncompleteSumSpec& spec) {
    check_interval(spec);
    const std::int64_t r = spec.r;
    const RootTable table(static_cast<std::uint64_t>(r));
    const std::int64_t length = spec.t1 - spec.t0;
    const std::int64_t u = mod(spec.u, r), v = mod(spec.v, r);

    // c_n = e_r(u n^3 + v n); Sigma(r; u, v+m) = sum_n c_n e_r(m n).
    std::vector<std::int64_t> base(static_cast<std::size_t>(r));
    for (std::int64_t n = 0; n < r; ++n) base[n] = residue(u, v, n, r);

    ComplexAccumulator total;
    long double err = 0;
    const std::int64_t m_lo = -((r - 1) / 2);  // smallest m with -r/2 < m
    const std::int64_t m_hi = r / 2;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
        const std::int64_t mr = mod(m, r);
        ComplexAccumulator sigma_acc;
        std::int64_t shift = 0;  // m n mod r
        for (std::int64_t n = 0; n < r; ++n) {
            std::int64_t idx = base[n] + shift;
            if (idx >= r) idx -= r;
            sigma_acc.add(table[idx]);
            shift += mr;
            if (shift >= r) shift -= r;
        }
        const std::complex<long double> sigma = sigma_acc.value();
        const long double sigma_err = static_cast<long double>(r) * kTableError + summation_error(r);

        // Geometric sum over n in (t0, t1] of w^n, w = e_r(-m).
        std::complex<long double> geo;
        long double geo_err;
        if (mr == 0) {
            geo = static_cast<long double>(length);
            geo_err = 0;
        } else {
            const std::int64_t neg = r - mr;
            const auto& start = table[mul_mod(neg, spec.t0 + 1, r)];
            const auto& w_len = table[mul_mod(neg, length, r)];
            const auto& w = table[neg];
            const std::complex<long double> num = start * (1.0L - w_len);
            const std::complex<long double> den = 1.0L - w;
            geo = num / den;
            const long double den_abs = std::abs(den);
            const long double e_num = 4 * kTableError, e_den = kTableError;
            geo_err = (e_num + std::abs(geo) * e_den) / (den_abs - e_den) + std::abs(geo) * 0x1p-60L;
        }
        total.add(geo * sigma);
        err += std::abs(geo) * sigma_err + geo_err * (std::abs(sigma) + sigma_err) + std::abs(geo * sigma) * 0x1p-62L;
    }
    SumResult out;
    out.value = total.value() / static_cast<long double>(r);
    out.n_terms = static_cast<std::uint64_t>(length);
    out.err_bound = err / static_cast<long double>(r) + summation_error(static_cast<std::uint64_t>(r)) *
                                                           (static_cast<long double>(length) + 1);
    return out;
}

B2Reduction reduce_b2(std::int64_t q2, std::int64_t a, std::int64_t h, std::int64_t q1, std::int64_t multiplier) {
    if (q2 < 1 || h < 1 || q1 < 1 || multiplier < 1) throw PreconditionViolated("reduce_b2 needs positive q2, h, q1");
    if (std::gcd(a, q2) != 1) throw PreconditionViolated("reduce_b2 needs gcd(a, q2) = 1");
    const std::int64_t ch = checked_mul(multiplier, h);
    B2Reduction out;
    out.d = std::gcd(q2, ch);
    out.r = q2 / out.d;
    out.u = checked_mul(a, ch / out.d);
    out.v = checked_mul(checked_mul(out.u, checked_mul(h, h)), checked_mul(q1, q1));
    return out;
}

B2Reduction reduce_b2_residues(std::int64_t q2, std::int64_t a, std::int64_t h, std::int64_t q1,
                               std::int64_t multiplier) {
    if (q2 < 1 || h < 1 || q1 < 1 || multiplier < 1) throw PreconditionViolated("reduce_b2 needs positive q2, h, q1");
    if (std::gcd(a, q2) != 1) throw PreconditionViolated("reduce_b2 needs gcd(a, q2) = 1");
    const std::int64_t ch = checked_mul(multiplier, h);
    B2Reduction out;
    out.d = std::gcd(q2, ch);
    out.r = q2 / out.d;
    out.u = mul_mod(mod(a, out.r), mod(ch / out.d, out.r), out.r);
    out.v = mul_mod(out.u, mul_mod(mul_mod(h, h, out.r), mul_mod(q1, q1, out.r), out.r), out.r);
    return out;
}

}  // namespace weyl
