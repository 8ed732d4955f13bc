#include "weyl/quad_irr.hpp"

#include <cmath>
#include <regex>
#include <string>
#include <unordered_map>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// Sign of m*sqrt(d) - c for m >= 0. Never zero when m > 0 since d is not a square.
int compare_root(const BigInt& m, std::int64_t d, const BigRational& c) {
    if (m == 0) return c > 0 ? -1 : (c < 0 ? 1 : 0);
    if (c < 0) return 1;
    BigRational lhs(m * m * d);
    return lhs < c * c ? -1 : 1;
}

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("quadratic irrational state overflow");
    return static_cast<std::int64_t>(v);
}

struct StateHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& s) const noexcept {
        auto h = static_cast<std::uint64_t>(s.first) * 0x9E3779B97F4A7C15ull;
        return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(s.second) + 0x7F4A7C159E3779B9ull + (h << 6)));
    }
};

}  // namespace

QuadIrr::QuadIrr(std::int64_t p, std::int64_t d, std::int64_t q) : p_(p), d_(d), q_(q) {
    if (d <= 0) throw PreconditionViolated("radicand must be positive");
    if (is_perfect_square(static_cast<std::uint64_t>(d)))
        throw PreconditionViolated("radicand " + std::to_string(d) + " is a perfect square");
    if (q == 0) throw PreconditionViolated("denominator must be nonzero");
    i128 diff = static_cast<i128>(d) - static_cast<i128>(p) * p;
    if (diff % q != 0) {
        std::int64_t aq = q < 0 ? -q : q;
        p_ = checked_mul(p, aq);
        d_ = checked_mul(checked_mul(d, q), q);
        q_ = checked_mul(q, aq);
    }
}

long double QuadIrr::approx() const noexcept {
    return (static_cast<long double>(p_) + std::sqrt(static_cast<long double>(d_))) / q_;
}

BigInt QuadIrr::floor_multiple(const BigInt& m) const {
    if (m == 0) return 0;
    if (m < 0) return -floor_multiple(-m) - 1;
    BigInt s = boost::multiprecision::sqrt(BigInt(m * m * d_));
    if (q_ > 0) return floor_div(m * p_ + s, BigInt(q_));
    return floor_div(-m * p_ - s - 1, BigInt(-q_));
}

BigInt QuadIrr::nearest_multiple(const BigInt& m) const {
    BigInt f = floor_multiple(m);
    BigInt f2 = floor_multiple(2 * m);
    return f2 == 2 * f + 1 ? f + 1 : f;
}

bool QuadIrr::within(const BigInt& m_in, const BigInt& a_in, const BigRational& bound) const {
    if (bound < 0) return false;
    BigInt m = m_in, a = a_in;
    if (m < 0) {
        m = -m;
        a = -a;
    }
    // |m*alpha - a| = |X + m*sqrt(D)| / |Q| with X = mP - aQ.
    BigInt x = m * p_ - a * q_;
    BigRational r = bound * (q_ < 0 ? -q_ : q_);
    bool upper = compare_root(m, d_, r - BigRational(x)) <= 0;
    bool lower = compare_root(m, d_, -r - BigRational(x)) >= 0;
    return upper && lower;
}

BigRational QuadIrr::abs_diff_upper(const BigInt& m_in, const BigInt& a_in, int bits) const {
    BigInt m = m_in, a = a_in;
    if (m < 0) {
        m = -m;
        a = -a;
    }
    BigInt scale = BigInt(1) << bits;
    BigInt s = boost::multiprecision::sqrt(BigInt(m * m * d_ * scale * scale));
    BigInt x = (m * p_ - a * q_) * scale;
    BigInt lo = x + s;
    BigInt hi = x + s + (m == 0 ? 0 : 1);
    BigInt mag = boost::multiprecision::abs(lo) > boost::multiprecision::abs(hi) ? boost::multiprecision::abs(lo)
                                                                                 : boost::multiprecision::abs(hi);
    return BigRational(mag, scale * (q_ < 0 ? -q_ : q_));
}

std::string QuadIrr::to_string() const {
    return "(" + std::to_string(p_) + "+sqrt(" + std::to_string(d_) + "))/" + std::to_string(q_);
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw PreconditionViolated("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::string Rational::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

QuadIrr parse_quad_irr(std::string_view text) {
    static const std::regex full(R"(^\s*\(\s*([+-]?\d+)\s*([+-])\s*sqrt\s*\(\s*(\d+)\s*\)\s*\)\s*/\s*([+-]?\d+)\s*$)");
    static const std::regex affine(R"(^\s*([+-]?\d+)\s*([+-])\s*sqrt\s*\(\s*(\d+)\s*\)\s*$)");
    static const std::regex bare(R"(^\s*sqrt\s*\(\s*(\d+)\s*\)\s*(?:/\s*([+-]?\d+))?\s*$)");
    std::string s(text);
    std::smatch m;
    try {
        if (std::regex_match(s, m, full) || std::regex_match(s, m, affine)) {
            std::int64_t p = std::stoll(m[1]);
            std::int64_t d = std::stoll(m[3]);
            std::int64_t q = m.size() > 4 && m[4].matched ? std::stoll(m[4]) : 1;
            // (P - sqrt D)/Q == (-P + sqrt D)/(-Q)
            if (m[2] == "-") return QuadIrr(-p, d, -q);
            return QuadIrr(p, d, q);
        }
        if (std::regex_match(s, m, bare)) {
            std::int64_t d = std::stoll(m[1]);
            std::int64_t q = m[2].matched ? std::stoll(m[2]) : 1;
            return QuadIrr(0, d, q);
        }
    } catch (const std::out_of_range&) {
        throw ParseError("integer out of range in '" + s + "'");
    } catch (const PreconditionViolated& e) {
        throw ParseError("'" + s + "': " + e.what());
    }
    throw ParseError("not a quadratic irrational: '" + s + "'");
}

Alpha parse_alpha(std::string_view text) {
    static const std::regex rational(R"(^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$)");
    std::string s(text);
    std::smatch m;
    if (std::regex_match(s, m, rational)) {
        try {
            std::int64_t num = std::stoll(m[1]);
            std::int64_t den = m[2].matched ? std::stoll(m[2]) : 1;
            return Rational::make(num, den);
        } catch (const std::out_of_range&) {
            throw ParseError("integer out of range in '" + s + "'");
        } catch (const PreconditionViolated& e) {
            throw ParseError("'" + s + "': " + e.what());
        }
    }
    return parse_quad_irr(text);
}

std::string to_string(const Alpha& alpha) {
    return std::visit([](const auto& a) { return a.to_string(); }, alpha);
}

std::int64_t CfExpansion::quotient(std::size_t i) const {
    if (i < head.size()) return head[i];
    return cycle[(i - head.size()) % cycle.size()];
}

CfExpansion cf_expand(const QuadIrr& alpha, std::size_t count) {
    const std::int64_t d = alpha.d();
    const auto root = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d)));
    std::int64_t p = alpha.p();
    std::int64_t q = alpha.q();

    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::size_t, StateHash> seen;
    std::vector<std::int64_t> all;
    CfExpansion out;
    for (;;) {
        auto [it, inserted] = seen.emplace(std::make_pair(p, q), all.size());
        if (!inserted) {
            out.preperiod = it->second;
            out.period = all.size() - it->second;
            break;
        }
        std::int64_t a = q > 0 ? weyl::floor_div(checked_add(p, root), q)
                               : weyl::floor_div(checked_add(-p, -root - 1), -q);
        all.push_back(a);
        std::int64_t p_next = narrow(static_cast<i128>(a) * q - p);
        i128 num = static_cast<i128>(d) - static_cast<i128>(p_next) * p_next;
        if (num % q != 0) throw std::logic_error("continued fraction state lost normalization");
        q = narrow(num / q);
        p = p_next;
    }
    out.head.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(out.preperiod));
    out.cycle.assign(all.begin() + static_cast<std::ptrdiff_t>(out.preperiod), all.end());
    out.quotients.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.quotients.push_back(out.quotient(i));
    return out;
}

std::vector<Convergent> convergents(const QuadIrr& alpha, std::int64_t q_limit) {
    if (q_limit < 1) throw PreconditionViolated("q_limit must be >= 1");
    CfExpansion cf = cf_expand(alpha, 0);
    std::vector<Convergent> out;
    std::int64_t p_prev = 1, p_prev2 = 0;
    std::int64_t q_prev = 0, q_prev2 = 1;
    for (std::size_t n = 0;; ++n) {
        std::int64_t a = cf.quotient(n);
        std::int64_t pn = checked_add(checked_mul(a, p_prev), p_prev2);
        std::int64_t qn = checked_add(checked_mul(a, q_prev), q_prev2);
        if (qn > q_limit) break;
        out.push_back({n, pn, qn});
        p_prev2 = p_prev;
        p_prev = pn;
        q_prev2 = q_prev;
        q_prev = qn;
    }
    return out;
}

}  // namespace weyl
