#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "weyl/bounds.hpp"

namespace weyl {

/// Outcome of one verification suite; `cases` holds one JSON object per checked case
/// (or per aggregated group for the large sweeps).
struct SuiteReport {
    std::string name;
    std::vector<nlohmann::json> cases;
    std::size_t checked = 0;
    std::size_t failures = 0;
    double elapsed_ms = 0;
    nlohmann::json summary = nlohmann::json::object();

    bool passed() const noexcept { return failures == 0 && checked > 0; }
    nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240101;

/// Completion identity against direct summation: |direct - completed| <= 1e-9.
SuiteReport verify_completion(std::uint64_t seed = kDefaultSeed, int count = 500, std::int64_t r_max = 1000);

/// Sigma(q2; 4ah, 4ah^3 q1^2; I) = Sigma(r; u, v; I) on three intervals per tuple, gcd(r, u) = 1.
SuiteReport verify_b2(std::uint64_t seed = kDefaultSeed, int count = 200, std::int64_t q2_max = 10000);

/// Explicit-constant A-process inequality on random tuples (a, q <= 10^4, q1 | q, N <= 10^3).
SuiteReport verify_aprocess(std::uint64_t seed = kDefaultSeed, int count = 100);

/// complete_sum_crt against complete_sum on coprime pairs with r1 r2 <= product_max.
SuiteReport verify_crt(std::uint64_t seed = kDefaultSeed, int count = 200, std::int64_t product_max = 10000);

struct HuaOptions {
    std::int64_t weil_prime_max = 2000;
    int weil_samples = 20;
    std::int64_t hua_r_max = 3000;
    int hua_samples = 10;
    BoundConstants constants{};
};

/// Weil bound on primes, and the two Hua shapes with the frozen constants.
SuiteReport verify_hua(std::uint64_t seed = kDefaultSeed, const HuaOptions& options = {});

/// Exhaustive gcd-power sum inequality for q2 <= q2_max, X <= x_max.
SuiteReport verify_gcdsum(std::uint64_t q2_max = 500, std::uint64_t x_max = 200);

/// Exponent calculator: addendum exponent at (4, 3), classical exponent, optimal s for 3 <= k <= 12.
SuiteReport verify_addendum();

/// Names accepted by run_suite, in run order for "all".
const std::vector<std::string>& suite_names();

SuiteReport run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

}  // namespace weyl
