#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "weyl/approx.hpp"
#include "weyl/bounds.hpp"
#include "weyl/quad_irr.hpp"

namespace weyl {

struct ExperimentConfig {
    std::string alpha = "sqrt(2)";
    int k = 4;
    std::vector<std::uint64_t> grid;   // strictly increasing
    double eps = 0.25;                 // smoothness exponent for the denominator search
    double c_max = 1 << 20;
    BoundParams bounds{};
    std::string output;                // path prefix; empty means no files
    unsigned threads = 1;
    std::uint64_t seed = 20240101;
    bool record_timing = true;         // false writes wall_time_ms = 0 for byte-stable output

    void validate() const;
};

/// A decimal or a fraction "a/b".
double parse_number(std::string_view text);

/// Flat key=value text; '#' starts a comment. Keys: alpha, k, grid (comma list),
/// grid_dyadic (lo,hi exponents), eps, cmax, bound_eps, theorem2_constant, output, threads, seed, timing.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ScalingRecord {
    std::uint64_t N = 0;
    double absS4 = 0;
    double classical_bound = 0;
    double new_bound = 0;
    std::uint64_t q = 1, q1 = 1, q2 = 1;
    double C_used = 0;
    double wall_time_ms = 0;
    // Not part of the CSV columns.
    std::int64_t a = 0;
    double delta_bound = 0;
    double envelope = 0;   // max |S_k(alpha, n)| over N/2 < n <= N

    friend bool operator==(const ScalingRecord&, const ScalingRecord&) = default;
};

/// Q = N^2, smooth approximation, greedy split with target 1/3, then |S_4|, the Theorem-2-shaped
/// bound and the classical bound. Throws NotFound or SplitTooLarge (2 q1 > N).
ScalingRecord run_pipeline(const QuadIrr& alpha, std::uint64_t N, double eps, double c_max,
                           const BoundParams& bounds = {}, unsigned threads = 1);

/// Scaling record for any argument; rational alpha = a/q uses itself with q1 = 1, q2 = q, C_used = 0.
ScalingRecord scaling_point(const Alpha& alpha, int k, std::uint64_t N, double eps, double c_max,
                            const BoundParams& bounds, unsigned threads = 1);

struct Lemma1Instance {
    std::vector<double> inner_max_sums;   // max_I |inner sum| for h = 1..N/(2 q1)
    double rhs = 0;                       // lemma1_rhs(delta_bound, N, q1, inner_max_sums)
    double ratio = 0;                     // absS4^2 / rhs
};

/// Both sides of the first van der Corput step for a pipeline record (q1 >= 1, 2 q1 <= N).
Lemma1Instance lemma1_instance(const ScalingRecord& rec);

struct ScalingRun {
    std::vector<ScalingRecord> records;
    double slope = 0;          // least-squares slope of log envelope against log N
    bool major_arc = false;    // slope >= 0.9
};

double fit_slope(const std::vector<ScalingRecord>& records);

ScalingRun run_scaling(const ExperimentConfig& config);

enum class EmitFormat { Csv, Json, GnuplotDat };

std::string format_records(const std::vector<ScalingRecord>& records, EmitFormat format);
void emit(const std::vector<ScalingRecord>& records, EmitFormat format, const std::filesystem::path& path);
std::vector<ScalingRecord> parse_records_json(std::string_view text);
std::vector<ScalingRecord> load_records_json(const std::filesystem::path& path);

inline constexpr std::string_view kCsvHeader = "N,absS4,classical_bound,new_bound,q,q1,q2,C_used,wall_time_ms";

}  // namespace weyl
