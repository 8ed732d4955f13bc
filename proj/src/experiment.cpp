#include "weyl/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "weyl/aprocess.hpp"
#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"
#include "weyl/sums.hpp"

namespace weyl {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("config key '" + key + "': expected an unsigned integer, got '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        return parse_number(value);
    } catch (const ParseError& e) {
        throw ParseError("config key '" + key + "': " + e.what());
    }
}

}  // namespace

double parse_number(std::string_view text) {
    const std::string value = trim(text);
    if (auto slash = value.find('/'); slash != std::string::npos) {
        const double num = parse_number(value.substr(0, slash));
        const double den = parse_number(value.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + value + "'");
        return num / den;
    }
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a real number, got '" + value + "'");
    }
}

void ExperimentConfig::validate() const {
    parse_alpha(alpha);
    if (k != 4) throw PreconditionViolated("scaling runs are quartic: k must be 4");
    if (grid.empty()) throw PreconditionViolated("empty N grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw PreconditionViolated("N grid must be strictly increasing");
    if (!(eps > 0 && eps < 1)) throw PreconditionViolated("eps must lie in (0, 1)");
    if (!(bounds.eps > 0 && bounds.eps < 1)) throw PreconditionViolated("bound_eps must lie in (0, 1)");
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "alpha") {
            cfg.alpha = value;
        } else if (key == "k") {
            cfg.k = static_cast<int>(parse_u64(key, value));
        } else if (key == "grid") {
            cfg.grid.clear();
            for (const auto& item : split(value, ',')) cfg.grid.push_back(parse_u64(key, item));
        } else if (key == "grid_dyadic") {
            auto parts = split(value, ',');
            if (parts.size() != 2) throw ParseError("grid_dyadic expects 'lo,hi' exponents");
            std::uint64_t lo = parse_u64(key, parts[0]), hi = parse_u64(key, parts[1]);
            if (hi > 31 || lo > hi) throw ParseError("grid_dyadic exponents must satisfy lo <= hi <= 31");
            cfg.grid.clear();
            for (std::uint64_t e = lo; e <= hi; ++e) cfg.grid.push_back(std::uint64_t{1} << e);
        } else if (key == "eps") {
            cfg.eps = parse_real(key, value);
        } else if (key == "cmax") {
            cfg.c_max = parse_real(key, value);
        } else if (key == "bound_eps") {
            cfg.bounds.eps = parse_real(key, value);
        } else if (key == "theorem2_constant") {
            cfg.bounds.constants.theorem2 = parse_real(key, value);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(parse_u64(key, value));
        } else if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else if (key == "timing") {
            if (value != "on" && value != "off") throw ParseError("timing must be 'on' or 'off'");
            cfg.record_timing = value == "on";
        } else {
            throw ParseError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ScalingRecord run_pipeline(const QuadIrr& alpha, std::uint64_t N, double eps, double c_max, const BoundParams& bounds,
                           unsigned threads) {
    if (N < 16) throw PreconditionViolated("run_pipeline needs N >= 16");
    if (N > (std::uint64_t{1} << 31)) throw PreconditionViolated("run_pipeline needs N <= 2^31");
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t Q = N * N;
    const RationalApprox approx = find_smooth_approx(alpha, Q, eps, c_max);
    const FactorSplit split = greedy_split(approx.factorization, Rational{1, 3}, eps);
    if (2 * split.q1 > N)
        throw SplitTooLarge("2 q1 = " + std::to_string(2 * split.q1) + " exceeds N = " + std::to_string(N) +
                            " (q = " + std::to_string(split.q) + ")");

    const WeylScan scan = weyl_scan(Alpha{alpha}, 4, N, N / 2 + 1, threads);
    ScalingRecord rec;
    rec.N = N;
    rec.absS4 = static_cast<double>(scan.total.abs());
    rec.envelope = static_cast<double>(scan.window_max);
    rec.q = split.q;
    rec.q1 = split.q1;
    rec.q2 = split.q2;
    rec.a = approx.a;
    rec.C_used = approx.c_used;
    rec.delta_bound = approx.delta();
    rec.new_bound = theorem2_bound(bounds, N, split.q, split.q1, split.q2, rec.delta_bound);
    rec.classical_bound = weyl_classical_bound(4, N, bounds.eps);
    rec.wall_time_ms = elapsed_ms(start);
    return rec;
}

ScalingRecord scaling_point(const Alpha& alpha, int k, std::uint64_t N, double eps, double c_max,
                            const BoundParams& bounds, unsigned threads) {
    if (k != 4) throw PreconditionViolated("scaling records are quartic");
    if (const auto* qi = std::get_if<QuadIrr>(&alpha)) return run_pipeline(*qi, N, eps, c_max, bounds, threads);

    const auto start = std::chrono::steady_clock::now();
    const Rational r = std::get<Rational>(alpha);
    const WeylScan scan = weyl_scan(alpha, 4, N, N / 2 + 1, threads);
    ScalingRecord rec;
    rec.N = N;
    rec.absS4 = static_cast<double>(scan.total.abs());
    rec.envelope = static_cast<double>(scan.window_max);
    rec.q = static_cast<std::uint64_t>(r.den);
    rec.q1 = 1;
    rec.q2 = rec.q;
    rec.a = r.num;
    rec.C_used = 0;
    rec.delta_bound = 0;
    rec.new_bound = theorem2_bound(bounds, N, rec.q, 1, rec.q, 0.0);
    rec.classical_bound = weyl_classical_bound(4, N, bounds.eps);
    rec.wall_time_ms = elapsed_ms(start);
    return rec;
}

Lemma1Instance lemma1_instance(const ScalingRecord& rec) {
    if (rec.q1 < 1 || rec.q1 * rec.q2 != rec.q) throw PreconditionViolated("lemma1_instance needs q = q1 q2");
    if (2 * rec.q1 > rec.N) throw PreconditionViolated("lemma1_instance needs 2 q1 <= N");
    const auto N = static_cast<std::int64_t>(rec.N);
    const auto q1 = static_cast<std::int64_t>(rec.q1), q2 = static_cast<std::int64_t>(rec.q2);
    Lemma1Instance out;
    for (std::int64_t h = 1; h <= N / (2 * q1); ++h) {
        const B2Reduction red = reduce_b2_residues(q2, rec.a, h, q1, kDifferencingCoefficient);
        out.inner_max_sums.push_back(max_subinterval_sum(red.r, red.u, red.v, N));
    }
    out.rhs = lemma1_rhs(rec.delta_bound, rec.N, rec.q1, out.inner_max_sums);
    out.ratio = rec.absS4 * rec.absS4 / out.rhs;
    return out;
}

double fit_slope(const std::vector<ScalingRecord>& records) {
    if (records.size() < 2) throw PreconditionViolated("slope fit needs at least two records");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(records.size());
    for (const auto& r : records) {
        double x = std::log(static_cast<double>(r.N));
        double y = std::log(r.envelope);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingRun run_scaling(const ExperimentConfig& config) {
    config.validate();
    if (config.grid.size() < 4) throw PreconditionViolated("run_scaling needs at least 4 grid points");
    const Alpha alpha = parse_alpha(config.alpha);
    ScalingRun run;
    run.records.resize(config.grid.size());
    parallel_for(config.grid.size(), config.threads, [&](std::size_t i) {
        run.records[i] = scaling_point(alpha, config.k, config.grid[i], config.eps, config.c_max, config.bounds, 1);
        if (!config.record_timing) run.records[i].wall_time_ms = 0;
    });
    run.slope = fit_slope(run.records);
    run.major_arc = run.slope >= 0.9;
    if (!config.output.empty()) {
        emit(run.records, EmitFormat::Csv, config.output + ".csv");
        emit(run.records, EmitFormat::Json, config.output + ".json");
        emit(run.records, EmitFormat::GnuplotDat, config.output + ".dat");
    }
    return run;
}

std::string format_records(const std::vector<ScalingRecord>& records, EmitFormat format) {
    if (records.empty()) throw PreconditionViolated("nothing to emit");
    std::ostringstream out;
    switch (format) {
        case EmitFormat::Csv:
            out << kCsvHeader << '\n';
            for (const auto& r : records)
                out << r.N << ',' << fmt_double(r.absS4) << ',' << fmt_double(r.classical_bound) << ','
                    << fmt_double(r.new_bound) << ',' << r.q << ',' << r.q1 << ',' << r.q2 << ','
                    << fmt_double(r.C_used) << ',' << fmt_double(r.wall_time_ms) << '\n';
            break;
        case EmitFormat::GnuplotDat:
            out << "# N absS4 classical_bound new_bound q q1 q2 C_used wall_time_ms\n";
            for (const auto& r : records)
                out << r.N << ' ' << fmt_double(r.absS4) << ' ' << fmt_double(r.classical_bound) << ' '
                    << fmt_double(r.new_bound) << ' ' << r.q << ' ' << r.q1 << ' ' << r.q2 << ' '
                    << fmt_double(r.C_used) << ' ' << fmt_double(r.wall_time_ms) << '\n';
            break;
        case EmitFormat::Json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : records)
                arr.push_back({{"N", r.N},
                               {"absS4", r.absS4},
                               {"classical_bound", r.classical_bound},
                               {"new_bound", r.new_bound},
                               {"q", r.q},
                               {"q1", r.q1},
                               {"q2", r.q2},
                               {"C_used", r.C_used},
                               {"wall_time_ms", r.wall_time_ms},
                               {"a", r.a},
                               {"delta_bound", r.delta_bound},
                               {"envelope", r.envelope}});
            out << arr.dump(2) << '\n';
            break;
        }
    }
    return out.str();
}

void emit(const std::vector<ScalingRecord>& records, EmitFormat format, const std::filesystem::path& path) {
    const std::string text = format_records(records, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<ScalingRecord> parse_records_json(std::string_view text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("records JSON: ") + e.what());
    }
    std::vector<ScalingRecord> out;
    for (const auto& j : arr) {
        ScalingRecord r;
        r.N = j.at("N").get<std::uint64_t>();
        r.absS4 = j.at("absS4").get<double>();
        r.classical_bound = j.at("classical_bound").get<double>();
        r.new_bound = j.at("new_bound").get<double>();
        r.q = j.at("q").get<std::uint64_t>();
        r.q1 = j.at("q1").get<std::uint64_t>();
        r.q2 = j.at("q2").get<std::uint64_t>();
        r.C_used = j.at("C_used").get<double>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        r.a = j.value("a", std::int64_t{0});
        r.delta_bound = j.value("delta_bound", 0.0);
        r.envelope = j.value("envelope", 0.0);
        out.push_back(r);
    }
    return out;
}

std::vector<ScalingRecord> load_records_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_records_json(ss.str());
}

}  // namespace weyl
