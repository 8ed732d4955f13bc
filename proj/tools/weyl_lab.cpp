// weyl-lab: command-line front end for the quartic Weyl sum library.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "weyl/approx.hpp"
#include "weyl/errors.hpp"
#include "weyl/experiment.hpp"
#include "weyl/parallel.hpp"
#include "weyl/sums.hpp"
#include "weyl/verify.hpp"

using nlohmann::json;

namespace {

double since_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

json sum_json(const weyl::SumResult& s, double wall_ms) {
    return {{"re", static_cast<double>(s.re())},
            {"im", static_cast<double>(s.im())},
            {"abs", static_cast<double>(s.abs())},
            {"err_bound", static_cast<double>(s.err_bound)},
            {"n_terms", s.n_terms},
            {"wall_time_ms", wall_ms}};
}

json record_json(const weyl::ScalingRecord& r) {
    return {{"N", r.N},
            {"absS4", r.absS4},
            {"classical_bound", r.classical_bound},
            {"new_bound", r.new_bound},
            {"q", r.q},
            {"q1", r.q1},
            {"q2", r.q2},
            {"a", r.a},
            {"C_used", r.C_used},
            {"delta_bound", r.delta_bound},
            {"wall_time_ms", r.wall_time_ms}};
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quartic Weyl sum laboratory"};
    app.require_subcommand(1);
    int exit_code = 0;

    // approx
    std::string alpha_text = "sqrt(2)";
    std::uint64_t Q = 0;
    std::string eps_text = "0.25";
    double c_max = 1 << 20;
    auto* approx = app.add_subcommand("approx", "smooth-denominator rational approximation");
    approx->add_option("--alpha", alpha_text, "quadratic irrational, e.g. sqrt(2) or (1+sqrt(5))/2")->required();
    approx->add_option("--Q", Q, "denominator bound")->required()->check(CLI::PositiveNumber);
    approx->add_option("--eps", eps_text, "smoothness exponent, decimal or a/b")->required();
    approx->add_option("--cmax", c_max, "largest admissible C")->capture_default_str();
    approx->callback([&] {
        const weyl::RationalApprox r = weyl::find_smooth_approx(weyl::parse_quad_irr(alpha_text), Q,
                                                                  weyl::parse_number(eps_text), c_max);
        print({{"a", r.a},
               {"q", r.q},
               {"factorization", r.factorization.to_string()},
               {"C_used", r.c_used},
               {"delta_bound", r.delta()},
               {"q_over_Q", r.q_over_Q()}});
    });

    // wsum
    int k = 4;
    std::uint64_t N = 0;
    unsigned threads = 0;
    auto* wsum = app.add_subcommand("wsum", "S_k(alpha, N) = sum_{n<=N} e(alpha n^k)");
    wsum->add_option("--alpha", alpha_text, "quadratic irrational or rational a/b")->required();
    wsum->add_option("--k", k, "degree, 3 or 4")->capture_default_str()->check(CLI::IsMember({3, 4}));
    wsum->add_option("--N", N, "length")->required();
    wsum->add_option("--threads", threads, "worker threads (default: WEYL_THREADS or 1)");
    wsum->callback([&] {
        const auto start = std::chrono::steady_clock::now();
        const weyl::SumResult s =
            weyl::weyl_sum_real(weyl::parse_alpha(alpha_text), k, N, threads ? threads : weyl::thread_count(1));
        print(sum_json(s, since_ms(start)));
    });

    // csum
    std::int64_t r = 0, u = 0, v = 0;
    std::optional<std::int64_t> t0, t1;
    auto* csum = app.add_subcommand("csum", "cubic sum over n mod r of e_r(u n^3 + v n), optionally over (t0, t1]");
    csum->add_option("--r", r, "modulus")->required()->check(CLI::PositiveNumber);
    csum->add_option("--u", u, "cubic coefficient")->required();
    csum->add_option("--v", v, "linear coefficient")->required();
    csum->add_option("--t0", t0, "interval start (exclusive)");
    csum->add_option("--t1", t1, "interval end (inclusive)");
    csum->callback([&] {
        const auto start = std::chrono::steady_clock::now();
        if (t0.has_value() != t1.has_value()) throw CLI::ValidationError("--t0 and --t1 go together");
        weyl::SumResult s;
        if (t0) {
            const std::int64_t len = std::max<std::int64_t>(*t1, 1);
            s = weyl::incomplete_sum({r, u, v, *t0, *t1, len});
        } else {
            s = weyl::complete_sum({r, u, v});
        }
        print(sum_json(s, since_ms(start)));
    });

    // verify
    std::string suite = "all";
    std::uint64_t seed = weyl::kDefaultSeed;
    bool brief = false;
    auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
    std::vector<std::string> choices = weyl::suite_names();
    choices.push_back("all");
    verify->add_option("--suite", suite, "suite name or 'all'")->capture_default_str()->check(CLI::IsMember(choices));
    verify->add_option("--seed", seed, "random seed")->capture_default_str();
    verify->add_flag("--brief", brief, "omit per-case records");
    verify->callback([&] {
        const std::vector<std::string> run =
            suite == "all" ? weyl::suite_names() : std::vector<std::string>{suite};
        json out = json::array();
        bool all_pass = true;
        for (const auto& name : run) {
            const weyl::SuiteReport rep = weyl::run_suite(name, seed);
            json j = rep.to_json();
            if (brief) j.erase("cases");
            out.push_back(std::move(j));
            all_pass = all_pass && rep.passed();
        }
        print({{"pass", all_pass}, {"suites", out}});
        if (!all_pass) exit_code = 1;
    });

    // pipeline
    double bound_eps = weyl::BoundParams{}.eps;
    auto* pipeline = app.add_subcommand("pipeline", "approximation, split, |S_4| and both bounds for one N");
    pipeline->add_option("--alpha", alpha_text, "quadratic irrational")->capture_default_str();
    pipeline->add_option("--N", N, "length")->required();
    pipeline->add_option("--eps", eps_text, "smoothness exponent, decimal or a/b")->capture_default_str();
    pipeline->add_option("--cmax", c_max, "largest admissible C")->capture_default_str();
    pipeline->add_option("--bound-eps", bound_eps, "epsilon in the bound expressions")->capture_default_str();
    pipeline->add_option("--threads", threads, "worker threads (default: WEYL_THREADS or 1)");
    pipeline->callback([&] {
        weyl::BoundParams bounds;
        bounds.eps = bound_eps;
        const weyl::ScalingRecord rec = weyl::scaling_point(weyl::parse_alpha(alpha_text), 4, N, weyl::parse_number(eps_text), c_max, bounds,
                                                            threads ? threads : weyl::thread_count(1));
        json j = record_json(rec);
        const bool ok = rec.absS4 <= static_cast<double>(N) && rec.absS4 <= rec.new_bound;
        j["within_bound"] = ok;
        print(j);
        if (!ok) exit_code = 1;
    });

    // scale
    std::string config_path;
    auto* scale = app.add_subcommand("scale", "dyadic scaling experiment from a key=value config");
    scale->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
    scale->callback([&] {
        weyl::ExperimentConfig cfg = weyl::load_config(config_path);
        if (std::getenv("WEYL_THREADS")) cfg.threads = weyl::thread_count(cfg.threads);
        const weyl::ScalingRun run = weyl::run_scaling(cfg);
        bool ok = true;
        for (const auto& rec : run.records)
            ok = ok && rec.absS4 <= static_cast<double>(rec.N) && rec.absS4 <= rec.new_bound;
        json recs = json::array();
        for (const auto& rec : run.records) recs.push_back(record_json(rec));
        print({{"records", recs},
               {"slope", run.slope},
               {"major_arc", run.major_arc},
               {"within_bound", ok},
               {"output", cfg.output}});
        if (!ok) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const weyl::Error& e) {
        std::cerr << "weyl-lab: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "weyl-lab: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
