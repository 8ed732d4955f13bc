#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/experiment.hpp"

using namespace weyl;
namespace fs = std::filesystem;

namespace {

ScalingRecord sample_record() {
    ScalingRecord r;
    r.N = 256;
    r.absS4 = 19.681020340788752;
    r.classical_bound = 135.29830919185670;
    r.new_bound = 1282.2086491257790;
    r.q = 13860;
    r.q1 = 36;
    r.q2 = 385;
    r.C_used = 2;
    r.wall_time_ms = 0;
    r.a = 19601;
    r.delta_bound = 1.8404691647625248e-09;
    r.envelope = 19.681020340788752;
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

fs::path temp_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("weyl_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_config(
        "# scaling run\n"
        "alpha = (1+sqrt(5))/2\n"
        "grid_dyadic = 8, 12   # inclusive\n"
        "eps = 1/7\n"
        "cmax = 1e9\n"
        "bound_eps = 0.02\n"
        "threads = 3\n"
        "seed = 7\n"
        "timing = off\n"
        "output = /tmp/x\n");
    CHECK(c.alpha == "(1+sqrt(5))/2");
    CHECK(c.grid == std::vector<std::uint64_t>{256, 512, 1024, 2048, 4096});
    CHECK(c.eps == doctest::Approx(1.0 / 7));
    CHECK(c.c_max == 1e9);
    CHECK(c.bounds.eps == 0.02);
    CHECK(c.threads == 3);
    CHECK(c.seed == 7);
    CHECK_FALSE(c.record_timing);
    CHECK(c.output == "/tmp/x");
    CHECK(parse_config("grid = 16, 32,64").grid == std::vector<std::uint64_t>{16, 32, 64});
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("colour = blue"), ParseError);
    CHECK_THROWS_AS(parse_config("eps"), ParseError);
    CHECK_THROWS_AS(parse_config("grid = 1, x"), ParseError);
    CHECK_THROWS_AS(parse_config("timing = maybe"), ParseError);
    ExperimentConfig c = parse_config("grid = 64, 32");
    CHECK_THROWS_AS(c.validate(), PreconditionViolated);
    c = parse_config("grid = 32, 64\neps = 1.5");
    CHECK_THROWS_AS(c.validate(), PreconditionViolated);
    CHECK_THROWS_AS(load_config("/nonexistent/weyl.cfg"), IoError);
}

TEST_CASE("one record gives a two-line CSV") {
    const std::string csv = format_records({sample_record()}, EmitFormat::Csv);
    const auto ls = lines(csv);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "N,absS4,classical_bound,new_bound,q,q1,q2,C_used,wall_time_ms");
    CHECK(ls[1].rfind("256,19.681020340788752,", 0) == 0);
    CHECK_THROWS_AS(format_records({}, EmitFormat::Csv), PreconditionViolated);
}

TEST_CASE("gnuplot data has a header comment and whitespace columns") {
    const auto ls = lines(format_records({sample_record(), sample_record()}, EmitFormat::GnuplotDat));
    REQUIRE(ls.size() == 3);
    CHECK(ls[0][0] == '#');
    CHECK(ls[1].find(',') == std::string::npos);
    std::istringstream row(ls[1]);
    int fields = 0;
    for (std::string f; row >> f;) ++fields;
    CHECK(fields == 9);
}

TEST_CASE("JSON emit and reload give identical records") {
    const fs::path dir = temp_dir("json");
    ScalingRecord b = sample_record();
    b.N = 512;
    b.absS4 = 0.1 + 0.2;
    b.wall_time_ms = 3.25;
    const std::vector<ScalingRecord> recs{sample_record(), b};
    emit(recs, EmitFormat::Json, dir / "r.json");
    CHECK(load_records_json(dir / "r.json") == recs);
    CHECK(parse_records_json(format_records(recs, EmitFormat::Json)) == recs);
    CHECK_THROWS_AS(emit(recs, EmitFormat::Csv, dir / "missing" / "r.csv"), IoError);
    try {
        emit(recs, EmitFormat::Csv, dir / "missing" / "r.csv");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
}

TEST_CASE("pipeline fixtures") {
    const ScalingRecord r = run_pipeline(QuadIrr::sqrt_of(2), 256, 0.5, 1 << 20);
    CHECK(r.q <= 65536);
    CHECK(r.q1 * r.q2 == r.q);
    CHECK(r.absS4 <= 256);
    CHECK(r.q == 13860);
    CHECK(r.q1 == 36);
    CHECK(r.C_used == 2);
    CHECK(r.absS4 == doctest::Approx(19.681020340788752).epsilon(1e-12));

    const ScalingRecord g = run_pipeline(parse_quad_irr("(1+sqrt(5))/2"), 1024, 0.5, 1 << 20);
    CHECK(g.q == 832040);  // Fibonacci number F_30
    CHECK(g.a == 1346269);
    CHECK(g.absS4 <= 1024);

    // Small N may legitimately fail to split; it must fail cleanly.
    for (double eps : {0.1, 0.25, 0.5}) {
        try {
            const ScalingRecord s = run_pipeline(QuadIrr::sqrt_of(2), 16, eps, 1 << 20);
            CHECK(2 * s.q1 <= 16);
        } catch (const SplitTooLarge&) {
        } catch (const NotFound&) {
        }
    }
    CHECK_THROWS_AS(run_pipeline(QuadIrr::sqrt_of(2), 8, 0.5, 1 << 20), PreconditionViolated);
}

TEST_CASE("lemma1 instance at N = 256") {
    const ScalingRecord r = run_pipeline(QuadIrr::sqrt_of(2), 256, 1.0 / 7, 1 << 30);
    const Lemma1Instance l = lemma1_instance(r);
    CHECK(l.inner_max_sums.size() == 256 / (2 * r.q1));
    CHECK(l.rhs > 0);
    CHECK(l.ratio <= BoundConstants{}.lemma1);
}

TEST_CASE("scaling of trivial and rational arguments") {
    ExperimentConfig zero;
    zero.alpha = "0";
    zero.grid = {16, 64, 256, 1024, 4096};
    zero.record_timing = false;
    const ScalingRun z = run_scaling(zero);
    CHECK(z.slope == doctest::Approx(1).epsilon(1e-12));
    for (const auto& r : z.records) CHECK(r.absS4 == doctest::Approx(static_cast<double>(r.N)));

    ExperimentConfig third = zero;
    third.alpha = "1/3";
    const ScalingRun t = run_scaling(third);
    CHECK(t.major_arc);
    CHECK(t.slope >= 0.9);
}

TEST_CASE("dyadic run writes monotone CSV and reruns identically") {
    const fs::path dir = temp_dir("scale");
    ExperimentConfig c = parse_config("alpha = sqrt(2)\ngrid_dyadic = 8,18\neps = 1/7\ncmax = 1e12\ntiming = off\n");
    c.threads = 4;
    c.output = (dir / "a").string();
    const ScalingRun first = run_scaling(c);
    c.output = (dir / "b").string();
    c.threads = 1;
    const ScalingRun second = run_scaling(c);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
    CHECK(a == b);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    const auto ls = lines(a);
    REQUIRE(ls.size() == 12);
    for (std::size_t i = 1; i < first.records.size(); ++i) CHECK(first.records[i].N > first.records[i - 1].N);
    CHECK(first.records == second.records);
    CHECK(fs::exists(dir / "a.dat"));
}
