#include "latlab/experiments.hpp"

#include "latlab/rng.hpp"
#include "latlab/stats.hpp"
#include "latlab/zsquare.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace latlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string temp_path(const char* name) { return std::string("/tmp/latlab_test_") + name; }

ExperimentConfig base_config(const std::string& id) {
    ExperimentConfig cfg;
    cfg.id = id;
    cfg.lattice = "quad:sqrt:2,-sqrt:2";
    cfg.seed = 4711;
    return cfg;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("sample_t: window support") {
    auto ts = sample_t(DensitySpec::window(0.5), 100.0, 2000, 1);
    for (double t : ts) {
        CHECK(t >= 50.0);
        CHECK(t <= 100.0);
    }
}

TEST_CASE("sample_t: uniform mean") {
    const int n = 100000;
    auto ts = sample_t(DensitySpec::uniform(), 100.0, n, 2);
    MeanStd ms = mean_std(ts);
    CHECK(std::abs(ms.mean - 50.0) <= 3.0 * (100.0 / std::sqrt(12.0)) / std::sqrt(double(n)));
}

TEST_CASE("sample_t: step masses") {
    const int n = 100000;
    DensitySpec steps = DensitySpec::make_steps({{0.3, 0.0, 0.5}, {0.7, 0.5, 1.0}});
    auto ts = sample_t(steps, 1.0, n, 3);
    int low = 0;
    for (double t : ts) {
        if (t < 0.5) ++low;
    }
    const double p = double(low) / n;
    CHECK(std::abs(p - 0.3) <= 3.0 * std::sqrt(0.3 * 0.7 / n));
}

TEST_CASE("sample_t is deterministic and order-independent") {
    auto a = sample_t(DensitySpec::uniform(), 10.0, 100, 7);
    auto b = sample_t(DensitySpec::uniform(), 10.0, 100, 7);
    CHECK(a == b);
    // substreams: the first 50 samples of a longer run match the short run
    auto c = sample_t(DensitySpec::uniform(), 10.0, 50, 7);
    for (int i = 0; i < 50; ++i) CHECK(a[i] == c[i]);
}

TEST_CASE("density validation") {
    CHECK_THROWS_AS(DensitySpec::window(0.0), BadDensity);
    CHECK_THROWS_AS(DensitySpec::window(1.0), BadDensity);
    CHECK_THROWS_AS(DensitySpec::make_steps({{0.5, 0.0, 0.5}}), BadDensity);  // mass 0.5
    CHECK_THROWS_AS(DensitySpec::make_steps({{0.5, 0.0, 0.6}, {0.5, 0.5, 1.0}}),
                    BadDensity);  // overlap
    CHECK_THROWS_AS(DensitySpec::make_steps({{1.0, 0.3, 0.2}}), BadDensity);  // empty interval
    CHECK_NOTHROW(DensitySpec::make_steps({{0.3, 0.0, 0.5}, {0.7, 0.5, 1.0}}).validate());
    CHECK_NOTHROW(parse_density_spec("uniform"));
    CHECK(parse_density_spec("window:0.5").alpha == 0.5);
    CHECK(parse_density_spec("steps:0.3,0,0.5;0.7,0.5,1").steps.size() == 2);
    CHECK_THROWS_AS(parse_density_spec("gaussian"), ParseError);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = base_config("secondmoment");
    CHECK_NOTHROW(cfg.validate());
    cfg.seed.reset();
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.seed = 1;
    cfg.samples_t = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.samples_t = 100000;
    cfg.samples_x = 100000;
    CHECK_THROWS_AS(cfg.validate(), CapExceeded);
    cfg = base_config("fft");
    CHECK_THROWS_AS(cfg.validate(), ParseError);
}

TEST_CASE("config file parsing") {
    const std::string path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "# demo config\n"
          << "experiment = secondmoment\n"
          << "lattice = quad:sqrt:2,-sqrt:2\n"
          << "a = 1\n"
          << "b = 0.5\n"
          << "bigT = 250\n"
          << "samples-t = 12\n"
          << "samples-x = 34\n"
          << "rho = window:0.5\n"
          << "seed = 99\n"
          << "out = /tmp/latlab_test_cfg_out.csv\n";
    }
    ExperimentConfig cfg = parse_config_file(path);
    CHECK(cfg.id == "secondmoment");
    CHECK(cfg.b == 0.5);
    CHECK(cfg.big_t == 250.0);
    CHECK(cfg.samples_t == 12);
    CHECK(cfg.samples_x == 34);
    CHECK(cfg.rho.kind == DensitySpec::Kind::Window);
    CHECK(cfg.seed.value() == 99);
    CHECK_NOTHROW(cfg.validate());

    const std::string bad = temp_path("config_bad.txt");
    {
        std::ofstream f(bad);
        f << "experiment: secondmoment\n";
    }
    CHECK_THROWS_AS(parse_config_file(bad), ParseError);

    const std::string unknown = temp_path("config_unknown.txt");
    {
        std::ofstream f(unknown);
        f << "experiment = zsquare\nfrobnicate = 3\n";
    }
    CHECK_THROWS_AS(parse_config_file(unknown), ParseError);
    CHECK_THROWS_AS(parse_config_file("/nonexistent/nope.cfg"), IoError);
}

TEST_CASE("emit_csv reports unwritable paths") {
    MomentReport rep;
    rep.header = {"a"};
    CHECK_THROWS_AS(emit_csv(rep, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("emit_csv formatting and reproducibility") {
    const std::string path = temp_path("report.csv");
    MomentReport rep;
    rep.add_meta("experiment", "demo");
    rep.add_stat("mean", 0.123456789012345678, 0.25);
    rep.header = {"t", "value"};
    SUBCASE("empty report: comments plus header only") {
        emit_csv(rep, path);
        const std::string body = slurp(path);
        CHECK(body ==
              "# experiment=demo\n# mean=0.12345678901234568\n# mean_stderr=0.25\nt,value\n");
    }
    SUBCASE("one data row, parseable round-trip") {
        rep.rows.push_back({2.0, 1.0 / 3.0});
        emit_csv(rep, path);
        const std::string body = slurp(path);
        const auto last = body.rfind('\n', body.size() - 2);
        const std::string row = body.substr(last + 1, body.size() - last - 2);
        double t = 0, v = 0;
        CHECK(std::sscanf(row.c_str(), "%lf,%lf", &t, &v) == 2);
        CHECK(t == 2.0);
        CHECK(v == 1.0 / 3.0);  // 17 significant digits survive the round-trip
    }
    SUBCASE("rerun is byte-identical") {
        rep.rows.push_back({1.0, 2.0});
        emit_csv(rep, path);
        const std::string first = slurp(path);
        emit_csv(rep, path);
        CHECK(first == slurp(path));
    }
}

TEST_CASE("second-moment experiment") {
    ExperimentConfig cfg = base_config("secondmoment");
    cfg.big_t = 80.0;
    cfg.samples_t = 8;
    cfg.samples_x = 60;
    cfg.rho = DensitySpec::window(0.5);
    cfg.out = temp_path("sm.csv");
    MomentReport rep = run_second_moment_experiment(cfg);
    CHECK(rep.header == std::vector<std::string>{"t", "V", "m2_over_V"});
    CHECK(rep.rows.size() == 8);
    // the limit constant 1/(4 pi^4 covol^2) with covol^2 = 8
    CHECK(rep.stat("target_constant").value() ==
          doctest::Approx(1.0 / (32.0 * std::pow(M_PI, 4))).epsilon(1e-12));
    CHECK(rep.stat("mean_m2_over_V").has_value());

    // deterministic end to end, byte-identical CSV
    const std::string first = slurp(cfg.out);
    MomentReport rep2 = run_second_moment_experiment(cfg);
    CHECK(rep2.stat("mean_m2_over_V").value() == rep.stat("mean_m2_over_V").value());
    CHECK(first == slurp(cfg.out));
}

TEST_CASE("second-moment experiment rejects zero-product lattices with guidance") {
    ExperimentConfig cfg = base_config("secondmoment");
    cfg.lattice = "zsquare";
    cfg.big_t = 40.0;
    cfg.samples_t = 4;
    cfg.samples_x = 10;
    try {
        run_second_moment_experiment(cfg);
        CHECK(false);
    } catch (const NumZero& e) {
        CHECK(std::string(e.what()).find("zsquare experiment") != std::string::npos);
    }
}

TEST_CASE("g-decay experiment") {
    ExperimentConfig cfg = base_config("gdecay");
    cfg.big_t = 60.0;
    cfg.samples_t = 6;
    cfg.k_max = 32;
    cfg.rho = DensitySpec::window(0.5);
    MomentReport rep = run_g_decay_experiment(cfg);
    CHECK(rep.rows.size() == 6);
    const double covol2 = 8.0;
    CHECK(rep.stat("target_g1_over_V").value() ==
          doctest::Approx(covol2 / (4.0 * std::pow(M_PI, 4))).epsilon(1e-12));
    for (const auto& row : rep.rows) {
        CHECK(row[2] > 0.0);   // G1/V
        CHECK(row[3] >= 0.0);  // |G2|/V
    }
}

TEST_CASE("orbit experiment") {
    ExperimentConfig cfg = base_config("orbitclt");
    cfg.lattice = "quad:sqrt:2,-sqrt:2!unimodular";
    cfg.r_list = {10.0, 20.0};
    cfg.trials = 500;
    MomentReport rep = run_orbit_clt_experiment(cfg);
    CHECK(rep.header ==
          std::vector<std::string>{"r", "count", "v_tilde", "ks", "be_bound", "trials", "seed"});
    CHECK(rep.rows.size() == 2);
    CHECK(rep.rows[0][1] == 15.0);  // |Delta_10| in dimension 2
}

TEST_CASE("zsquare experiment matches the module-level run") {
    ExperimentConfig cfg = base_config("zsquare");
    cfg.x = 0.25;
    cfg.big_t = 2000.0;
    cfg.samples_t = 5000;
    cfg.k_list = {0, 1, 2};
    MomentReport rep = run_zsquare_experiment(cfg);
    auto direct = empirical_vs_beta(0.25, 2000.0, 5000, DensitySpec::uniform(), 4711, {0, 1, 2});
    CHECK(rep.stat("ks").value() == direct.ks);
    CHECK(rep.rows[2][2] == direct.moments.at(2));
    CHECK(rep.rows[2][1] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("voracle experiment") {
    ExperimentConfig cfg = base_config("voracle");
    cfg.t_list = {100.0, 500.0};
    MomentReport rep = run_voracle_experiment(cfg);
    CHECK(rep.rows.size() == 2);
    for (const auto& row : rep.rows) {
        CHECK(row[3] >= 0.1);
        CHECK(row[3] <= 10.0);
    }
}

}  // TEST_SUITE
