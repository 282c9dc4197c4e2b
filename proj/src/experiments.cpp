#include "latlab/experiments.hpp"

#include "latlab/orbit.hpp"
#include "latlab/quadrature.hpp"
#include "latlab/rng.hpp"
#include "latlab/spectral.hpp"
#include "latlab/stats.hpp"
#include "latlab/zsquare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace latlab {

namespace {

constexpr double kPi4 = 97.40909103400243723644033268870512;  // pi^4

// keep any acceptance-scale run well under desk time
constexpr long long kSampleProductCap = 4000000;  // samples_t * samples_x

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampleMode parse_mode(const std::string& mode) {
    if (mode == "random") return SampleMode::Random;
    if (mode == "grid") return SampleMode::Grid;
    throw ParseError("mode must be random or grid, got '" + mode + "'");
}

SignModel parse_theta(const std::string& theta) {
    if (theta == "rademacher") return SignModel::rademacher();
    if (theta == "uniform") return SignModel::uniform_symmetric();
    throw ParseError("theta must be rademacher or uniform, got '" + theta + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (id != "secondmoment" && id != "gdecay" && id != "orbitclt" && id != "zsquare" &&
        id != "voracle") {
        throw ParseError("unknown experiment id '" + id + "'");
    }
    if (!(big_t > 0.0)) throw DomainError("bigT must be positive");
    if (samples_t < 1 || samples_x < 1 || k_max < 1 || trials < 1) {
        throw DomainError("all counts must be positive");
    }
    if (!seed.has_value()) throw DomainError("seed is mandatory (no entropy defaults)");
    if (static_cast<long long>(samples_t) * static_cast<long long>(samples_x) >
        kSampleProductCap) {
        throw CapExceeded("samples_t * samples_x exceeds the run-time cap");
    }
    rho.validate();
}

void MomentReport::add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void MomentReport::add_stat(const std::string& name, double value, double std_err) {
    stats.emplace_back(name, value, std_err);
}

std::optional<double> MomentReport::stat(const std::string& name) const {
    for (const auto& [n, v, e] : stats) {
        if (n == name) return v;
    }
    return std::nullopt;
}

void emit_csv(const MomentReport& report, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : report.metadata) f << "# " << k << "=" << v << "\n";
    for (const auto& [name, value, std_err] : report.stats) {
        f << "# " << name << "=" << format_real(value) << "\n";
        f << "# " << name << "_stderr=" << format_real(std_err) << "\n";
    }
    for (std::size_t i = 0; i < report.header.size(); ++i) {
        f << (i ? "," : "") << report.header[i];
    }
    f << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            f << (i ? "," : "") << format_real(row[i]);
        }
        f << "\n";
    }
    for (const auto& line : report.trailer_rows) f << line << "\n";
    if (!f) throw IoError("write to '" + path + "' failed");
}

namespace {

void maybe_emit(const MomentReport& report, const ExperimentConfig& cfg) {
    if (!cfg.out.empty()) emit_csv(report, cfg.out);
}

void stamp(MomentReport& report, const ExperimentConfig& cfg) {
    report.add_meta("experiment", cfg.id);
    report.add_meta("lattice", cfg.lattice);
    report.add_meta("seed", std::to_string(cfg.seed.value()));
}

}  // namespace

MomentReport run_second_moment_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const LatticeBasis L = parse_lattice_spec(cfg.lattice);
    const LatticeBasis M = dual_lattice(L);
    const RectWindow P(cfg.a, cfg.b);
    const SampleMode mode = parse_mode(cfg.mode);
    const std::uint64_t seed = cfg.seed.value();

    MomentReport report;
    stamp(report, cfg);
    report.header = {"t", "V", "m2_over_V"};
    std::vector<double> ratios;
    std::vector<double> ts;
    try {
        ts = sample_t(cfg.rho, cfg.big_t, cfg.samples_t, mix_seed(seed, 0x7442));
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double t = ts[i];
            const double v = big_v(M, t);
            if (!(v > 0.0)) continue;  // ball below the first dual vector
            const MomentEstimate m2 = second_moment_over_X(L, P, t, cfg.samples_x,
                                                           mix_seed(seed, i + 1), mode);
            const double ratio = m2.m2 / v;
            ratios.push_back(ratio);
            report.rows.push_back({t, v, ratio});
        }
    } catch (const NumZero&) {
        throw NumZero(
            "V(dual L, t) has a zero-product vector; this lattice (e.g. zsquare) is outside the "
            "admissible theory - use the zsquare experiment instead");
    }
    const MeanStd ms = mean_std(ratios);
    const double target = 1.0 / (4.0 * kPi4 * L.covol() * L.covol());
    report.add_stat("mean_m2_over_V", ms.mean, ms.std_err);
    report.add_stat("std_m2_over_V", ms.std_dev, 0.0);
    report.add_stat("target_constant", target, 0.0);
    maybe_emit(report, cfg);
    return report;
}

MomentReport run_g_decay_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const LatticeBasis M = parse_lattice_spec(cfg.lattice);
    const RectWindow P(cfg.a, cfg.b);
    const TruncationSpec trunc(cfg.k_max);
    const std::uint64_t seed = cfg.seed.value();

    MomentReport report;
    stamp(report, cfg);
    report.header = {"t", "V", "g1_over_V", "abs_g2_over_V", "abs_g3_over_V", "abs_g4_over_V"};
    std::vector<double> g1r, g2r, g3r, g4r;
    const std::vector<double> ts = sample_t(cfg.rho, cfg.big_t, cfg.samples_t, mix_seed(seed, 0x6d));
    for (double t : ts) {
        const SpectralSums s = g_terms(M, P, t, trunc);
        if (!(s.V > 0.0)) continue;
        g1r.push_back(s.G1 / s.V);
        g2r.push_back(std::abs(s.G2) / s.V);
        g3r.push_back(std::abs(s.G3) / s.V);
        g4r.push_back(std::abs(s.G4) / s.V);
        report.rows.push_back({t, s.V, g1r.back(), g2r.back(), g3r.back(), g4r.back()});
    }
    const double target = M.covol() * M.covol() / (4.0 * kPi4);
    report.add_stat("mean_g1_over_V", mean_std(g1r).mean, mean_std(g1r).std_err);
    report.add_stat("mean_abs_g2_over_V", mean_std(g2r).mean, mean_std(g2r).std_err);
    report.add_stat("mean_abs_g3_over_V", mean_std(g3r).mean, mean_std(g3r).std_err);
    report.add_stat("mean_abs_g4_over_V", mean_std(g4r).mean, mean_std(g4r).std_err);
    report.add_stat("target_g1_over_V", target, 0.0);
    maybe_emit(report, cfg);
    return report;
}

MomentReport run_orbit_clt_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const LatticeBasis L = parse_lattice_spec(cfg.lattice);
    const SignModel model = parse_theta(cfg.theta);
    const std::uint64_t seed = cfg.seed.value();
    const int d = L.dim();
    std::vector<double> rs = cfg.r_list.empty() ? std::vector<double>{cfg.r} : cfg.r_list;

    MomentReport report;
    stamp(report, cfg);
    report.header = {"r", "count", "v_tilde", "ks", "be_bound", "trials", "seed"};
    for (double r : rs) {
        const OrbitNorms norms = orbit_v_and_norms(L, d, r);
        const OrbitStats stats = make_orbit_stats(norms, model, r);
        const std::vector<double> values = simulate_s_tilde(L, d, r, model, cfg.trials, seed);
        const BerryEsseenCheck chk = berry_esseen_check(values, stats);
        report.rows.push_back({r, static_cast<double>(stats.count), stats.v_tilde,
                               chk.ks_distance, chk.be_bound, static_cast<double>(cfg.trials),
                               static_cast<double>(seed)});
    }
    maybe_emit(report, cfg);
    return report;
}

MomentReport run_zsquare_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::uint64_t seed = cfg.seed.value();
    const EmpiricalBetaResult res =
        empirical_vs_beta(cfg.x, cfg.big_t, cfg.samples_t, cfg.rho, seed, cfg.k_list);
    const double y = phase_offsets(cfg.x).y;

    MomentReport report;
    stamp(report, cfg);
    report.add_meta("x", format_real(cfg.x));
    report.add_meta("y", format_real(y));
    report.header = {"k", "a_k", "empirical", "abs_err"};
    for (int k : cfg.k_list) {
        report.rows.push_back({static_cast<double>(k), limit_moment(k, y), res.moments.at(k),
                               res.moment_errors.at(k)});
    }
    report.add_stat("ks", res.ks, 0.0);
    report.trailer_rows.push_back(std::string("ks,") + format_real(res.ks));
    maybe_emit(report, cfg);
    return report;
}

MomentReport run_voracle_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const LatticeBasis L = parse_lattice_spec(cfg.lattice);
    const double shortest = *reduce_basis(L).reduced_shortest();
    std::vector<double> ts = cfg.t_list;
    if (ts.empty()) {
        for (double t = 50.0; t <= cfg.big_t + 1e-9; t += 50.0) ts.push_back(t);
    }

    MomentReport report;
    stamp(report, cfg);
    report.add_meta("oracle_A", format_real(shortest));
    report.header = {"t", "V", "oracle", "ratio"};
    for (double t : ts) {
        const double v = big_v(L, t);
        const double j = admissible_tail_integral(IntegralRegionSpec(shortest, 1.0, t)).value;
        report.rows.push_back({t, v, j, j != 0.0 ? v / j : 0.0});
    }
    maybe_emit(report, cfg);
    return report;
}

MomentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.id == "secondmoment") return run_second_moment_experiment(cfg);
    if (cfg.id == "gdecay") return run_g_decay_experiment(cfg);
    if (cfg.id == "orbitclt") return run_orbit_clt_experiment(cfg);
    if (cfg.id == "zsquare") return run_zsquare_experiment(cfg);
    return run_voracle_experiment(cfg);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(trim(item)));
    return out;
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(f, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("config lines are `key = value`: " + t);
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key == "experiment") cfg.id = val;
        else if (key == "lattice") cfg.lattice = val;
        else if (key == "a") cfg.a = parse_real(val);
        else if (key == "b") cfg.b = parse_real(val);
        else if (key == "bigT") cfg.big_t = parse_real(val);
        else if (key == "samples-t") cfg.samples_t = std::stoi(val);
        else if (key == "samples-x") cfg.samples_x = std::stoi(val);
        else if (key == "kmax") cfg.k_max = std::stoi(val);
        else if (key == "r") cfg.r = parse_real(val);
        else if (key == "trials") cfg.trials = std::stoi(val);
        else if (key == "theta") cfg.theta = val;
        else if (key == "mode") cfg.mode = val;
        else if (key == "rho") cfg.rho = parse_density_spec(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "x") cfg.x = parse_real(val);
        else if (key == "out") cfg.out = val;
        else if (key == "k-list") {
            cfg.k_list.clear();
            for (double v : parse_real_list(val)) cfg.k_list.push_back(static_cast<int>(v));
        } else if (key == "t-list") cfg.t_list = parse_real_list(val);
        else if (key == "r-list") cfg.r_list = parse_real_list(val);
        else throw ParseError("unknown config key '" + key + "'");
    }
    return cfg;
}

}  // namespace latlab
