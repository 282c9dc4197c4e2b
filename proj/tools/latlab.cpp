// latlab - a computational laboratory for lattice point-counting statistics.
//
// Subcommands:
//   count        exact point count and error in a dilated translated box
//   secondmoment E_X[R^2] over random or grid translations
//   spectral     V, G and its decomposition (plus S at a point / grid mean)
//   orbit        diagonal-orbit CLT simulation with KS / Berry-Esseen check
//   zsquare      sawtooth law of the square lattice against its limit law
//   oracle       quadrature oracles for the region integrals
//   experiment   run a `key = value` config file end to end

#include "latlab/counting.hpp"
#include "latlab/experiments.hpp"
#include "latlab/lattice.hpp"
#include "latlab/orbit.hpp"
#include "latlab/quadrature.hpp"
#include "latlab/rng.hpp"
#include "latlab/spectral.hpp"
#include "latlab/zsquare.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

latlab::Vec parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw latlab::ParseError("point must be <x1>,<x2>");
    latlab::Vec v(2);
    v(0) = latlab::parse_real(s.substr(0, comma));
    v(1) = latlab::parse_real(s.substr(comma + 1));
    return v;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        auto piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!piece.empty()) out.push_back(latlab::parse_real(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice point-counting statistics laboratory"};
    app.require_subcommand(1);

    std::string lattice = "zsquare", xs = "0,0", out, mode = "random", theta = "rademacher";
    std::string rho = "uniform", config_path, which = "admissible", rlist_s, klist_s;
    double a = 1.0, b = 1.0, t = 10.0, big_t = 100.0, r = 50.0, x = 0.0;
    double A = 10.0, C = 1.0, alpha = 0.0;
    int kmax = 100, samples_x = 200, samples_t = 1000, grid_n = 0, trials = 10000, dim = 2;
    std::uint64_t seed = 0;

    auto* count = app.add_subcommand("count", "exact count and error in t*Rect(a,b) + X");
    count->add_option("--lattice", lattice);
    count->add_option("--a", a);
    count->add_option("--b", b);
    count->add_option("--t", t)->required();
    count->add_option("--x", xs);

    auto* sm = app.add_subcommand("secondmoment", "E_X[R^2] over translations");
    sm->add_option("--lattice", lattice);
    sm->add_option("--a", a);
    sm->add_option("--b", b);
    sm->add_option("--t", t)->required();
    sm->add_option("--samples-x", samples_x);
    sm->add_option("--mode", mode);
    sm->add_option("--seed", seed)->required();
    sm->add_option("--out", out);

    auto* sp = app.add_subcommand("spectral", "V, G decomposition, S series");
    sp->add_option("--lattice", lattice);
    sp->add_option("--a", a);
    sp->add_option("--b", b);
    sp->add_option("--t", t)->required();
    sp->add_option("--kmax", kmax);
    std::string sp_x;
    sp->add_option("--x", sp_x, "evaluate S at this translation");
    sp->add_option("--grid", grid_n, "grid side for the X-average of S and S^2");
    sp->add_option("--samples-x", samples_x);
    sp->add_option("--seed", seed);
    sp->add_option("--out", out);

    auto* orb = app.add_subcommand("orbit", "diagonal-orbit CLT simulation");
    orb->add_option("--lattice", lattice);
    orb->add_option("--dim", dim);
    orb->add_option("--r", rlist_s, "radius or comma list")->required();
    orb->add_option("--theta", theta);
    orb->add_option("--trials", trials);
    orb->add_option("--seed", seed)->required();
    orb->add_option("--out", out);

    auto* zs = app.add_subcommand("zsquare", "sawtooth law vs its limit");
    zs->add_option("--x", x);
    zs->add_option("--bigT", big_t);
    zs->add_option("--samples-t", samples_t);
    zs->add_option("--rho", rho);
    zs->add_option("--k-list", klist_s);
    zs->add_option("--seed", seed)->required();
    zs->add_option("--out", out);

    auto* orc = app.add_subcommand("oracle", "region-integral quadratures");
    orc->add_option("--which", which, "admissible|logweighted|asymmetric");
    orc->add_option("--A", A);
    orc->add_option("--C", C);
    orc->add_option("--alpha", alpha);
    orc->add_option("--t", t)->required();
    orc->add_option("--out", out);

    auto* ex = app.add_subcommand("experiment", "run a config file");
    ex->add_option("--config", config_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*count) {
            const latlab::LatticeBasis L = latlab::parse_lattice_spec(lattice);
            const latlab::RectWindow P(a, b);
            const latlab::TorusPoint X(L, parse_point(xs));
            const long long n = latlab::count_points(L, P, t, X);
            const double err = latlab::count_error(L, P, t, X);
            std::printf("count=%lld\nerror=%.17g\n", n, err);
        } else if (*sm) {
            const latlab::LatticeBasis L = latlab::parse_lattice_spec(lattice);
            const latlab::RectWindow P(a, b);
            const latlab::MomentEstimate est = latlab::second_moment_over_X(
                L, P, t, samples_x, seed,
                mode == "grid" ? latlab::SampleMode::Grid : latlab::SampleMode::Random);
            std::printf("m2=%.17g\nstderr=%.17g\n", est.m2, est.std_err);
            if (!out.empty()) {
                latlab::MomentReport rep;
                rep.add_meta("experiment", "secondmoment");
                rep.add_meta("lattice", lattice);
                rep.add_meta("seed", std::to_string(seed));
                rep.header = {"t", "m2", "stderr"};
                rep.rows.push_back({t, est.m2, est.std_err});
                latlab::emit_csv(rep, out);
            }
        } else if (*sp) {
            const latlab::LatticeBasis M = latlab::parse_lattice_spec(lattice);
            const latlab::RectWindow P(a, b);
            const latlab::TruncationSpec trunc(kmax);
            const latlab::SpectralSums g = latlab::g_terms(M, P, t, trunc);
            std::printf("V=%.17g\nG=%.17g\nG1=%.17g\nG2=%.17g\nG3=%.17g\nG4=%.17g\n", g.V, g.G,
                        g.G1, g.G2, g.G3, g.G4);
            if (!sp_x.empty()) {
                const latlab::TorusPoint X(latlab::dual_lattice(M), parse_point(sp_x));
                const latlab::SeriesValue s = latlab::fourier_series_s(M, P, t, X, trunc);
                std::printf("S=%.17g\nS_tail_bound=%.17g\n", s.value, s.tail_bound);
            }
            if (grid_n > 1) {
                const latlab::SeriesWorkspace ws(M, P, t, trunc);
                const auto gm = ws.grid_mean(grid_n);
                std::printf("grid_mean_S=%.17g\ngrid_mean_S2=%.17g\n", gm.mean_s, gm.mean_s2);
            } else if (sp->count("--samples-x")) {
                if (!sp->count("--seed")) {
                    throw latlab::DomainError("--samples-x needs --seed (no entropy defaults)");
                }
                // Monte Carlo X-average of S and S^2 over the torus
                const latlab::SeriesWorkspace ws(M, P, t, trunc);
                const latlab::LatticeBasis Lc = latlab::dual_lattice(M);
                std::vector<latlab::Vec> xs;
                for (int i = 0; i < samples_x; ++i) {
                    latlab::Rng rng = latlab::substream(seed, i);
                    xs.push_back(latlab::TorusPoint(Lc, rng.next_double(), rng.next_double()).X);
                }
                const auto vals = ws.eval_batch(xs);
                double m = 0.0, m2 = 0.0;
                for (double v : vals) {
                    m += v;
                    m2 += v * v;
                }
                std::printf("mc_mean_S=%.17g\nmc_mean_S2=%.17g\n", m / samples_x, m2 / samples_x);
            }
            if (!out.empty()) {
                latlab::MomentReport rep;
                rep.add_meta("experiment", "spectral");
                rep.add_meta("lattice", lattice);
                rep.header = {"t", "V", "G", "G1", "G2", "G3", "G4", "kmax", "tail_bound"};
                rep.rows.push_back({t, g.V, g.G, g.G1, g.G2, g.G3, g.G4,
                                    static_cast<double>(g.k_max), g.truncation_error});
                latlab::emit_csv(rep, out);
            }
        } else if (*orb) {
            if (latlab::parse_lattice_spec(lattice).dim() != dim) {
                throw latlab::DomainError("--dim does not match the lattice dimension");
            }
            latlab::ExperimentConfig cfg;
            cfg.id = "orbitclt";
            cfg.lattice = lattice;
            cfg.r_list = parse_list(rlist_s);
            cfg.theta = theta;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.out = out;
            const latlab::MomentReport rep = latlab::run_orbit_clt_experiment(cfg);
            for (const auto& row : rep.rows) {
                std::printf("r=%g count=%g v_tilde=%.17g ks=%.6g be_bound=%.6g\n", row[0], row[1],
                            row[2], row[3], row[4]);
            }
        } else if (*zs) {
            latlab::ExperimentConfig cfg;
            cfg.id = "zsquare";
            cfg.x = x;
            cfg.big_t = big_t;
            cfg.samples_t = samples_t;
            if (!klist_s.empty()) {
                cfg.k_list.clear();
                for (double v : parse_list(klist_s)) cfg.k_list.push_back(static_cast<int>(v));
            }
            cfg.seed = seed;
            cfg.out = out;
            cfg.rho = latlab::parse_density_spec(rho);
            const latlab::MomentReport rep = latlab::run_zsquare_experiment(cfg);
            std::printf("ks=%.6g\n", rep.stat("ks").value_or(0.0));
            for (const auto& row : rep.rows) {
                std::printf("k=%d a_k=%.17g empirical=%.17g abs_err=%.3g\n",
                            static_cast<int>(row[0]), row[1], row[2], row[3]);
            }
        } else if (*orc) {
            double value = 0.0, err = 0.0;
            if (which == "admissible") {
                const auto q = latlab::admissible_tail_integral(latlab::IntegralRegionSpec(A, C, t));
                value = q.value;
                err = q.err_bound;
            } else if (which == "logweighted") {
                const auto q = latlab::log_weighted_tail_integral(
                    latlab::IntegralRegionSpec(A, C, t, alpha));
                value = q.value;
                err = q.err_bound;
            } else if (which == "asymmetric") {
                const auto q = latlab::asymmetric_integral(A, C, t);
                value = q.value;
                err = q.err_bound;
            } else {
                throw latlab::ParseError("--which must be admissible|logweighted|asymmetric");
            }
            std::printf("value=%.17g\nerr_bound=%.3g\n", value, err);
            if (!out.empty()) {
                latlab::MomentReport rep;
                rep.add_meta("experiment", "oracle");
                rep.add_meta("which", which);
                rep.header = {"A", "C", "alpha", "t", "value", "err_bound"};
                rep.rows.push_back({A, C, alpha, t, value, err});
                latlab::emit_csv(rep, out);
            }
        } else if (*ex) {
            const latlab::ExperimentConfig cfg = latlab::parse_config_file(config_path);
            const latlab::MomentReport rep = latlab::run_experiment(cfg);
            for (const auto& [name, value, std_err] : rep.stats) {
                std::printf("%s=%.17g (stderr %.3g)\n", name.c_str(), value, std_err);
            }
            std::printf("rows=%zu%s%s\n", rep.rows.size(), cfg.out.empty() ? "" : " -> ",
                        cfg.out.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
