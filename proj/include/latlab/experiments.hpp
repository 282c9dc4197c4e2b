#pragma once

#include "latlab/counting.hpp"
#include "latlab/density.hpp"
#include "latlab/lattice.hpp"
#include "latlab/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace latlab {

struct ExperimentConfig {
    std::string id;                  // secondmoment | gdecay | orbitclt | zsquare | voracle
    std::string lattice = "zsquare";
    double a = 1.0;
    double b = 1.0;
    double big_t = 100.0;
    int samples_t = 100;
    int samples_x = 100;
    int k_max = 100;
    double r = 50.0;
    int trials = 1000;
    std::vector<int> k_list = {0, 1, 2, 3, 4};
    std::vector<double> t_list;      // voracle
    std::vector<double> r_list;      // orbitclt
    std::string theta = "rademacher";
    std::string mode = "random";     // random | grid (X sampling)
    DensitySpec rho = DensitySpec::uniform();
    std::optional<std::uint64_t> seed;  // mandatory wherever randomness exists
    double x = 0.0;                  // zsquare translation
    std::string out;                 // CSV path ("" = none)

    void validate() const;  // positive counts, seed present
};

ExperimentConfig parse_config_file(const std::string& path);

struct MomentReport {
    // `# key=value` comment lines, emitted before the header
    std::vector<std::pair<std::string, std::string>> metadata;
    // named statistics (also emitted as metadata comments): name -> (value, stderr)
    std::vector<std::tuple<std::string, double, double>> stats;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    // verbatim summary rows appended after the data rows (e.g. `ks,<value>`)
    std::vector<std::string> trailer_rows;

    void add_meta(const std::string& key, const std::string& value);
    void add_stat(const std::string& name, double value, double std_err);
    std::optional<double> stat(const std::string& name) const;
};

// 17 significant digits, '.' decimal point, ',' separator, LF line ends;
// byte-identical across reruns of the same config and seed.
void emit_csv(const MomentReport& report, const std::string& path);

// For each sampled t: V(dual L, t) once, E_X[R^2] by Monte Carlo or grid,
// one CSV row `t,V,m2_over_V`; reports mean/std against the limit constant
// 1/(4 pi^4 covol(L)^2).
MomentReport run_second_moment_experiment(const ExperimentConfig& cfg);

// For each sampled t: G1/V, |G2|/V, |G3|/V, |G4|/V on the configured
// (frequency) lattice; CSV row per sample plus the G1/V target constant
// covol^2/(4 pi^4).
MomentReport run_g_decay_experiment(const ExperimentConfig& cfg);

// Orbit CLT sweep over r_list: CSV `r,count,v_tilde,ks,be_bound,trials,seed`.
MomentReport run_orbit_clt_experiment(const ExperimentConfig& cfg);

// Sawtooth law: CSV `k,a_k,empirical,abs_err` plus a summary `ks` stat.
MomentReport run_zsquare_experiment(const ExperimentConfig& cfg);

// V(lattice, t) against the admissible tail quadrature: CSV `t,V,oracle,ratio`.
MomentReport run_voracle_experiment(const ExperimentConfig& cfg);

MomentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace latlab
