#pragma once

#include "latlab/density.hpp"
#include "latlab/types.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace latlab {

// Phase offsets of the diagonal translation (x,x): t10 is the first t >= 0
// with t + x integral, t20 the first with -t + x integral, y = |t20 - t10|.
struct ZSquarePhase {
    double x = 0.0;
    double t10 = 0.0;
    double t20 = 0.0;
    double y = 0.0;
};

ZSquarePhase phase_offsets(double x);

// 4*(floor(t+x) - ceil(-t+x) + 1 - 2t); always in [-4, 4].
double delta_sawtooth(double t, double x);

// ((floor(t+x) - ceil(-t+x) + 1)^2 - 4 t^2) / t. Equals the square counting
// error over t, and exceeds delta_sawtooth by (c-2t)^2/t in [0, 1/t].
double r_over_t_exact(double t, double x);

// a_k = 4^k (1 + (-1)^k) (y^(k+1) + (1-y)^(k+1)) / (2(k+1)); 0 for odd k.
double limit_moment(int k, double y);

// The limit law of the sawtooth under random dilation: weight y on
// uniform[-4y, 4y] plus weight 1-y on uniform[-4(1-y), 4(1-y)]. Support
// lies in [-4, 4] and the k-th moment equals limit_moment(k, y), which
// determines the law.
struct BetaMixture {
    double y = 0.0;
    explicit BetaMixture(double y_);
    double cdf(double z) const;
    // exact piecewise-polynomial integration of z^k against the density
    double moment(int k) const;
};

// CDF of BetaMixture(y).
double beta_cdf(double z, double y);

struct EmpiricalBetaResult {
    double ks = 0.0;
    std::map<int, double> moments;
    std::map<int, double> moment_errors;  // |empirical - a_k|
};

// Sample t from rho scaled to [0,T], compare the sawtooth sample against the
// mixture law at y(x): KS distance plus empirical moments for the listed k.
EmpiricalBetaResult empirical_vs_beta(double x, double bigT, int n, const DensitySpec& rho,
                                      std::uint64_t seed, const std::vector<int>& k_list);

}  // namespace latlab
