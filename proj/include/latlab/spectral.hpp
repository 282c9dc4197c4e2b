#pragma once

#include "latlab/counting.hpp"
#include "latlab/lattice.hpp"
#include "latlab/types.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace latlab {

// Harmonic cutoff for the k-sums. The discarded tails obey
// sum_{k>K} k^-2 < 1/K and sum_{k>K} k^-4 < 1/(3 K^3).
struct TruncationSpec {
    int k_max = 100;
    explicit TruncationSpec(int k = 100) : k_max(k) {
        if (k_max < 1) throw DomainError("k_max must be positive");
    }
    double k2_tail() const { return 1.0 / static_cast<double>(k_max); }
    double k4_tail() const {
        double k = static_cast<double>(k_max);
        return 1.0 / (3.0 * k * k * k);
    }
};

struct SpectralSums {
    double t = 0.0;
    double V = 0.0;
    double G = 0.0;
    double G1 = 0.0, G2 = 0.0, G3 = 0.0, G4 = 0.0;
    int k_max = 0;
    double truncation_error = 0.0;  // bound on the discarded k-tail of G
};

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Fourier transform of the indicator of the box t*Rect(a,b) + X, with the
// continuous limit sigma(0) = 2*pi*t*c so the zero-frequency value is the
// box area.
std::complex<double> indicator_ft(const RectWindow& P, double t, const Vec& X, const Vec& l);

// V(L,t) = sum 1/(l1*l2)^2 over nonzero ||l|| <= t; throws NumZero if any
// vector in the ball has l1*l2 numerically zero; 0 for an empty ball.
double big_v(const LatticeBasis& L, double t, std::int64_t cap = kDefaultEnumCap);

// Precomputed J2(M,t) data for evaluating the truncated series S at many X.
class SeriesWorkspace {
  public:
    SeriesWorkspace(const LatticeBasis& M, const RectWindow& P, double t,
                    const TruncationSpec& trunc, std::int64_t cap = kDefaultEnumCap);

    double eval(const Vec& X) const;
    std::vector<double> eval_batch(const std::vector<Vec>& Xs) const;

    // Mean of S and S^2 over the n-by-n midpoint grid of the torus
    // R^2 / dual(M) (the lattice being counted).
    struct GridMean {
        double mean_s = 0.0;
        double mean_s2 = 0.0;
    };
    GridMean grid_mean(int n) const;

    double tail_bound() const { return tail_bound_; }
    double prefactor() const { return prefactor_; }
    std::size_t term_count() const { return inv_num_.size(); }
    int k_max() const { return k_max_; }

  private:
    double prefactor_;
    double tail_bound_;
    int k_max_;
    std::vector<double> inv_num_;
    std::vector<double> cos_dm_, cos_dp_;  // cos(u1 -+ u2), u1 = 2*pi*t*l1*a
    std::vector<double> lx_, ly_;
    std::vector<int> c1_, c2_;  // integer coordinates in M's basis
    Mat dual_basis_;
    std::vector<double> inv_k2_;
};

// S(M,X,t) truncated at trunc.k_max, with its reported tail bound.
SeriesValue fourier_series_s(const LatticeBasis& M, const RectWindow& P, double t,
                             const TorusPoint& X, const TruncationSpec& trunc,
                             std::int64_t cap = kDefaultEnumCap);

// V plus the Parseval quantity G and its four-term decomposition
// G = G1 - G2 - G3 + G4 over J2(M,t), all k-sums truncated at k_max.
SpectralSums g_terms(const LatticeBasis& M, const RectWindow& P, double t,
                     const TruncationSpec& trunc, std::int64_t cap = kDefaultEnumCap);

// Monte Carlo estimate over n_x translations of E_X[((R - S)/sqrt(V))^2],
// with S and V evaluated on dual(L_count).
double residual_r_minus_s(const LatticeBasis& L_count, const RectWindow& P, double t, int n_x,
                          const TruncationSpec& trunc, std::uint64_t seed,
                          std::int64_t cap = kDefaultEnumCap);

}  // namespace latlab
