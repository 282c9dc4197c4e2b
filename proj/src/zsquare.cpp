#include "latlab/zsquare.hpp"

#include "latlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace latlab {

ZSquarePhase phase_offsets(double x) {
    ZSquarePhase p;
    p.x = x;
    p.t10 = -x - std::floor(-x);  // (-x) mod 1
    p.t20 = x - std::floor(x);    // x mod 1
    p.y = std::abs(p.t20 - p.t10);
    return p;
}

double delta_sawtooth(double t, double x) {
    if (t < 0.0) throw DomainError("delta_sawtooth needs t >= 0");
    const double c = std::floor(t + x) - std::ceil(x - t) + 1.0;
    return 4.0 * (c - 2.0 * t);
}

double r_over_t_exact(double t, double x) {
    if (!(t > 0.0)) throw DomainError("r_over_t_exact needs t > 0");
    const double c = std::floor(t + x) - std::ceil(x - t) + 1.0;
    return (c * c - 4.0 * t * t) / t;
}

double limit_moment(int k, double y) {
    if (k < 0) throw DomainError("limit_moment needs k >= 0");
    if (k % 2 == 1) return 0.0;
    const double pk1 = std::pow(y, k + 1) + std::pow(1.0 - y, k + 1);
    return std::pow(4.0, k) * 2.0 * pk1 / (2.0 * static_cast<double>(k + 1));
}

namespace {

double uniform_cdf(double z, double c) {
    // uniform on [-c, c]; c = 0 degenerates to a point mass at 0
    if (c == 0.0) return z >= 0.0 ? 1.0 : 0.0;
    const double f = (z + c) / (2.0 * c);
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace

BetaMixture::BetaMixture(double y_) : y(y_) {
    if (!(y >= 0.0) || !(y < 1.0)) throw DomainError("mixture parameter y must lie in [0,1)");
}

double BetaMixture::cdf(double z) const {
    return y * uniform_cdf(z, 4.0 * y) + (1.0 - y) * uniform_cdf(z, 4.0 * (1.0 - y));
}

double BetaMixture::moment(int k) const {
    if (k < 0) throw DomainError("moment order must be nonnegative");
    double m = 0.0;
    for (const auto& [w, c] : {std::pair{y, 4.0 * y}, std::pair{1.0 - y, 4.0 * (1.0 - y)}}) {
        if (w == 0.0) continue;
        // weight w spread uniformly over [-c, c]
        const double h = w / (2.0 * c);
        m += h * (std::pow(c, k + 1) - std::pow(-c, k + 1)) / (k + 1);
    }
    return m;
}

double beta_cdf(double z, double y) { return BetaMixture(y).cdf(z); }

EmpiricalBetaResult empirical_vs_beta(double x, double bigT, int n, const DensitySpec& rho,
                                      std::uint64_t seed, const std::vector<int>& k_list) {
    if (n < 100) throw DomainError("empirical_vs_beta needs n >= 100");
    const double y = phase_offsets(x).y;
    const std::vector<double> ts = sample_t(rho, bigT, n, seed);
    std::vector<double> deltas;
    deltas.reserve(ts.size());
    for (double t : ts) deltas.push_back(delta_sawtooth(t, x));

    EmpiricalBetaResult out;
    out.ks = ks_distance(deltas, [y](double z) { return beta_cdf(z, y); });
    for (int k : k_list) {
        NeumaierSum s;
        for (double d : deltas) s.add(std::pow(d, k));
        const double emp = s.value() / static_cast<double>(deltas.size());
        out.moments[k] = emp;
        out.moment_errors[k] = std::abs(emp - limit_moment(k, y));
    }
    return out;
}

}  // namespace latlab
