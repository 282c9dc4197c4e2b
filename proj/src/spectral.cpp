// Truncated Fourier series on the frequency lattice M:
//
//   S(M,X,t) = (2/(pi^2 covol(M_dual))) sum_{l in J2(M,t)} 1/(l1 l2)
//              sum_{k<=K} sin(2 pi k t l1 a) sin(2 pi k t l2 b)
//                         cos(2 pi k <l,X>) / k^2
//
// with J2(M,t) the prime vectors of norm <= t and l1 > 0, and
// covol(M_dual) = 1/covol(M) the covolume of the lattice being counted.
//
// The X-mean square of S collapses by orthogonality of the cosines to
//
//   G = (2 covol(M)^2 / pi^4) sum_{J2} (l1 l2)^-2
//       sum_{k<=K} sin^2(2 pi k t l1 a) sin^2(2 pi k t l2 b) / k^4
//
// and sin^2 = (1 - cos 2x)/2 splits G into G1 - G2 - G3 + G4 termwise.
//
// k-sums use the Chebyshev three-term recurrences for cos(k u), sin(k u);
// one sin/cos pair of libm calls per lattice vector, a few flops per k.

#include "latlab/spectral.hpp"

#include "latlab/rng.hpp"
#include "latlab/stats.hpp"

#include <cmath>
#include <numeric>

namespace latlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

double sinc_factor(double u, double tc) {
    // sin(2 pi t u c)/u with the continuous extension 2 pi t c at u = 0
    if (u == 0.0) return kTwoPi * tc;
    return std::sin(kTwoPi * tc * u) / u;
}

std::vector<double> inv_powers(int k_max, int p) {
    std::vector<double> w(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) w[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), -p);
    return w;
}

// shared ball scan: NumZero check on every nonzero vector, callback on the
// J2 subset (prime, l1 > 0)
template <class V, class J>
void scan_spectral(const LatticeBasis& L, double t, std::int64_t cap, V&& on_vector, J&& on_j2) {
    if (!(t > 0)) throw DomainError("spectral sums need t > 0");
    if (L.dim() != 2) throw DomainError("spectral sums are 2-D only");
    const Mat& b = L.basis();
    const Mat& inv = L.inverse();
    const double r0 = t * inv.row(0).norm();
    const double r1 = t * inv.row(1).norm();
    const long long n0 = static_cast<long long>(std::floor(r0 + 1e-9));
    const long long n1 = static_cast<long long>(std::floor(r1 + 1e-9));
    if ((2.0 * static_cast<double>(n0) + 1.0) * (2.0 * static_cast<double>(n1) + 1.0) >
        static_cast<double>(cap)) {
        throw BallTooLarge("spectral enumeration exceeds the cap");
    }
    const double b00 = b(0, 0), b01 = b(0, 1), b10 = b(1, 0), b11 = b(1, 1);
    const double t2 = t * t;
    for (long long i = -n0; i <= n0; ++i) {
        const double x0 = b00 * static_cast<double>(i);
        const double y0 = b10 * static_cast<double>(i);
        for (long long j = -n1; j <= n1; ++j) {
            if (i == 0 && j == 0) continue;
            const double x = x0 + b01 * static_cast<double>(j);
            const double y = y0 + b11 * static_cast<double>(j);
            const double n2 = x * x + y * y;
            if (n2 > t2) continue;
            const double num = x * y;
            if (num_is_zero(num, n2)) {
                throw NumZero("vector with l1*l2 = 0 in the ball (e.g. an axis vector)");
            }
            on_vector(num);
            if (x > 0.0 && std::gcd(std::llabs(i), std::llabs(j)) == 1) {
                on_j2(i, j, x, y, num);
            }
        }
    }
}

}  // namespace

std::complex<double> indicator_ft(const RectWindow& P, double t, const Vec& X, const Vec& l) {
    if (!(t > 0)) throw DomainError("indicator_ft needs t > 0");
    const double mag =
        sinc_factor(l(0), t * P.a) * sinc_factor(l(1), t * P.b) / (kPi * kPi);
    const double phase = kTwoPi * (l(0) * X(0) + l(1) * X(1));
    return std::polar(mag, phase);
}

double big_v(const LatticeBasis& L, double t, std::int64_t cap) {
    NeumaierSum v;
    scan_spectral(
        L, t, cap, [&](double num) { v.add(1.0 / (num * num)); },
        [](long long, long long, double, double, double) {});
    return v.value();
}

SeriesWorkspace::SeriesWorkspace(const LatticeBasis& M, const RectWindow& P, double t,
                                 const TruncationSpec& trunc, std::int64_t cap)
    : prefactor_(2.0 * M.covol() / (kPi * kPi)),
      k_max_(trunc.k_max),
      dual_basis_(dual_lattice(M).basis()),
      inv_k2_(inv_powers(trunc.k_max, 2)) {
    NeumaierSum abs_sum;
    scan_spectral(
        M, t, cap, [](double) {},
        [&](long long i, long long j, double x, double y, double num) {
            inv_num_.push_back(1.0 / num);
            abs_sum.add(1.0 / std::abs(num));
            const double u1 = kTwoPi * t * x * P.a;
            const double u2 = kTwoPi * t * y * P.b;
            cos_dm_.push_back(std::cos(u1 - u2));
            cos_dp_.push_back(std::cos(u1 + u2));
            lx_.push_back(x);
            ly_.push_back(y);
            c1_.push_back(static_cast<int>(i));
            c2_.push_back(static_cast<int>(j));
        });
    tail_bound_ = prefactor_ * abs_sum.value() * trunc.k2_tail();
}

double SeriesWorkspace::eval(const Vec& X) const {
    NeumaierSum acc;
    const std::size_t n = inv_num_.size();
    for (std::size_t v = 0; v < n; ++v) {
        const double cm = cos_dm_[v], cp = cos_dp_[v];
        const double cc = std::cos(kTwoPi * (lx_[v] * X(0) + ly_[v] * X(1)));
        // k = 1 seeds
        double m1 = cm, m0 = 1.0;   // cos(k (u1-u2))
        double p1 = cp, p0 = 1.0;   // cos(k (u1+u2))
        double q1 = cc, q0 = 1.0;   // cos(k <l,X> angle)
        double inner = 0.5 * (m1 - p1) * q1;  // k=1, weight 1
        for (int k = 2; k <= k_max_; ++k) {
            const double m2 = 2.0 * cm * m1 - m0;
            const double p2 = 2.0 * cp * p1 - p0;
            const double q2 = 2.0 * cc * q1 - q0;
            m0 = m1; m1 = m2;
            p0 = p1; p1 = p2;
            q0 = q1; q1 = q2;
            inner += 0.5 * (m1 - p1) * q1 * inv_k2_[static_cast<std::size_t>(k)];
        }
        acc.add(inv_num_[v] * inner);
    }
    return prefactor_ * acc.value();
}

std::vector<double> SeriesWorkspace::eval_batch(const std::vector<Vec>& Xs) const {
    // blocks of translations: the cos(k(u1 -+ u2)) recurrences are shared
    // across the block, only the <l,X> recurrence is per-X
    constexpr std::size_t kBlock = 8;
    const std::size_t nx = Xs.size();
    const std::size_t n = inv_num_.size();
    std::vector<NeumaierSum> acc(nx);
    for (std::size_t base = 0; base < nx; base += kBlock) {
        const std::size_t bn = std::min(kBlock, nx - base);
        for (std::size_t v = 0; v < n; ++v) {
            const double cm = cos_dm_[v], cp = cos_dp_[v];
            double qc[kBlock], q1[kBlock], q0[kBlock], inner[kBlock];
            for (std::size_t s = 0; s < bn; ++s) {
                const Vec& X = Xs[base + s];
                qc[s] = std::cos(kTwoPi * (lx_[v] * X(0) + ly_[v] * X(1)));
                q1[s] = qc[s];
                q0[s] = 1.0;
            }
            double m1 = cm, m0 = 1.0, p1 = cp, p0 = 1.0;
            double w = 0.5 * (m1 - p1);
            for (std::size_t s = 0; s < bn; ++s) inner[s] = w * q1[s];
            for (int k = 2; k <= k_max_; ++k) {
                const double m2 = 2.0 * cm * m1 - m0;
                const double p2 = 2.0 * cp * p1 - p0;
                m0 = m1; m1 = m2;
                p0 = p1; p1 = p2;
                w = 0.5 * (m1 - p1) * inv_k2_[static_cast<std::size_t>(k)];
                for (std::size_t s = 0; s < bn; ++s) {
                    const double q2 = 2.0 * qc[s] * q1[s] - q0[s];
                    q0[s] = q1[s];
                    q1[s] = q2;
                    inner[s] += w * q2;
                }
            }
            for (std::size_t s = 0; s < bn; ++s) acc[base + s].add(inv_num_[v] * inner[s]);
        }
    }
    std::vector<double> out(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i) out[i] = prefactor_ * acc[i].value();
    return out;
}

SeriesWorkspace::GridMean SeriesWorkspace::grid_mean(int n) const {
    if (n < 2) throw DomainError("grid_mean needs n >= 2");
    // S at the midpoint grid X = D*(i+1/2, j+1/2)/n of the torus spanned by
    // the dual basis D. For l with integer coordinates (c1,c2) in M,
    // <l, D u> = c . u, so the angle at grid node (i,j) is
    // pi * K / n with K = (2 c1 i + 2 c2 j + c1 + c2) mod 2n.
    // Stream over vectors: build the k-summed table over K once per vector,
    // then scatter-add into the S grid.
    const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<double> grid(nn, 0.0);
    std::vector<double> table(2 * static_cast<std::size_t>(n), 0.0);
    const std::size_t nv = inv_num_.size();
    const double theta0 = kPi / static_cast<double>(n);
    for (std::size_t v = 0; v < nv; ++v) {
        const double cm = cos_dm_[v], cp = cos_dp_[v];
        const int parity = ((c1_[v] + c2_[v]) % 2 + 2) % 2;
        for (int K = parity; K < 2 * n; K += 2) {
            const double cc = std::cos(theta0 * static_cast<double>(K));
            double m1 = cm, m0 = 1.0, p1 = cp, p0 = 1.0, q1 = cc, q0 = 1.0;
            double inner = 0.5 * (m1 - p1) * q1;
            for (int k = 2; k <= k_max_; ++k) {
                const double m2 = 2.0 * cm * m1 - m0;
                const double p2 = 2.0 * cp * p1 - p0;
                const double q2 = 2.0 * cc * q1 - q0;
                m0 = m1; m1 = m2;
                p0 = p1; p1 = p2;
                q0 = q1; q1 = q2;
                inner += 0.5 * (m1 - p1) * q1 * inv_k2_[static_cast<std::size_t>(k)];
            }
            table[static_cast<std::size_t>(K)] = inv_num_[v] * inner;
        }
        const int two_n = 2 * n;
        const int dc1 = ((2 * c1_[v]) % two_n + two_n) % two_n;
        const int dc2 = ((2 * c2_[v]) % two_n + two_n) % two_n;
        int Krow = ((c1_[v] + c2_[v]) % two_n + two_n) % two_n;
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i) {
            int K = Krow;
            for (int j = 0; j < n; ++j, ++idx) {
                grid[idx] += table[static_cast<std::size_t>(K)];
                K += dc2;
                if (K >= two_n) K -= two_n;
            }
            Krow += dc1;
            if (Krow >= two_n) Krow -= two_n;
        }
    }
    NeumaierSum s1, s2;
    for (double g : grid) {
        const double sv = prefactor_ * g;
        s1.add(sv);
        s2.add(sv * sv);
    }
    return {s1.value() / static_cast<double>(nn), s2.value() / static_cast<double>(nn)};
}

SeriesValue fourier_series_s(const LatticeBasis& M, const RectWindow& P, double t,
                             const TorusPoint& X, const TruncationSpec& trunc, std::int64_t cap) {
    SeriesWorkspace ws(M, P, t, trunc, cap);
    return {ws.eval(X.X), ws.tail_bound()};
}

SpectralSums g_terms(const LatticeBasis& M, const RectWindow& P, double t,
                     const TruncationSpec& trunc, std::int64_t cap) {
    const int K = trunc.k_max;
    const std::vector<double> w4 = inv_powers(K, 4);
    double zeta4_partial = 0.0;
    for (int k = 1; k <= K; ++k) zeta4_partial += w4[static_cast<std::size_t>(k)];

    NeumaierSum v_sum, g_sum, g2_sum, g3_sum, g4_sum, abs_sum;
    scan_spectral(
        M, t, cap, [&](double num) { v_sum.add(1.0 / (num * num)); },
        [&](long long, long long, double x, double y, double num) {
            const double u1 = kTwoPi * t * x * P.a;
            const double u2 = kTwoPi * t * y * P.b;
            const double su1 = std::sin(u1), cu1 = std::cos(u1);
            const double su2 = std::sin(u2), cu2 = std::cos(u2);
            const double c2u1 = 1.0 - 2.0 * su1 * su1;  // cos(2 u1)
            const double c2u2 = 1.0 - 2.0 * su2 * su2;
            // recurrences: sin(k u), cos(2 k u)
            double s1p = su1, s1pp = 0.0, s2p = su2, s2pp = 0.0;
            double d1p = c2u1, d1pp = 1.0, d2p = c2u2, d2pp = 1.0;
            double g = su1 * su1 * su2 * su2;
            double g2 = c2u1, g3 = c2u2, g4 = c2u1 * c2u2;
            for (int k = 2; k <= K; ++k) {
                const double s1 = 2.0 * cu1 * s1p - s1pp;
                const double s2 = 2.0 * cu2 * s2p - s2pp;
                const double d1 = 2.0 * c2u1 * d1p - d1pp;
                const double d2 = 2.0 * c2u2 * d2p - d2pp;
                s1pp = s1p; s1p = s1;
                s2pp = s2p; s2p = s2;
                d1pp = d1p; d1p = d1;
                d2pp = d2p; d2p = d2;
                const double w = w4[static_cast<std::size_t>(k)];
                g += s1 * s1 * s2 * s2 * w;
                g2 += d1 * w;
                g3 += d2 * w;
                g4 += d1 * d2 * w;
            }
            const double inv2 = 1.0 / (num * num);
            g_sum.add(inv2 * g);
            g2_sum.add(inv2 * g2);
            g3_sum.add(inv2 * g3);
            g4_sum.add(inv2 * g4);
            abs_sum.add(inv2);
        });

    const double covol2 = M.covol() * M.covol();
    const double pi4 = kPi * kPi * kPi * kPi;
    const double pref_g = 2.0 * covol2 / pi4;
    const double pref_half = 0.5 * covol2 / pi4;

    SpectralSums out;
    out.t = t;
    out.k_max = K;
    out.V = v_sum.value();
    out.G = pref_g * g_sum.value();
    out.G1 = pref_half * abs_sum.value() * zeta4_partial;
    out.G2 = pref_half * g2_sum.value();
    out.G3 = pref_half * g3_sum.value();
    out.G4 = pref_half * g4_sum.value();
    out.truncation_error = pref_g * abs_sum.value() * trunc.k4_tail();
    return out;
}

double residual_r_minus_s(const LatticeBasis& L_count, const RectWindow& P, double t, int n_x,
                          const TruncationSpec& trunc, std::uint64_t seed, std::int64_t cap) {
    if (n_x < 1) throw DomainError("residual_r_minus_s needs n_x >= 1");
    const LatticeBasis M = dual_lattice(L_count);
    const double V = big_v(M, t, cap);
    if (!(V > 0.0)) throw DomainError("V(dual L, t) vanishes; enlarge t");
    SeriesWorkspace ws(M, P, t, trunc, cap);

    std::vector<Vec> Xs;
    Xs.reserve(static_cast<std::size_t>(n_x));
    std::vector<TorusPoint> pts;
    pts.reserve(static_cast<std::size_t>(n_x));
    for (int i = 0; i < n_x; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        TorusPoint X(L_count, rng.next_double(), rng.next_double());
        Xs.push_back(X.X);
        pts.push_back(X);
    }
    const std::vector<double> s_vals = ws.eval_batch(Xs);
    NeumaierSum acc;
    for (int i = 0; i < n_x; ++i) {
        const double r = count_error(L_count, P, t, pts[static_cast<std::size_t>(i)], cap);
        const double d = r - s_vals[static_cast<std::size_t>(i)];
        acc.add(d * d);
    }
    return acc.value() / (static_cast<double>(n_x) * V);
}

}  // namespace latlab
