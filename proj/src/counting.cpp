#include "latlab/counting.hpp"

#include "latlab/rng.hpp"
#include "latlab/stats.hpp"

#include <cmath>
#include <vector>

namespace latlab {

TorusPoint::TorusPoint(const LatticeBasis& L, const Vec& x_raw) {
    if (L.dim() != 2) throw DomainError("counting is 2-D only");
    Vec c = L.inverse() * x_raw;
    frac = Vec(2);
    for (int i = 0; i < 2; ++i) frac(i) = c(i) - std::floor(c(i));
    X = L.basis() * frac;
}

TorusPoint::TorusPoint(const LatticeBasis& L, double u1, double u2) {
    if (L.dim() != 2) throw DomainError("counting is 2-D only");
    frac = Vec(2);
    frac(0) = u1;
    frac(1) = u2;
    X = L.basis() * frac;
}

namespace {

struct Box {
    double lo1, hi1, lo2, hi2;
    bool contains(double x, double y) const {
        return x >= lo1 && x <= hi1 && y >= lo2 && y <= hi2;
    }
};

// Intersect the feasible interval for the solved coefficient with one linear
// constraint lo <= base + coeff * n <= hi.
bool intersect(double base, double coeff, double lo, double hi, double& L, double& U) {
    if (coeff == 0.0) return base >= lo && base <= hi;  // all-or-nothing
    double a = (lo - base) / coeff;
    double b = (hi - base) / coeff;
    if (a > b) std::swap(a, b);
    if (a > L) L = a;
    if (b < U) U = b;
    return true;
}

}  // namespace

long long count_points(const LatticeBasis& L, const RectWindow& P, double t, const TorusPoint& X,
                       std::int64_t cap) {
    if (!(t > 0.0)) throw DomainError("count_points needs t > 0");
    const Mat& B = L.basis();
    const Mat& inv = L.inverse();
    const Box box{X.X(0) - t * P.a, X.X(0) + t * P.a, X.X(1) - t * P.b, X.X(1) + t * P.b};

    // swept coefficient: the column with the larger |second coordinate|
    const int p = std::abs(B(1, 0)) >= std::abs(B(1, 1)) ? 0 : 1;
    const int q = 1 - p;
    const double Bp1 = B(0, p), Bp2 = B(1, p);
    const double Bq1 = B(0, q), Bq2 = B(1, q);

    // range of the swept coefficient over the box, from the inverse row
    const double cp = inv.row(p).dot(X.X);
    const double rp = t * (std::abs(inv(p, 0)) * P.a + std::abs(inv(p, 1)) * P.b);
    const long long np_lo = static_cast<long long>(std::ceil(cp - rp - 1e-9));
    const long long np_hi = static_cast<long long>(std::floor(cp + rp + 1e-9));
    const double rq = t * (std::abs(inv(q, 0)) * P.a + std::abs(inv(q, 1)) * P.b);
    if ((2.0 * rp + 1.0) * (2.0 * rq + 1.0) > static_cast<double>(cap)) {
        throw BallTooLarge("count_points sweep would exceed the enumeration cap");
    }

    const double slack = 1e-9 * std::max(1.0, t);
    auto inside = [&](long long np, long long nq) {
        const double x = Bp1 * static_cast<double>(np) + Bq1 * static_cast<double>(nq);
        const double y = Bp2 * static_cast<double>(np) + Bq2 * static_cast<double>(nq);
        return box.contains(x, y);
    };

    long long total = 0;
    for (long long np = np_lo; np <= np_hi; ++np) {
        const double base1 = Bp1 * static_cast<double>(np);
        const double base2 = Bp2 * static_cast<double>(np);
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        if (!intersect(base1, Bq1, box.lo1, box.hi1, lo, hi)) continue;
        if (!intersect(base2, Bq2, box.lo2, box.hi2, lo, hi)) continue;
        if (std::isinf(lo) || std::isinf(hi)) {
            throw DegenerateBasis("unbounded sweep line; basis is degenerate");
        }
        long long nq_lo = static_cast<long long>(std::ceil(lo - slack));
        long long nq_hi = static_cast<long long>(std::floor(hi + slack));
        // re-check near-boundary endpoints by direct substitution
        while (nq_lo <= nq_hi && !inside(np, nq_lo)) ++nq_lo;
        while (nq_lo <= nq_hi && !inside(np, nq_hi)) --nq_hi;
        if (nq_lo <= nq_hi) total += nq_hi - nq_lo + 1;
    }
    return total;
}

double count_error(const LatticeBasis& L, const RectWindow& P, double t, const TorusPoint& X,
                   std::int64_t cap) {
    const long long n = count_points(L, P, t, X, cap);
    return static_cast<double>(n) - t * t * P.area() / L.covol();
}

MomentEstimate second_moment_over_X(const LatticeBasis& L, const RectWindow& P, double t,
                                    int n_x, std::uint64_t seed, SampleMode mode,
                                    std::int64_t cap) {
    if (n_x < 2) throw DomainError("second_moment_over_X needs n_x >= 2");
    std::vector<double> values;
    if (mode == SampleMode::Grid) {
        values.reserve(static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_x));
        const double inv_n = 1.0 / static_cast<double>(n_x);
        for (int i = 0; i < n_x; ++i) {
            for (int j = 0; j < n_x; ++j) {
                TorusPoint X(L, (i + 0.5) * inv_n, (j + 0.5) * inv_n);
                double r = count_error(L, P, t, X, cap);
                values.push_back(r * r);
            }
        }
        NeumaierSum s;
        for (double v : values) s.add(v);
        return {s.value() / static_cast<double>(values.size()), 0.0};
    }
    values.reserve(static_cast<std::size_t>(n_x));
    for (int i = 0; i < n_x; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        TorusPoint X(L, u1, u2);
        double r = count_error(L, P, t, X, cap);
        values.push_back(r * r);
    }
    MeanStd ms = mean_std(values);
    return {ms.mean, ms.std_err};
}

}  // namespace latlab
