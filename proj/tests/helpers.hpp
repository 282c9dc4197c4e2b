#pragma once

#include "latlab/counting.hpp"
#include "latlab/lattice.hpp"
#include "latlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace latlab::testing {

// brute-force ball enumeration: double loop over a safely padded
// coefficient box, closed-ball norm test
inline std::vector<FreqVector> naive_enumerate(const LatticeBasis& L, double t) {
    const Mat& b = L.basis();
    const Mat& inv = L.inverse();
    long long r0 = static_cast<long long>(std::floor(t * inv.row(0).norm())) + 2;
    long long r1 = static_cast<long long>(std::floor(t * inv.row(1).norm())) + 2;
    std::vector<FreqVector> out;
    for (long long i = -r0; i <= r0; ++i) {
        for (long long j = -r1; j <= r1; ++j) {
            if (i == 0 && j == 0) continue;
            Vec l = b.col(0) * static_cast<double>(i) + b.col(1) * static_cast<double>(j);
            if (l.squaredNorm() > t * t) continue;
            FreqVector v;
            v.coords = l;
            v.int_coords = Eigen::VectorXi(2);
            v.int_coords << static_cast<int>(i), static_cast<int>(j);
            v.norm = l.norm();
            v.num = l(0) * l(1);
            v.is_prime = std::gcd(std::llabs(i), std::llabs(j)) == 1;
            out.push_back(v);
        }
    }
    return out;
}

// brute-force closed-box count with the same membership predicate as the
// line sweep
inline long long naive_count(const LatticeBasis& L, const RectWindow& P, double t,
                             const TorusPoint& X) {
    const Mat& b = L.basis();
    const Mat& inv = L.inverse();
    const double lo1 = X.X(0) - t * P.a, hi1 = X.X(0) + t * P.a;
    const double lo2 = X.X(1) - t * P.b, hi2 = X.X(1) + t * P.b;
    const double c0 = inv.row(0).dot(X.X);
    const double c1 = inv.row(1).dot(X.X);
    const double r0 = t * (std::abs(inv(0, 0)) * P.a + std::abs(inv(0, 1)) * P.b);
    const double r1 = t * (std::abs(inv(1, 0)) * P.a + std::abs(inv(1, 1)) * P.b);
    long long total = 0;
    for (long long i = static_cast<long long>(std::floor(c0 - r0)) - 2;
         i <= static_cast<long long>(std::ceil(c0 + r0)) + 2; ++i) {
        for (long long j = static_cast<long long>(std::floor(c1 - r1)) - 2;
             j <= static_cast<long long>(std::ceil(c1 + r1)) + 2; ++j) {
            const double x = b(0, 0) * static_cast<double>(i) + b(0, 1) * static_cast<double>(j);
            const double y = b(1, 0) * static_cast<double>(i) + b(1, 1) * static_cast<double>(j);
            if (x >= lo1 && x <= hi1 && y >= lo2 && y <= hi2) ++total;
        }
    }
    return total;
}

// well-conditioned random 2x2 basis, entries in [-2,2], |det| >= 0.5
inline LatticeBasis random_lattice(Rng& rng) {
    for (;;) {
        Mat b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b(i, j) = 4.0 * rng.next_double() - 2.0;
        if (std::abs(b.determinant()) >= 0.5) return LatticeBasis(b);
    }
}

// admissible-in-practice random lattice: a quadratic pair with alpha in
// [0.6, 2.5] and alpha' in [-2.5, -0.6]
inline LatticeBasis random_quad(Rng& rng) {
    const double a = 0.6 + 1.9 * rng.next_double();
    const double ap = -0.6 - 1.9 * rng.next_double();
    return make_quad(a, ap);
}

inline std::vector<std::pair<double, double>> sorted_coords(const std::vector<FreqVector>& vs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.emplace_back(v.coords(0), v.coords(1));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool same_vector_sets(const std::vector<FreqVector>& a, const std::vector<FreqVector>& b,
                             double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    auto sa = sorted_coords(a);
    auto sb = sorted_coords(b);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (std::abs(sa[i].first - sb[i].first) > tol ||
            std::abs(sa[i].second - sb[i].second) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace latlab::testing
