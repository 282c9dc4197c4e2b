#pragma once

#include "latlab/lattice.hpp"
#include "latlab/types.hpp"

#include <cstdint>

namespace latlab {

// Centered axis-aligned rectangle with summits (+-a, +-b); Area = 4ab.
struct RectWindow {
    double a;
    double b;
    RectWindow(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0)) throw DomainError("rectangle needs a > 0 and b > 0");
    }
    double area() const { return 4.0 * a * b; }
};

// Translation vector reduced to the fundamental domain of the counting
// lattice: X = B*frac with frac in [0,1)^2.
struct TorusPoint {
    Vec X;
    Vec frac;
    TorusPoint(const LatticeBasis& L, const Vec& x_raw);
    // From fractional coordinates directly (already in [0,1)^d).
    TorusPoint(const LatticeBasis& L, double u1, double u2);
};

// Exact |(tP + X) ∩ L| for the closed box, by line sweep over the integer
// coefficient whose basis column has the larger second-coordinate magnitude.
// Agrees exactly with naive enumeration.
long long count_points(const LatticeBasis& L, const RectWindow& P, double t, const TorusPoint& X,
                       std::int64_t cap = kDefaultEnumCap);

// N(tP+X, L) - t^2 * Area(P) / covol(L)
double count_error(const LatticeBasis& L, const RectWindow& P, double t, const TorusPoint& X,
                   std::int64_t cap = kDefaultEnumCap);

enum class SampleMode { Random, Grid };

struct MomentEstimate {
    double m2 = 0.0;
    double std_err = 0.0;  // 0 in grid mode
};

// Mean of R(tP+X,L)^2 over X = B*u, u iid uniform on [0,1)^2 (Random) or the
// n_x-by-n_x midpoint grid (Grid). Deterministic given the seed.
MomentEstimate second_moment_over_X(const LatticeBasis& L, const RectWindow& P, double t,
                                    int n_x, std::uint64_t seed, SampleMode mode,
                                    std::int64_t cap = kDefaultEnumCap);

}  // namespace latlab
