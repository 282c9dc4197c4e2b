#pragma once

#include "latlab/lattice.hpp"
#include "latlab/rng.hpp"
#include "latlab/types.hpp"

#include <cstdint>
#include <vector>

namespace latlab {

// Integer exponent vector (t1,...,td) with sum 0; the group element is
// Diag(e^t1,...,e^td). r bounds the Euclidean norm of the exponent vector.
struct OrbitElement {
    Eigen::Vector3i exponents = Eigen::Vector3i::Zero();  // last entry unused for d = 2
    int d = 2;
    double norm = 0.0;
    Mat action() const;
};

std::vector<OrbitElement> enumerate_orbit(int d, double r);

struct SignModel {
    enum class Kind { Rademacher, UniformSymmetric, ConstantOne };
    Kind kind = Kind::Rademacher;

    static SignModel rademacher() { return {Kind::Rademacher}; }
    static SignModel uniform_symmetric() { return {Kind::UniformSymmetric}; }
    // degenerate test hook: every draw is +1 (not symmetric)
    static SignModel constant_one() { return {Kind::ConstantOne}; }

    double second_moment() const { return 1.0; }
    double third_abs_moment() const {
        switch (kind) {
            case Kind::UniformSymmetric: return 1.2990381056766579701455847561294;  // 3*sqrt(3)/4
            default: return 1.0;
        }
    }
    double draw(Rng& rng) const;
};

// Per-element shortest-vector data along the orbit. norms[i] = ||delta_i L||
// with delta_i = elems[i].action(), computed by walking the orbit and
// re-reducing at each unit step (equivalent bases throughout, so the values
// match reduce_basis applied to each Diag(e^t) B directly, without the
// precision loss of reducing an e^t-skewed basis from scratch).
struct OrbitNorms {
    std::vector<OrbitElement> elems;
    std::vector<double> norms;
    double v_tilde = 0.0;  // sum ||delta L||^(-2d)
    double t1_raw = 0.0;   // sum ||delta L||^(-3d)
};

OrbitNorms orbit_v_and_norms(const LatticeBasis& L, int d, double r);

// Per trial: S~ / sqrt(V~) with S~ = sum theta_delta ||delta L||^(-d).
// The theta draw for a given (trial, exponent vector) does not depend on r,
// so runs at increasing r are coupled ("same omega").
std::vector<double> simulate_s_tilde(const LatticeBasis& L, int d, double r,
                                     const SignModel& model, int trials, std::uint64_t seed);

struct OrbitStats {
    double r = 0.0;
    std::size_t count = 0;
    double v_tilde = 0.0;
    double t1_sum = 0.0;    // t1_raw * E|theta|^3
    double be_bound = 0.0;  // 40 * t1_sum / (v_tilde * E theta^2)^(3/2)
};

OrbitStats make_orbit_stats(const OrbitNorms& norms, const SignModel& model, double r);

struct BerryEsseenCheck {
    double ks_distance = 0.0;
    double be_bound = 0.0;
    bool pass = false;
};

// One-sample KS distance of the normalized values against the standard
// normal, compared with the Berry-Esseen envelope plus sampling slack
// 1.36/sqrt(n).
BerryEsseenCheck berry_esseen_check(const std::vector<double>& values, const OrbitStats& stats);

// d^(-d/2) * min_{delta in Delta_r} ||delta L||^d; nonincreasing in r.
double num_via_orbit(const LatticeBasis& L, int d, double r);

// (1/|Delta_r|) sum min(m, ||delta L||^(-2)); d = 2 only.
double ergodic_average(const LatticeBasis& L, double r, double m);

}  // namespace latlab
