#pragma once

#include "latlab/types.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latlab {

struct PreciseBasis;

// Full-rank lattice given by a basis matrix whose columns are the basis
// vectors. Immutable after construction; cheap to copy, safe to share
// across threads. 2-D lattices additionally carry a high-precision view of
// the basis (see precise_basis.hpp) used by the diagonal-orbit walk.
class LatticeBasis {
  public:
    explicit LatticeBasis(const Mat& basis,
                          std::shared_ptr<const PreciseBasis> precise = nullptr);

    int dim() const { return static_cast<int>(basis_.rows()); }
    const Mat& basis() const { return basis_; }
    const Mat& inverse() const { return inverse_; }
    double covol() const { return covol_; }

    // Norm of a shortest nonzero vector; only set on bases produced by
    // reduce_basis.
    std::optional<double> reduced_shortest() const { return reduced_shortest_; }

    // Never null for dim 2 (defaults to the exact dyadic double entries).
    std::shared_ptr<const PreciseBasis> precise() const;

    Vec vector_at(const Eigen::VectorXi& coeffs) const;

  private:
    friend LatticeBasis reduce_basis(const LatticeBasis&);
    Mat basis_;
    Mat inverse_;
    double covol_;
    std::optional<double> reduced_shortest_;
    std::shared_ptr<const PreciseBasis> precise_;
};

// A lattice vector remembered together with its integer coordinates in the
// generating basis. num = l1*l2 (*l3 in dim 3).
struct FreqVector {
    Vec coords;
    Eigen::VectorXi int_coords;
    double num = 0.0;
    double norm = 0.0;
    bool is_prime = false;
};

struct QuadraticPair {
    double alpha;
    double alpha_prime;
    QuadraticPair(double a, double ap);
};

enum class VectorFilter { All, PrimePositive };

LatticeBasis make_zsquare();
LatticeBasis make_quad(const QuadraticPair& q);
LatticeBasis make_quad(double alpha, double alpha_prime);
LatticeBasis make_basis2(double b11, double b21, double b12, double b22);
// Rescale to covolume 1.
LatticeBasis make_unimodular(const LatticeBasis& L);

// Generator of (1/(alpha'-alpha)) * {(n + m alpha, n + m alpha')}; used to
// cross-check the inverse-transpose dual (the two vector sets agree after
// (u,v) |-> (v,-u), which preserves norms and |num|).
LatticeBasis make_quad_dual_generator(double alpha, double alpha_prime);

LatticeBasis dual_lattice(const LatticeBasis& L);

// Equivalent basis (same vector set) with b1 a shortest nonzero vector.
// dim 2: Lagrange-Gauss, so also |<b1,b2>| <= |b1|^2/2 and |b1| <= |b2|.
// dim 3: size reduction followed by an exhaustive ball search.
LatticeBasis reduce_basis(const LatticeBasis& L);

inline constexpr std::int64_t kDefaultEnumCap = 100000000;  // 1e8

// All nonzero vectors with ||l|| <= t (closed ball). PrimePositive keeps
// vectors with coprime integer coordinates and l1 > 0 (strict).
std::vector<FreqVector> enumerate_vectors(const LatticeBasis& L, double t,
                                          VectorFilter filter = VectorFilter::All,
                                          std::int64_t cap = kDefaultEnumCap);

// min |l1*l2*...| over the nonzero vectors of the ball; a nonincreasing-in-t
// upper estimate of the lattice's Num.
double num_of_lattice(const LatticeBasis& L, double t, std::int64_t cap = kDefaultEnumCap);

// Unimodular lattice drawn from the hyperbolic measure on the modular
// surface with a uniform rotation fiber. x = sin(theta), theta uniform on
// [-pi/6, pi/6]; y = sqrt(1-x^2)/u, u uniform on (0,1]; then a random
// rotation. Deterministic given the seed.
LatticeBasis sample_haar_lattice_2d(std::uint64_t seed);

// `zsquare | quad:<a>,<ap> | basis:<b11>,<b21>,<b12>,<b22> | haar:<seed>`
// with optional suffix `!unimodular`; reals in decimal or `sqrt:<n>`.
LatticeBasis parse_lattice_spec(std::string_view spec);
double parse_real(std::string_view text);

// Integer coordinates of l in the basis of L, verified by reconstruction
// within 1e-9*(1+||l||).
Eigen::VectorXi integer_coords(const LatticeBasis& L, const Vec& l);
bool has_integer_coords(const LatticeBasis& L, const Vec& l, double tol = 1e-9);

// |num| below 1e-12*max(1, ||l||^2) counts as exactly zero.
inline bool num_is_zero(double num, double norm_sq) {
    double s = norm_sq > 1.0 ? norm_sq : 1.0;
    return std::abs(num) < 1e-12 * s;
}

}  // namespace latlab
