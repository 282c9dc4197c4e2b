// Orbit sums over Delta_r. The diagonal flow is hyperbolic: a basis
// perturbation of size eps injected at one step grows like e^(2k) after k
// further steps, so double precision cannot follow ||delta L|| past
// exponents around 18 (the computed pseudo-orbit then behaves like a
// typical lattice and falls into the cusp, which is exactly what admissible
// orbits never do). The d = 2 walk therefore keeps the reduced basis as an
// exact integer coordinate matrix and evaluates the quadratic form
//
//   e^(2j) u(c)^2 + e^(-2j) v(c)^2,   (u,v) = B c,
//
// in fixed 1536-bit floats, with e^(+-2j) accumulated as powers of one
// dyadic base. Reduction decisions are then exact; the only approximation
// is a relative O(j * 1e-16) shift of the flow time, in which the norms are
// smooth (Lipschitz), not chaotic.
//
// d = 3 stays in doubles: every tested radius keeps the exponents at desk
// scale, where the amplification argument above is harmless.

#include "latlab/orbit.hpp"

#include "latlab/precise_basis.hpp"
#include "latlab/stats.hpp"

#include <gmpxx.h>

#include <cmath>
#include <limits>

namespace latlab {

namespace {

constexpr double kE = 2.71828182845904523536028747135266250;
constexpr int kWalkBits = 1536;

void check_unimodular(const LatticeBasis& L) {
    if (std::abs(L.covol() - 1.0) > 1e-9) {
        throw NotUnimodular("orbit statistics need covol(L) = 1 (use the unimodular flag)");
    }
}

// stable identity of an exponent vector, independent of r
std::uint64_t element_key(const Eigen::Vector3i& e) {
    const std::uint64_t off = 1u << 20;
    return (static_cast<std::uint64_t>(e(0) + static_cast<int>(off)) << 42) ^
           (static_cast<std::uint64_t>(e(1) + static_cast<int>(off)) << 21) ^
           static_cast<std::uint64_t>(e(2) + static_cast<int>(off));
}

// Exact Gauss-reduced walk along j -> Diag(e^j, e^-j), one direction of j.
// Column coordinates are exact integers; weight = e^(-4j) and the output
// scale e^(2j) are accumulated as powers of dyadic bases.
class ExactWalk2D {
  public:
    // rows (r11, r12) and (r21, r22) of the basis, at full precision
    ExactWalk2D(const mpf_class& r11, const mpf_class& r12, const mpf_class& r21,
                const mpf_class& r22)
        : b11_(r11, kWalkBits),
          b12_(r12, kWalkBits),
          b21_(r21, kWalkBits),
          b22_(r22, kWalkBits),
          weight_(1.0, kWalkBits),
          out_scale_(1.0, kWalkBits),
          q_(mpf_class(1.0, kWalkBits)),
          e2_(mpf_class(kE, kWalkBits) * mpf_class(kE, kWalkBits)) {
        q_ = mpf_class(1.0, kWalkBits) / (e2_ * e2_);  // e^-4
        c_[0][0] = 1;
        c_[1][0] = 0;
        c_[0][1] = 0;
        c_[1][1] = 1;
        reduce();
    }

    // advance j by one and return ||Diag(e^j, e^-j) B c1||
    double step() {
        weight_ *= q_;
        out_scale_ *= e2_;
        reduce();
        return shortest_norm();
    }

    double shortest_norm() const {
        mpf_class n2 = form(0, 0);
        n2 *= out_scale_;
        return std::sqrt(n2.get_d());
    }

  private:
    // u,v coordinates of column i
    void uv(int i, mpf_class& u, mpf_class& v) const {
        mpf_class x(c_[0][i], kWalkBits), y(c_[1][i], kWalkBits);
        u = b11_ * x + b12_ * y;
        v = b21_ * x + b22_ * y;
    }

    // scaled Gram entry <w_i, w_j> * e^(-2j) = u_i u_j + weight * v_i v_j
    mpf_class form(int i, int j) const {
        mpf_class ui(0, kWalkBits), vi(0, kWalkBits), uj(0, kWalkBits), vj(0, kWalkBits);
        uv(i, ui, vi);
        uv(j, uj, vj);
        return ui * uj + weight_ * (vi * vj);
    }

    void reduce() {
        if (form(0, 0) > form(1, 1)) swap_cols();
        for (int guard = 0; guard < 20000; ++guard) {
            mpf_class ratio = form(0, 1) / form(0, 0);
            mpf_class shifted(0, kWalkBits);
            if (ratio >= 0) {
                shifted = ratio + 0.5;
            } else {
                shifted = ratio - 0.5;
            }
            mpz_class mu(0);
            mpz_set_f(mu.get_mpz_t(), shifted.get_mpf_t());  // truncates toward zero
            if (mu != 0) {
                c_[0][1] -= mu * c_[0][0];
                c_[1][1] -= mu * c_[1][0];
            }
            if (form(1, 1) >= form(0, 0)) break;
            swap_cols();
        }
    }

    void swap_cols() {
        std::swap(c_[0][0], c_[0][1]);
        std::swap(c_[1][0], c_[1][1]);
    }

    mpz_class c_[2][2];
    mpf_class b11_, b12_, b21_, b22_;
    mpf_class weight_;     // e^(-4j)
    mpf_class out_scale_;  // e^(+2j)
    mpf_class q_, e2_;
};

// Walk Delta_r from the identity in unit diagonal steps. Negative j is the
// positive walk of the coordinate-swapped basis (swapping the two rows of B
// conjugates Diag(e^j, e^-j) into Diag(e^-j, e^j) and preserves norms).
template <class Emit>
void walk_orbit_2d(const LatticeBasis& L, double r, Emit&& emit) {
    const long long jmax = static_cast<long long>(std::floor(r / std::sqrt(2.0) + 1e-9));
    const auto p = L.precise();
    ExactWalk2D up(p->b11, p->b12, p->b21, p->b22);
    emit(Eigen::Vector3i(0, 0, 0), 2, 0.0, up.shortest_norm());
    for (long long j = 1; j <= jmax; ++j) {
        const double nm = up.step();
        emit(Eigen::Vector3i(static_cast<int>(j), static_cast<int>(-j), 0), 2,
             std::sqrt(2.0) * static_cast<double>(j), nm);
    }
    ExactWalk2D down(p->b21, p->b22, p->b11, p->b12);
    for (long long j = 1; j <= jmax; ++j) {
        const double nm = down.step();
        emit(Eigen::Vector3i(static_cast<int>(-j), static_cast<int>(j), 0), 2,
             std::sqrt(2.0) * static_cast<double>(j), nm);
    }
}

// d = 3: exponent vectors t(a,b) = (a, b-a, -b). Row anchors move along a
// (step Diag(e,1/e,1)), each row walks b (step Diag(1,e,1/e)).
template <class Emit>
void walk_orbit_3d(const LatticeBasis& L, double r, Emit&& emit) {
    Mat a_up(3, 3), a_dn(3, 3), b_up(3, 3), b_dn(3, 3);
    a_up << kE, 0, 0, 0, 1.0 / kE, 0, 0, 0, 1.0;
    a_dn << 1.0 / kE, 0, 0, 0, kE, 0, 0, 0, 1.0;
    b_up << 1.0, 0, 0, 0, kE, 0, 0, 0, 1.0 / kE;
    b_dn << 1.0, 0, 0, 0, 1.0 / kE, 0, 0, 0, kE;

    const double r2 = r * r;
    auto norm2_of = [](long long a, long long b) {
        const double aa = static_cast<double>(a), bb = static_cast<double>(b);
        return aa * aa + (bb - aa) * (bb - aa) + bb * bb;
    };
    auto walk_row = [&](long long a, const LatticeBasis& anchor) {
        // b range: 2b^2 - 2ab + 2a^2 <= r^2
        const double disc = 2.0 * r2 - 3.0 * static_cast<double>(a) * static_cast<double>(a);
        if (disc < 0.0) return;
        const double s = std::sqrt(disc);
        const long long blo = static_cast<long long>(std::ceil((static_cast<double>(a) - s) / 2.0 - 1e-9));
        const long long bhi = static_cast<long long>(std::floor((static_cast<double>(a) + s) / 2.0 + 1e-9));
        auto emit_if_inside = [&](long long b, const LatticeBasis& cur) {
            const double n2 = norm2_of(a, b);
            if (n2 <= r2 * (1.0 + 1e-12)) {
                emit(Eigen::Vector3i(static_cast<int>(a), static_cast<int>(b - a),
                                     static_cast<int>(-b)),
                     3, std::sqrt(n2), *cur.reduced_shortest());
            }
        };
        emit_if_inside(0, anchor);
        LatticeBasis cur = anchor;
        for (long long b = 1; b <= bhi; ++b) {
            cur = reduce_basis(LatticeBasis(Mat(b_up * cur.basis())));
            emit_if_inside(b, cur);
        }
        cur = anchor;
        for (long long b = -1; b >= blo; --b) {
            cur = reduce_basis(LatticeBasis(Mat(b_dn * cur.basis())));
            emit_if_inside(b, cur);
        }
    };

    const long long amax = static_cast<long long>(std::floor(r * std::sqrt(2.0 / 3.0) + 1e-9));
    LatticeBasis anchor0 = reduce_basis(L);
    walk_row(0, anchor0);
    LatticeBasis anchor = anchor0;
    for (long long a = 1; a <= amax; ++a) {
        anchor = reduce_basis(LatticeBasis(Mat(a_up * anchor.basis())));
        walk_row(a, anchor);
    }
    anchor = anchor0;
    for (long long a = -1; a >= -amax; --a) {
        anchor = reduce_basis(LatticeBasis(Mat(a_dn * anchor.basis())));
        walk_row(a, anchor);
    }
}

}  // namespace

Mat OrbitElement::action() const {
    Mat m = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = std::exp(static_cast<double>(exponents(i)));
    return m;
}

std::vector<OrbitElement> enumerate_orbit(int d, double r) {
    if (d != 2 && d != 3) throw DomainError("orbit dimension must be 2 or 3");
    if (r < 0.0) throw DomainError("orbit radius must be nonnegative");
    std::vector<OrbitElement> out;
    if (d == 2) {
        const long long jmax = static_cast<long long>(std::floor(r / std::sqrt(2.0) + 1e-9));
        for (long long j = -jmax; j <= jmax; ++j) {
            OrbitElement e;
            e.d = 2;
            e.exponents = Eigen::Vector3i(static_cast<int>(j), static_cast<int>(-j), 0);
            e.norm = std::sqrt(2.0) * static_cast<double>(std::llabs(j));
            out.push_back(e);
        }
        return out;
    }
    const long long m = static_cast<long long>(std::floor(r + 1e-9));
    for (long long t1 = -m; t1 <= m; ++t1) {
        for (long long t2 = -m; t2 <= m; ++t2) {
            const long long t3 = -t1 - t2;
            const double n2 = static_cast<double>(t1 * t1 + t2 * t2 + t3 * t3);
            if (n2 > r * r * (1.0 + 1e-12)) continue;
            OrbitElement e;
            e.d = 3;
            e.exponents = Eigen::Vector3i(static_cast<int>(t1), static_cast<int>(t2),
                                          static_cast<int>(t3));
            e.norm = std::sqrt(n2);
            out.push_back(e);
        }
    }
    return out;
}

double SignModel::draw(Rng& rng) const {
    switch (kind) {
        case Kind::Rademacher: return (rng.next_u64() & 1u) ? 1.0 : -1.0;
        case Kind::UniformSymmetric:
            return 1.7320508075688772935274463415059 * (2.0 * rng.next_double() - 1.0);
        case Kind::ConstantOne: return 1.0;
    }
    return 1.0;
}

OrbitNorms orbit_v_and_norms(const LatticeBasis& L, int d, double r) {
    if (d != 2 && d != 3) throw DomainError("orbit dimension must be 2 or 3");
    if (L.dim() != d) throw DomainError("lattice dimension does not match d");
    if (r < 0.0) throw DomainError("orbit radius must be nonnegative");
    check_unimodular(L);
    OrbitNorms out;
    auto emit = [&](const Eigen::Vector3i& exps, int dd, double enorm, double lattice_norm) {
        OrbitElement el;
        el.exponents = exps;
        el.d = dd;
        el.norm = enorm;
        out.elems.push_back(el);
        out.norms.push_back(lattice_norm);
    };
    if (d == 2) {
        walk_orbit_2d(L, r, emit);
    } else {
        walk_orbit_3d(L, r, emit);
    }
    NeumaierSum v, t1;
    for (double nm : out.norms) {
        const double inv = 1.0 / nm;
        double inv_d = 1.0;
        for (int i = 0; i < d; ++i) inv_d *= inv;
        v.add(inv_d * inv_d);
        t1.add(inv_d * inv_d * inv_d);
    }
    out.v_tilde = v.value();
    out.t1_raw = t1.value();
    return out;
}

std::vector<double> simulate_s_tilde(const LatticeBasis& L, int d, double r,
                                     const SignModel& model, int trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("simulate_s_tilde needs trials >= 1");
    const OrbitNorms on = orbit_v_and_norms(L, d, r);
    const double sqrt_v = std::sqrt(on.v_tilde);
    std::vector<double> weights(on.norms.size());
    std::vector<std::uint64_t> keys(on.norms.size());
    for (std::size_t i = 0; i < on.norms.size(); ++i) {
        double inv = 1.0 / on.norms[i];
        double w = 1.0;
        for (int k = 0; k < d; ++k) w *= inv;
        weights[i] = w;
        keys[i] = element_key(on.elems[i].exponents);
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(trial));
        NeumaierSum s;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            Rng rng = substream(trial_seed, keys[i]);
            s.add(model.draw(rng) * weights[i]);
        }
        out.push_back(s.value() / sqrt_v);
    }
    return out;
}

OrbitStats make_orbit_stats(const OrbitNorms& norms, const SignModel& model, double r) {
    OrbitStats st;
    st.r = r;
    st.count = norms.norms.size();
    st.v_tilde = norms.v_tilde;
    st.t1_sum = norms.t1_raw * model.third_abs_moment();
    const double v1 = norms.v_tilde * model.second_moment();
    st.be_bound = v1 > 0.0 ? 40.0 * st.t1_sum / std::pow(v1, 1.5)
                           : std::numeric_limits<double>::infinity();
    return st;
}

BerryEsseenCheck berry_esseen_check(const std::vector<double>& values, const OrbitStats& stats) {
    if (values.empty()) throw DomainError("berry_esseen_check needs a nonempty sample");
    BerryEsseenCheck out;
    out.ks_distance = ks_distance_normal(values);
    out.be_bound = stats.be_bound;
    const double slack = 1.36 / std::sqrt(static_cast<double>(values.size()));
    out.pass = out.ks_distance <= out.be_bound + slack;
    return out;
}

double num_via_orbit(const LatticeBasis& L, int d, double r) {
    const OrbitNorms on = orbit_v_and_norms(L, d, r);
    double mn = std::numeric_limits<double>::infinity();
    for (double nm : on.norms) mn = std::min(mn, nm);
    double md = 1.0;
    for (int i = 0; i < d; ++i) md *= mn;
    return std::pow(static_cast<double>(d), -0.5 * static_cast<double>(d)) * md;
}

double ergodic_average(const LatticeBasis& L, double r, double m) {
    if (!(m >= 1.0)) throw DomainError("ergodic_average needs m >= 1");
    const OrbitNorms on = orbit_v_and_norms(L, 2, r);
    NeumaierSum s;
    for (double nm : on.norms) s.add(std::min(m, 1.0 / (nm * nm)));
    return s.value() / static_cast<double>(on.norms.size());
}

}  // namespace latlab
