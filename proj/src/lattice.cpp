#include "latlab/lattice.hpp"

#include "latlab/precise_basis.hpp"
#include "latlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace latlab {

namespace {

double basis_scale(const Mat& b) {
    double s = 0.0;
    for (int j = 0; j < b.cols(); ++j) s = std::max(s, b.col(j).norm());
    return s;
}

std::shared_ptr<const PreciseBasis> precise_from_doubles(const Mat& b) {
    auto p = std::make_shared<PreciseBasis>();
    p->b11 = b(0, 0);
    p->b12 = b(0, 1);
    p->b21 = b(1, 0);
    p->b22 = b(1, 1);
    return p;
}

Mat round_precise(const PreciseBasis& p) {
    Mat b(2, 2);
    b << p.b11.get_d(), p.b12.get_d(), p.b21.get_d(), p.b22.get_d();
    return b;
}

}  // namespace

LatticeBasis::LatticeBasis(const Mat& basis, std::shared_ptr<const PreciseBasis> precise)
    : basis_(basis), precise_(std::move(precise)) {
    if (basis.rows() != basis.cols() || basis.rows() < 2 || basis.rows() > 3) {
        throw DegenerateBasis("basis must be 2x2 or 3x3");
    }
    const double det = basis_.determinant();
    const double scale = basis_scale(basis_);
    if (!(std::abs(det) > 1e-12 * scale * scale)) {
        throw DegenerateBasis("basis determinant is zero or numerically degenerate");
    }
    covol_ = std::abs(det);
    inverse_ = basis_.inverse();
}

std::shared_ptr<const PreciseBasis> LatticeBasis::precise() const {
    if (precise_) return precise_;
    if (dim() != 2) return nullptr;
    return precise_from_doubles(basis_);
}

Vec LatticeBasis::vector_at(const Eigen::VectorXi& coeffs) const {
    return basis_ * coeffs.cast<double>();
}

QuadraticPair::QuadraticPair(double a, double ap) : alpha(a), alpha_prime(ap) {
    if (a == ap) throw EqualRoots("quadratic pair needs alpha != alpha'");
}

LatticeBasis make_zsquare() {
    Mat b(2, 2);
    b << 1, 0, 0, 1;
    return LatticeBasis(b);
}

LatticeBasis make_quad(const QuadraticPair& q) {
    Mat b(2, 2);
    // columns (1,1) and (alpha, alpha'): vectors are (n + m a, n + m a')
    b << 1, q.alpha, 1, q.alpha_prime;
    return LatticeBasis(b);
}

LatticeBasis make_quad(double alpha, double alpha_prime) {
    return make_quad(QuadraticPair(alpha, alpha_prime));
}

LatticeBasis make_basis2(double b11, double b21, double b12, double b22) {
    Mat b(2, 2);
    b << b11, b12, b21, b22;
    return LatticeBasis(b);
}

LatticeBasis make_unimodular(const LatticeBasis& L) {
    if (L.dim() == 2) {
        auto p = L.precise();
        auto scaled = std::make_shared<PreciseBasis>();
        mpf_class c = abs(p->det());
        mpf_class s = 1.0 / sqrt(c);
        scaled->b11 = p->b11 * s;
        scaled->b12 = p->b12 * s;
        scaled->b21 = p->b21 * s;
        scaled->b22 = p->b22 * s;
        return LatticeBasis(round_precise(*scaled), scaled);
    }
    double s = std::pow(L.covol(), -1.0 / static_cast<double>(L.dim()));
    return LatticeBasis(Mat(L.basis() * s));
}

LatticeBasis make_quad_dual_generator(double alpha, double alpha_prime) {
    QuadraticPair q(alpha, alpha_prime);
    double s = 1.0 / (q.alpha_prime - q.alpha);
    Mat b(2, 2);
    b << s, s * q.alpha, s, s * q.alpha_prime;
    return LatticeBasis(b);
}

LatticeBasis dual_lattice(const LatticeBasis& L) {
    if (L.dim() == 2) {
        auto p = L.precise();
        auto d = std::make_shared<PreciseBasis>();
        mpf_class det = p->det();
        // inverse transpose of [[a,b],[c,d]] is (1/det) [[d,-c],[-b,a]]
        d->b11 = p->b22 / det;
        d->b12 = -p->b21 / det;
        d->b21 = -p->b12 / det;
        d->b22 = p->b11 / det;
        return LatticeBasis(round_precise(*d), d);
    }
    Mat d = L.inverse().transpose();
    return LatticeBasis(d);
}

namespace {

// Lagrange-Gauss on the two columns; exact integer column operations, so the
// vector set never changes.
void gauss_reduce_2d(Mat& b) {
    Vec2 b1 = b.col(0), b2 = b.col(1);
    if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);
    for (int guard = 0; guard < 512; ++guard) {
        double mu = std::round(b1.dot(b2) / b1.squaredNorm());
        if (mu != 0.0) b2 -= mu * b1;
        if (b2.squaredNorm() >= b1.squaredNorm()) break;
        std::swap(b1, b2);
    }
    b.col(0) = b1;
    b.col(1) = b2;
}

// Unimodular matrix with first column c (c must have coprime entries).
// Reduce c to e1 by elementary integer row operations, applying the inverse
// column operations to an identity accumulator.
Eigen::Matrix3i unimodular_completion(Eigen::Vector3i c) {
    Eigen::Matrix3i u = Eigen::Matrix3i::Identity();
    auto add_row = [&](int i, int j, long long m) {
        // c_i += m*c_j  =>  accumulator col_j -= m*col_i
        c(i) += static_cast<int>(m) * c(j);
        u.col(j) -= static_cast<int>(m) * u.col(i);
    };
    auto swap_rows = [&](int i, int j) {
        std::swap(c(i), c(j));
        u.col(i).swap(u.col(j));
    };
    auto negate_row = [&](int i) {
        c(i) = -c(i);
        u.col(i) = -u.col(i);
    };
    // Euclid on (c0, c1, c2) until c = +-e1
    for (int guard = 0; guard < 4096; ++guard) {
        if (c(1) == 0 && c(2) == 0) break;
        int p = 0;
        for (int i = 1; i < 3; ++i) {
            if (c(i) != 0 && (c(p) == 0 || std::abs(c(i)) < std::abs(c(p)))) p = i;
        }
        if (p != 0) swap_rows(0, p);
        for (int i = 1; i < 3; ++i) {
            if (c(i) != 0) add_row(i, 0, -(static_cast<long long>(c(i)) / c(0)));
        }
    }
    if (c(0) < 0) negate_row(0);
    return u;  // u * e1 = original c
}

// All integer coefficient vectors in the box |n_i| <= t * ||row_i(B^-1)||,
// filtered by ||B n|| <= t. Calls visit(n, l, norm2).
template <class Visit>
void scan_ball(const LatticeBasis& L, double t, std::int64_t cap, Visit&& visit) {
    const Mat& b = L.basis();
    const Mat& inv = L.inverse();
    const int d = L.dim();
    long long range[3] = {0, 0, 0};
    double predicted = 1.0;
    for (int i = 0; i < d; ++i) {
        double r = t * inv.row(i).norm();
        range[i] = static_cast<long long>(std::floor(r + 1e-9));
        predicted *= 2.0 * static_cast<double>(range[i]) + 1.0;
    }
    if (predicted > static_cast<double>(cap)) {
        throw BallTooLarge("enumeration would visit about " + std::to_string(predicted) +
                           " coefficient vectors (cap " + std::to_string(cap) + ")");
    }
    const double t2 = t * t;
    if (d == 2) {
        const double b00 = b(0, 0), b01 = b(0, 1), b10 = b(1, 0), b11 = b(1, 1);
        Eigen::VectorXi n(2);
        Vec l(2);
        for (long long i = -range[0]; i <= range[0]; ++i) {
            const double x0 = b00 * static_cast<double>(i);
            const double y0 = b10 * static_cast<double>(i);
            for (long long j = -range[1]; j <= range[1]; ++j) {
                const double x = x0 + b01 * static_cast<double>(j);
                const double y = y0 + b11 * static_cast<double>(j);
                const double n2 = x * x + y * y;
                if (n2 > t2) continue;
                n(0) = static_cast<int>(i);
                n(1) = static_cast<int>(j);
                l(0) = x;
                l(1) = y;
                visit(n, l, n2);
            }
        }
    } else {
        Eigen::VectorXi n(3);
        Vec l(3);
        for (long long i = -range[0]; i <= range[0]; ++i) {
            for (long long j = -range[1]; j <= range[1]; ++j) {
                for (long long k = -range[2]; k <= range[2]; ++k) {
                    l = b.col(0) * static_cast<double>(i) + b.col(1) * static_cast<double>(j) +
                        b.col(2) * static_cast<double>(k);
                    const double n2 = l.squaredNorm();
                    if (n2 > t2) continue;
                    n(0) = static_cast<int>(i);
                    n(1) = static_cast<int>(j);
                    n(2) = static_cast<int>(k);
                    visit(n, l, n2);
                }
            }
        }
    }
}

// Shortest nonzero vector by exhaustive search; returns integer coords.
Eigen::VectorXi shortest_by_search(const LatticeBasis& L, double radius) {
    Eigen::VectorXi best;
    double best2 = std::numeric_limits<double>::infinity();
    scan_ball(L, radius, kDefaultEnumCap, [&](const Eigen::VectorXi& n, const Vec&, double n2) {
        if (n.isZero()) return;
        if (n2 < best2) {
            best2 = n2;
            best = n;
        }
    });
    return best;
}

void size_reduce_3d(Mat& b) {
    // order columns by norm, then subtract rounded projections
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        for (int i = 0; i < 3; ++i) {
            int m = i;
            for (int j = i + 1; j < 3; ++j)
                if (b.col(j).squaredNorm() < b.col(m).squaredNorm()) m = j;
            if (m != i) {
                b.col(i).swap(b.col(m));
                changed = true;
            }
        }
        for (int j = 1; j < 3; ++j) {
            for (int i = j - 1; i >= 0; --i) {
                double mu = std::round(b.col(i).dot(b.col(j)) / b.col(i).squaredNorm());
                if (mu != 0.0) {
                    b.col(j) -= mu * b.col(i);
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
}

}  // namespace

LatticeBasis reduce_basis(const LatticeBasis& L) {
    Mat b = L.basis();
    if (L.dim() == 2) {
        gauss_reduce_2d(b);
        LatticeBasis out{b};
        out.reduced_shortest_ = b.col(0).norm();
        return out;
    }
    size_reduce_3d(b);
    LatticeBasis pre{b};
    const double radius =
        std::min(b.col(0).norm() * (1.0 + 1e-12),
                 2.0 * std::cbrt(pre.covol()) * static_cast<double>(pre.dim()));
    Eigen::VectorXi c = shortest_by_search(pre, radius);
    if (c.size() == 3 && !c.isZero()) {
        long long g = std::gcd(std::gcd(std::abs(c(0)), std::abs(c(1))), std::abs(c(2)));
        Eigen::Vector3i cp(static_cast<int>(c(0) / g), static_cast<int>(c(1) / g),
                           static_cast<int>(c(2) / g));
        Eigen::Matrix3i u = unimodular_completion(cp);
        Mat nb = b * u.cast<double>();
        // keep b1, size-reduce the completed columns against it
        for (int j = 1; j < 3; ++j) {
            for (int i = j - 1; i >= 0; --i) {
                double mu = std::round(nb.col(i).dot(nb.col(j)) / nb.col(i).squaredNorm());
                if (mu != 0.0) nb.col(j) -= mu * nb.col(i);
            }
        }
        b = nb;
    }
    LatticeBasis out{b};
    out.reduced_shortest_ = b.col(0).norm();
    return out;
}

std::vector<FreqVector> enumerate_vectors(const LatticeBasis& L, double t, VectorFilter filter,
                                          std::int64_t cap) {
    if (!(t > 0)) throw DomainError("enumerate_vectors needs t > 0");
    std::vector<FreqVector> out;
    scan_ball(L, t, cap, [&](const Eigen::VectorXi& n, const Vec& l, double n2) {
        if (n.isZero()) return;
        long long g = 0;
        for (int i = 0; i < n.size(); ++i) g = std::gcd(g, static_cast<long long>(std::abs(n(i))));
        FreqVector v;
        v.coords = l;
        v.int_coords = n;
        v.norm = std::sqrt(n2);
        v.num = l.prod();
        v.is_prime = (g == 1);
        if (filter == VectorFilter::PrimePositive) {
            if (!v.is_prime || !(l(0) > 0.0)) return;
        }
        out.push_back(std::move(v));
    });
    return out;
}

double num_of_lattice(const LatticeBasis& L, double t, std::int64_t cap) {
    if (!(t > 0)) throw DomainError("num_of_lattice needs t > 0");
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    scan_ball(L, t, cap, [&](const Eigen::VectorXi& n, const Vec& l, double) {
        if (n.isZero()) return;
        found = true;
        best = std::min(best, std::abs(l.prod()));
    });
    if (!found) throw EmptyBall("no nonzero lattice vector with norm <= t");
    return best;
}

namespace {

// Generic sub-double mantissa extension. A basis of exact doubles is a
// rational lattice: it contains huge vectors lying exactly on a coordinate
// axis, and the diagonal-orbit walk exposes them past exponent ~37, which
// no Haar-typical lattice does. Randomizing the bits below the double
// mantissa (relative size <= 2^-53) keeps the double view intact and pushes
// the rational degeneracy beyond every reachable scale.
mpf_class extend_mantissa(double v, Rng& rng) {
    mpf_class x(v, kPreciseBits);
    if (v == 0.0) return x;
    mpf_class xi(0, kPreciseBits);
    mpf_class scale(1, kPreciseBits);
    const mpf_class inv_word =
        mpf_class(1.0, kPreciseBits) / mpf_class(18446744073709551616.0, kPreciseBits);  // 2^-64
    for (int i = 0; i < 23; ++i) {
        scale *= inv_word;
        xi += scale * mpf_class(static_cast<unsigned long>(rng.next_u64()), kPreciseBits);
    }
    const mpf_class eps =
        mpf_class(1.0, kPreciseBits) / mpf_class(4503599627370496.0, kPreciseBits);  // 2^-52
    return x * (1 + (xi - 0.5) * eps);
}

}  // namespace

LatticeBasis sample_haar_lattice_2d(std::uint64_t seed) {
    Rng rng(seed);
    const double pi = 3.14159265358979323846264338327950288;
    double theta = (rng.next_double() - 0.5) * pi / 3.0;  // uniform on [-pi/6, pi/6)
    double x = std::sin(theta);
    double u = rng.next_double_pos();
    double y = std::sqrt(1.0 - x * x) / u;
    double sy = std::sqrt(y);
    Mat b(2, 2);
    b << 1.0 / sy, x / sy, 0.0, sy;
    double phi = 2.0 * pi * rng.next_double();
    Mat2 rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    Mat rb = rot * b;
    auto p = std::make_shared<PreciseBasis>();
    p->b11 = extend_mantissa(rb(0, 0), rng);
    p->b12 = extend_mantissa(rb(0, 1), rng);
    p->b21 = extend_mantissa(rb(1, 0), rng);
    p->b22 = extend_mantissa(rb(1, 1), rng);
    return LatticeBasis(rb, p);
}

double parse_real(std::string_view text) {
    bool neg = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    double v;
    if (text.rfind("sqrt:", 0) == 0) {
        std::string_view inner = text.substr(5);
        char* end = nullptr;
        std::string tmp(inner);
        double n = std::strtod(tmp.c_str(), &end);
        if (end == tmp.c_str() || *end != '\0' || n < 0) {
            throw ParseError("bad sqrt:<n> value '" + std::string(text) + "'");
        }
        v = std::sqrt(n);
    } else {
        char* end = nullptr;
        std::string tmp(text);
        v = std::strtod(tmp.c_str(), &end);
        if (end == tmp.c_str() || *end != '\0') {
            throw ParseError("bad real '" + std::string(text) + "'");
        }
    }
    return neg ? -v : v;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto p = s.find(sep);
        if (p == std::string_view::npos) {
            parts.push_back(s);
            return parts;
        }
        parts.push_back(s.substr(0, p));
        s.remove_prefix(p + 1);
    }
}

// same grammar as parse_real, evaluated at kPreciseBits
mpf_class parse_real_hp(std::string_view text) {
    (void)parse_real(text);  // reuse the validation
    bool neg = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    mpf_class v(0, kPreciseBits);
    if (text.rfind("sqrt:", 0) == 0) {
        mpf_class n(std::string(text.substr(5)), kPreciseBits);
        v = sqrt(n);
    } else {
        v = mpf_class(std::string(text), kPreciseBits);
    }
    return neg ? mpf_class(-v) : v;
}

}  // namespace

LatticeBasis parse_lattice_spec(std::string_view spec) {
    bool unimodular = false;
    if (auto p = spec.find('!'); p != std::string_view::npos) {
        std::string_view suffix = spec.substr(p + 1);
        if (suffix != "unimodular") throw ParseError("unknown lattice-spec suffix '" + std::string(suffix) + "'");
        unimodular = true;
        spec = spec.substr(0, p);
    }
    LatticeBasis L = [&]() -> LatticeBasis {
        if (spec == "zsquare") return make_zsquare();
        if (spec.rfind("quad:", 0) == 0) {
            auto parts = split(spec.substr(5), ',');
            if (parts.size() != 2) throw ParseError("quad:<alpha>,<alphaprime> expects two reals");
            // carry the literals at full precision: sqrt:2 means sqrt(2),
            // not its double rounding
            auto p = std::make_shared<PreciseBasis>();
            p->b11 = 1;
            p->b21 = 1;
            p->b12 = parse_real_hp(parts[0]);
            p->b22 = parse_real_hp(parts[1]);
            if (p->b12 == p->b22) throw EqualRoots("quad needs alpha != alpha'");
            Mat b(2, 2);
            b << 1.0, p->b12.get_d(), 1.0, p->b22.get_d();
            return LatticeBasis(b, p);
        }
        if (spec.rfind("basis:", 0) == 0) {
            auto parts = split(spec.substr(6), ',');
            if (parts.size() != 4) throw ParseError("basis:<b11>,<b21>,<b12>,<b22> expects four reals");
            auto p = std::make_shared<PreciseBasis>();
            p->b11 = parse_real_hp(parts[0]);
            p->b21 = parse_real_hp(parts[1]);
            p->b12 = parse_real_hp(parts[2]);
            p->b22 = parse_real_hp(parts[3]);
            Mat b(2, 2);
            b << p->b11.get_d(), p->b12.get_d(), p->b21.get_d(), p->b22.get_d();
            return LatticeBasis(b, p);
        }
        if (spec.rfind("haar:", 0) == 0) {
            std::string tmp(spec.substr(5));
            char* end = nullptr;
            unsigned long long s = std::strtoull(tmp.c_str(), &end, 10);
            if (end == tmp.c_str() || *end != '\0') throw ParseError("haar:<seed> expects an integer");
            return sample_haar_lattice_2d(s);
        }
        throw ParseError("unknown lattice spec '" + std::string(spec) + "'");
    }();
    return unimodular ? make_unimodular(L) : L;
}

Eigen::VectorXi integer_coords(const LatticeBasis& L, const Vec& l) {
    Vec c = L.inverse() * l;
    Eigen::VectorXi n(c.size());
    for (int i = 0; i < c.size(); ++i) n(i) = static_cast<int>(std::llround(c(i)));
    Vec back = L.basis() * n.cast<double>();
    if ((back - l).norm() > 1e-9 * (1.0 + l.norm())) {
        throw DomainError("vector is not a lattice point of this basis");
    }
    return n;
}

bool has_integer_coords(const LatticeBasis& L, const Vec& l, double tol) {
    Vec c = L.inverse() * l;
    Vec r = c;
    for (int i = 0; i < c.size(); ++i) r(i) = c(i) - std::round(c(i));
    return r.lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace latlab
