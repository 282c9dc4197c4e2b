// Adaptive Simpson bisection on a log substitution: the integrands here all
// decay like 1/r times slowly varying factors, so integrating in s = log r
// keeps the recursion shallow across many decades.

#include "latlab/quadrature.hpp"

#include <cmath>
#include <functional>

namespace latlab {

namespace {

struct SimpsonAcc {
    double value = 0.0;
    double err = 0.0;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
void adapt(F&& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
           int depth, SimpsonAcc& acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        acc.value += left + right + delta / 15.0;
        acc.err += std::abs(delta) / 15.0;
        return;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
    adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol) {
    if (!(b > a)) return {0.0, 0.0};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    // absolute tolerance anchored to a first estimate of the magnitude
    const double scale = std::max(std::abs(whole), 1e-30);
    SimpsonAcc acc;
    adapt(f, a, b, fa, fm, fb, whole, rel_tol * scale, 48, acc);
    return {acc.value, acc.err + rel_tol * scale};
}

}  // namespace

QuadResult admissible_tail_integral(const IntegralRegionSpec& spec, double rel_tol) {
    if (spec.alpha != 0.0) throw DomainError("admissible_tail_integral needs alpha = 0");
    const double C = spec.C;
    if (2.0 * C / (spec.A * spec.A) > 1.0 + 1e-15) {
        throw DomainError("admissible_tail_integral needs 2C/A^2 <= 1");
    }
    if (spec.t == spec.A) return {0.0, 0.0};
    auto f = [C](double s) {
        const double r = std::exp(s);
        const double w = 2.0 * C / (r * r);
        const double root = w > 1.0 ? 0.0 : std::sqrt(1.0 - w * w);
        // integrand in r, times dr/ds = r
        return 16.0 / (r * r) * (-1.0 + root / w);
    };
    return integrate(f, std::log(spec.A), std::log(spec.t), rel_tol);
}

QuadResult log_weighted_tail_integral(const IntegralRegionSpec& spec, double rel_tol) {
    const double C = spec.C;
    const double ap1 = 1.0 + spec.alpha;
    if (!(spec.A > 1.0)) throw DomainError("log_weighted_tail_integral needs A > 1");
    const double la = std::pow(std::log(spec.A), ap1);
    if (2.0 * C / (spec.A * spec.A * la) > 1.0 + 1e-15) {
        throw DomainError("log_weighted_tail_integral needs 2C/(A^2 log(A)^(1+alpha)) <= 1");
    }
    if (spec.t == spec.A) return {0.0, 0.0};
    auto f = [C, ap1](double s) {
        const double r = std::exp(s);
        const double lf = std::pow(s, ap1);  // log(r)^(1+alpha), s = log r
        const double w = 2.0 * C / (r * r * lf);
        const double root = w > 1.0 ? 0.0 : std::sqrt(1.0 - w * w);
        return 16.0 / (r * r) * (-1.0 + root / w);
    };
    return integrate(f, std::log(spec.A), std::log(spec.t), rel_tol);
}

QuadResult asymmetric_integral(double A, double C, double T, bool swap_exponents,
                               double rel_tol) {
    if (!(A > 0.0) || !(C > 0.0)) throw DomainError("asymmetric_integral needs A > 0, C > 0");
    if (!(T >= A)) throw DomainError("asymmetric_integral needs T >= A");
    if (T == A) return {0.0, 0.0};
    // q_-(s) for q + 1/q = s, stable for large s; q_+ = 1/q_-
    auto q_minus = [](double s) { return 2.0 / (s + std::sqrt(s * s - 4.0)); };
    // Inner integral over the allowed q set at fixed p = l1 l2:
    //   unswapped: (1/2) Int q^-3/2 dq,  swapped: (1/2) Int q^-1/2 dq.
    auto inner = [&](double p) {
        const double sT = T * T / p;
        if (sT < 2.0) return 0.0;
        const double sA = A * A / p;
        const double qmT = q_minus(sT);
        if (sA <= 2.0) {
            // single interval [q_-(sT), q_+(sT)]
            return swap_exponents ? (1.0 / std::sqrt(qmT) - std::sqrt(qmT))
                                  : (1.0 / std::sqrt(qmT) - std::sqrt(qmT));
        }
        const double qmA = q_minus(sA);
        if (swap_exponents) {
            // [qmT, qmA]: sqrt(b)-sqrt(a); [1/qmA, 1/qmT]: 1/sqrt(qmT)-1/sqrt(qmA)
            return (std::sqrt(qmA) - std::sqrt(qmT)) +
                   (1.0 / std::sqrt(qmT) - 1.0 / std::sqrt(qmA));
        }
        // [qmT, qmA]: a^-1/2 - b^-1/2; [1/qmA, 1/qmT]: sqrt(qmA) - sqrt(qmT)
        return (1.0 / std::sqrt(qmT) - 1.0 / std::sqrt(qmA)) +
               (std::sqrt(qmA) - std::sqrt(qmT));
    };
    auto f = [&](double w) {
        const double p = std::exp(w);
        return std::pow(p, -1.5) * inner(p);  // p^-5/2 * inner * (dp/dw = p)
    };
    return integrate(f, std::log(C), std::log(T * T / 2.0), rel_tol);
}

}  // namespace latlab
