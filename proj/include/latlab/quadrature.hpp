#pragma once

#include "latlab/types.hpp"

namespace latlab {

// Region parameters for the V-estimate integrals: annulus A <= ||l|| <= t
// with the product-of-coordinates floor |l1 l2| >= C (times log(r)^-(1+alpha)
// in the log-weighted variant).
struct IntegralRegionSpec {
    double A = 1.0;
    double C = 1.0;
    double alpha = 0.0;
    double t = 10.0;
    IntegralRegionSpec(double A_, double C_, double t_, double alpha_ = 0.0)
        : A(A_), C(C_), alpha(alpha_), t(t_) {
        if (!(A > 0.0) || !(C > 0.0)) throw DomainError("region needs A > 0 and C > 0");
        if (!(t >= A)) throw DomainError("region needs t >= A");
        if (alpha < 0.0) throw DomainError("region needs alpha >= 0");
    }
};

struct QuadResult {
    double value = 0.0;
    double err_bound = 0.0;  // accumulated adaptive-bisection error estimate
};

// 16 * Int_A^t r^-3 (-1 + (r^2/2C) sqrt(1 - (2C/r^2)^2)) dr, the polar
// reduction of the admissible region integral; grows like (8/C) log t.
// Requires 2C/A^2 <= 1.
QuadResult admissible_tail_integral(const IntegralRegionSpec& spec, double rel_tol = 1e-8);

// Same with the floor C replaced by C/log(r)^(1+alpha); grows like
// log(t)^(2+alpha). Requires A > 1 and 2C/(A^2 log(A)^(1+alpha)) <= 1.
QuadResult log_weighted_tail_integral(const IntegralRegionSpec& spec, double rel_tol = 1e-8);

// Int over {A <= ||l|| <= T, l1,l2 > 0, l1 l2 >= C} of l1^-3 l2^-2 (or the
// exponent-swapped l1^-2 l2^-3), via the exact inner integral in the
// (p,q) = (l1 l2, l1/l2) coordinates and adaptive quadrature over p. O(T).
QuadResult asymmetric_integral(double A, double C, double T, bool swap_exponents = false,
                               double rel_tol = 1e-3);

}  // namespace latlab
