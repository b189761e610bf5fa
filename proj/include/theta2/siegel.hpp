#pragma once

#include <string>

#include "theta2/bigcomplex.hpp"

namespace theta2 {

// Genus-1 point z = x + iy, im(z) > 0.
struct tau1 {
    bigcomplex z;
    explicit tau1(bigcomplex v) : z(std::move(v)) {}
    prec_t prec() const { return z.prec(); }
};

// Genus-2 point tau = [[z1, z3], [z3, z2]] in the Siegel upper half space.
struct tau2 {
    bigcomplex z1, z2, z3;

    tau2(bigcomplex a, bigcomplex b, bigcomplex c)
        : z1(std::move(a)), z2(std::move(b)), z3(std::move(c)) {}
    explicit tau2(prec_t p) : z1(p), z2(p), z3(p) {}

    prec_t prec() const { return std::max(z1.prec(), std::max(z2.prec(), z3.prec())); }
    tau2 round_to(prec_t p) const { return {z1.round_to(p), z2.round_to(p), z3.round_to(p)}; }

    const bigfloat& y1() const { return z1.im; }
    const bigfloat& y2() const { return z2.im; }
    const bigfloat& y3() const { return z3.im; }

    // 2^n * tau, exact
    tau2 scale(long n) const {
        return {bigcomplex::mul_2si(z1, n), bigcomplex::mul_2si(z2, n), bigcomplex::mul_2si(z3, n)};
    }

    // det(Im tau), at working precision
    bigfloat det_im() const { return y1() * y2() - y3() * y3(); }

    // positive definiteness of Im tau
    bool im_positive_definite() const {
        return y1().sgn() > 0 && det_im().sgn() > 0;
    }

    std::string to_string(size_t digits = 0) const {
        return z1.to_string(digits) + "; " + z2.to_string(digits) + "; " + z3.to_string(digits);
    }
};

// q_j = exp(-pi * y_j); in (0,1) for j in {1,2}, can exceed 1 for j = 3
bigfloat q_param(const tau2& t, int j);
inline bigfloat q_param(const tau1& t) { return bigfloat::exp(-(bigfloat::pi(t.prec()) * t.z.im)); }

// smallest eigenvalue of Im tau (closed form for the 2x2 symmetric matrix)
bigfloat lambda1(const tau2& t);
// certified lower bound at 64 bits (directed rounding)
bigfloat lambda1_lower(const tau2& t);

// r(tau) = min{lambda1, y1/2, y2/2}
bigfloat r_value(const tau2& t);
// certified lower bound at 64 bits (directed rounding)
bigfloat r_lower(const tau2& t);

// Membership in the reduction domain: |x_j| <= 1/2, 2|y3| <= y1 <= y2,
// y1 >= sqrt(3)/2, |z1| >= 1, |z2| >= 1. Boundaries are inside; every
// comparison gets eps = 2^(-p/2) of outward slack so that exact boundary
// points stored with rounding still pass. "true" is reliable up to that
// documented closure fuzz.
bool in_fprime(const tau2& t, const bigfloat* eps = nullptr);

// genus-1 fundamental domain |x| <= 1/2, |z| >= 1 with the same slack policy
bool in_f1(const tau1& t, const bigfloat* eps = nullptr);

// Text format: three complex literals separated by ';'. Complex literal
// grammar: [-]ddd[.ddd][e[-]dd] optionally followed by (+|-)ddd[.ddd][e[-]dd]i;
// a lone [-]ddd...i is purely imaginary ("1i" is i).
bigcomplex parse_complex(const std::string& s, prec_t p);
tau2 parse_tau2(const std::string& s, prec_t p);

}  // namespace theta2
