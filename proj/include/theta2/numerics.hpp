#pragma once

#include <vector>

#include "theta2/bigcomplex.hpp"
#include "theta2/interval.hpp"

namespace theta2 {

// Absolute error radius attached to a computed complex value. Radii are kept
// as low-precision MPFR values rounded upward (doubles would underflow for
// working precisions past ~1000 bits). All combining operations overestimate.
struct err_radius {
    static constexpr prec_t kPrec = 32;
    bigfloat v;

    err_radius() : v(0.0, kPrec) {}
    explicit err_radius(const bigfloat& r) : v(r.round_to(kPrec, MPFR_RNDU)) {}
    explicit err_radius(double r) : v(bigfloat(r, kPrec)) {}
    static err_radius zero() { return err_radius(); }
    static err_radius from_exp2(long e) { return err_radius(bigfloat::pow2(e, kPrec)); }

    bool is_zero() const { return v.is_zero(); }
    double to_double() const { return v.to_double(); }

    friend err_radius operator+(const err_radius& a, const err_radius& b) {
        err_radius r;
        r.v = bigfloat::add(a.v, b.v, MPFR_RNDU);
        return r;
    }
    // radius of x*y given |x|, |y| upper bounds and radii
    static err_radius mul(const bigfloat& ax, const err_radius& rx, const bigfloat& ay,
                          const err_radius& ry) {
        bigfloat axu = ax.round_to(kPrec, MPFR_RNDU), ayu = ay.round_to(kPrec, MPFR_RNDU);
        bigfloat t = bigfloat::add(bigfloat::mul(axu, ry.v, MPFR_RNDU),
                                   bigfloat::mul(ayu, rx.v, MPFR_RNDU), MPFR_RNDU);
        err_radius r;
        r.v = bigfloat::add(t, bigfloat::mul(rx.v, ry.v, MPFR_RNDU), MPFR_RNDU);
        return r;
    }
    err_radius scaled(const bigfloat& c) const {  // radius * |c|, upward
        err_radius r;
        r.v = bigfloat::mul(v, bigfloat::abs(c).round_to(kPrec, MPFR_RNDU), MPFR_RNDU);
        return r;
    }
    err_radius plus_exp2(long e) const { return *this + from_exp2(e); }

    friend bool operator<(const err_radius& a, const err_radius& b) { return a.v < b.v; }
    friend bool operator<=(const err_radius& a, const err_radius& b) { return a.v <= b.v; }
};

// principal branch: re > 0, or re == 0 and im >= 0
inline bigcomplex principal_sqrt(const bigcomplex& z) { return csqrt_principal(z); }

// Width of the smallest closed sector (vertex at 0) containing the disks
// D(points[i], radii[i]), as an upper bound. Infinite (+inf bigfloat) when a
// disk meets 0 or when a relative direction is uncertain across the +-pi cut.
// The reference direction cancels, so only differences matter.
bigfloat angular_span(const std::vector<bigcomplex>& points, const std::vector<err_radius>& radii);

// span strictly below pi/2 certificate; false on any doubt
bool good_position(const std::vector<bigcomplex>& points, const std::vector<err_radius>& radii);
inline bool good_position(const std::vector<bigcomplex>& points) {
    return good_position(points, std::vector<err_radius>(points.size()));
}

// Upper bound for sum_{k>=0} q^(f(k)) with f convex increasing on integers:
// q^(f(0)) / (1 - q^(f(1)-f(0))), valid for q in (0,1).
bigfloat tail_bound(const bigfloat& f0, const bigfloat& f1, const bigfloat& q);
ival tail_bound_iv(const ival& f0, const ival& f1, const ival& q);

}  // namespace theta2
