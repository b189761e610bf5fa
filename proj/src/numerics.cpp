#include "theta2/numerics.hpp"

namespace theta2 {

namespace {

bigfloat inf_value(prec_t p) {
    bigfloat r(p);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

}  // namespace

bigfloat angular_span(const std::vector<bigcomplex>& points, const std::vector<err_radius>& radii) {
    if (points.empty() || points.size() != radii.size())
        fail(errc::internal_error, "angular_span: bad input sizes");
    prec_t w = 64;
    for (const auto& z : points) w = std::max(w, z.prec());

    // Each disk D(p_i, r_i) subtends a half-width of asin(r_i/|p_i|) about the
    // direction of p_i. Work with directions relative to points[0]; a rigid
    // rotation of everything does not change the span, so the uncertainty of
    // the reference direction is already accounted for by the i = 0 interval.
    const bigcomplex ref = conj(points[0]);
    bigfloat lo(0.0, w), hi(0.0, w);
    bigfloat pi_dn = bigfloat::pi(64, MPFR_RNDD);
    // slack for the rounding of products and atan2 at precision w
    bigfloat slack = bigfloat::pow2(-static_cast<long>(w) + 8, 32);

    for (size_t i = 0; i < points.size(); ++i) {
        bigfloat mag = abs_down(points[i]);
        if (!(bigfloat(radii[i].v) < mag)) return inf_value(w);  // disk reaches 0
        bigfloat half(0.0, 64);
        if (!radii[i].v.is_zero()) {
            bigfloat s = bigfloat::div(radii[i].v, mag.round_to(64, MPFR_RNDD), MPFR_RNDU, 64);
            half = bigfloat::asin(s, MPFR_RNDU, 64);
        }
        half = bigfloat::add(half, slack, MPFR_RNDU, 64);
        bigfloat ang(0.0, w);
        if (i > 0) {
            bigcomplex rel = points[i] * ref;
            ang = arg(rel);
        }
        bigfloat up = bigfloat::add(ang, half, MPFR_RNDU);
        bigfloat dn = bigfloat::sub(ang, half, MPFR_RNDD);
        // wraparound: a direction interval touching the +-pi cut is ambiguous
        if (bigfloat::abs(ang) + bigfloat(half) > pi_dn && i > 0) return inf_value(w);
        if (i == 0) {
            lo = dn;
            hi = up;
        } else {
            lo = bigfloat::min(lo, dn);
            hi = bigfloat::max(hi, up);
        }
    }
    return bigfloat::sub(hi, lo, MPFR_RNDU);
}

bool good_position(const std::vector<bigcomplex>& points, const std::vector<err_radius>& radii) {
    bigfloat span = angular_span(points, radii);
    if (span.is_inf() || span.is_nan()) return false;
    bigfloat half_pi = bigfloat::mul_2si(bigfloat::pi(64, MPFR_RNDD), -1);
    return span < half_pi;
}

ival tail_bound_iv(const ival& f0, const ival& f1, const ival& q) {
    if (q.lo().sgn() <= 0 || q.hi() >= bigfloat(1.0, ival::kPrec))
        fail(errc::domain_error, "tail_bound: q must lie in (0,1)");
    if (!(f0.hi() < f1.lo())) fail(errc::domain_error, "tail_bound: requires f(0) < f(1)");
    ival head = ival::pow01(q, f0);
    ival ratio = ival::pow01(q, f1 - f0);
    ival denom = ival(1.0) - ratio;
    return head / denom;
}

bigfloat tail_bound(const bigfloat& f0, const bigfloat& f1, const bigfloat& q) {
    return tail_bound_iv(ival(f0), ival(f1), ival(q)).hi();
}

}  // namespace theta2
