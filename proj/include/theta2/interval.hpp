#pragma once

#include "theta2/bigfloat.hpp"

namespace theta2 {

// Directed-rounding interval scalar for certified bound evaluation (rho
// envelopes, tail bounds, threshold margins). Endpoints live at a fixed
// modest precision; every operation rounds lo down and hi up, so any real
// produced by the exact expression is enclosed. This is deliberately not a
// general ball type: only the operations the bound formulas need exist, and
// several (asin, pow01) restrict their domain and fail loudly outside it.
class ival {
  public:
    static constexpr prec_t kPrec = 128;

    ival() : lo_(0.0, kPrec), hi_(0.0, kPrec) {}
    explicit ival(double v) : lo_(v, kPrec), hi_(v, kPrec) {}  // doubles are exact
    explicit ival(long v) : lo_(v, kPrec), hi_(v, kPrec) {}
    explicit ival(const bigfloat& v) : lo_(v.round_to(kPrec, MPFR_RNDD)), hi_(v.round_to(kPrec, MPFR_RNDU)) {}
    ival(bigfloat lo, bigfloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!(lo_ <= hi_)) fail(errc::internal_error, "ival: inverted endpoints");
    }
    static ival from_str(const std::string& s) {
        bigfloat lo(kPrec), hi(kPrec);
        mpfr_set_str(lo.raw(), s.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(hi.raw(), s.c_str(), 10, MPFR_RNDU);
        return {lo, hi};
    }
    static ival pi() { return {bigfloat::pi(kPrec, MPFR_RNDD), bigfloat::pi(kPrec, MPFR_RNDU)}; }

    const bigfloat& lo() const { return lo_; }
    const bigfloat& hi() const { return hi_; }
    double mid_d() const { return (lo_.to_double() + hi_.to_double()) / 2; }

    friend ival operator+(const ival& a, const ival& b) {
        return {bigfloat::add(a.lo_, b.lo_, MPFR_RNDD), bigfloat::add(a.hi_, b.hi_, MPFR_RNDU)};
    }
    friend ival operator-(const ival& a, const ival& b) {
        return {bigfloat::sub(a.lo_, b.hi_, MPFR_RNDD), bigfloat::sub(a.hi_, b.lo_, MPFR_RNDU)};
    }
    friend ival operator-(const ival& a) { return {-a.hi_, -a.lo_}; }
    friend ival operator*(const ival& a, const ival& b) {
        const bigfloat* ae[2] = {&a.lo_, &a.hi_};
        const bigfloat* be[2] = {&b.lo_, &b.hi_};
        bigfloat lo = bigfloat::mul(a.lo_, b.lo_, MPFR_RNDD);
        bigfloat hi = bigfloat::mul(a.lo_, b.lo_, MPFR_RNDU);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (i == 0 && j == 0) continue;
                lo = bigfloat::min(lo, bigfloat::mul(*ae[i], *be[j], MPFR_RNDD));
                hi = bigfloat::max(hi, bigfloat::mul(*ae[i], *be[j], MPFR_RNDU));
            }
        return {lo, hi};
    }
    // division by an interval strictly bounded away from 0
    friend ival operator/(const ival& a, const ival& b) {
        if (b.lo_.sgn() <= 0 && b.hi_.sgn() >= 0)
            fail(errc::internal_error, "ival: division by interval containing 0");
        const bigfloat* ae[2] = {&a.lo_, &a.hi_};
        const bigfloat* be[2] = {&b.lo_, &b.hi_};
        bigfloat lo = bigfloat::div(a.lo_, b.lo_, MPFR_RNDD);
        bigfloat hi = bigfloat::div(a.lo_, b.lo_, MPFR_RNDU);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (i == 0 && j == 0) continue;
                lo = bigfloat::min(lo, bigfloat::div(*ae[i], *be[j], MPFR_RNDD));
                hi = bigfloat::max(hi, bigfloat::div(*ae[i], *be[j], MPFR_RNDU));
            }
        return {lo, hi};
    }

    static ival sqrt(const ival& a) {
        if (a.lo_.sgn() < 0) fail(errc::internal_error, "ival: sqrt of negative");
        return {bigfloat::sqrt(a.lo_, MPFR_RNDD), bigfloat::sqrt(a.hi_, MPFR_RNDU)};
    }
    static ival exp(const ival& a) {
        return {bigfloat::exp(a.lo_, MPFR_RNDD), bigfloat::exp(a.hi_, MPFR_RNDU)};
    }
    static ival log(const ival& a) {
        if (a.lo_.sgn() <= 0) fail(errc::internal_error, "ival: log needs positive argument");
        return {bigfloat::log(a.lo_, MPFR_RNDD), bigfloat::log(a.hi_, MPFR_RNDU)};
    }
    // asin on [-1, 1]; arguments that poke past 1 by rounding are rejected,
    // callers check "rho < 1" style conditions first
    static ival asin(const ival& a) {
        if (a.lo_ < bigfloat(-1.0, kPrec) || a.hi_ > bigfloat(1.0, kPrec))
            fail(errc::domain_error, "ival: asin argument outside [-1,1]");
        return {bigfloat::asin(a.lo_, MPFR_RNDD), bigfloat::asin(a.hi_, MPFR_RNDU)};
    }
    static ival atan(const ival& a) {
        return {bigfloat::atan(a.lo_, MPFR_RNDD), bigfloat::atan(a.hi_, MPFR_RNDU)};
    }
    // q^e for q in [0,1), e > 0: increasing in q, decreasing in e
    static ival pow01(const ival& q, const ival& e) {
        if (q.lo_.sgn() < 0 || q.hi_ >= bigfloat(1.0, kPrec))
            fail(errc::internal_error, "ival: pow01 base outside [0,1)");
        if (e.lo_.sgn() <= 0) fail(errc::internal_error, "ival: pow01 exponent must be positive");
        bigfloat lo = q.lo_.is_zero() ? bigfloat(0.0, kPrec) : bigfloat::pow(q.lo_, e.hi_, MPFR_RNDD);
        bigfloat hi = q.hi_.is_zero() ? bigfloat(0.0, kPrec) : bigfloat::pow(q.hi_, e.lo_, MPFR_RNDU);
        return {lo, hi};
    }
    // enclosure of sin/cos at a point value (not over an interval)
    static ival sin_point(const bigfloat& x) {
        return {bigfloat::sin(x, MPFR_RNDD, kPrec), bigfloat::sin(x, MPFR_RNDU, kPrec)};
    }
    static ival cos_point(const bigfloat& x) {
        return {bigfloat::cos(x, MPFR_RNDD, kPrec), bigfloat::cos(x, MPFR_RNDU, kPrec)};
    }

    static ival abs(const ival& a) {
        if (a.lo_.sgn() >= 0) return a;
        if (a.hi_.sgn() <= 0) return -a;
        return {bigfloat(0.0, kPrec), bigfloat::max(-a.lo_, a.hi_)};
    }

    bool certainly_lt(const ival& o) const { return hi_ < o.lo_; }
    bool certainly_le(const ival& o) const { return hi_ <= o.lo_; }
    bool contains_zero() const { return lo_.sgn() <= 0 && hi_.sgn() >= 0; }

  private:
    bigfloat lo_, hi_;
};

inline ival operator*(long a, const ival& b) { return ival(a) * b; }
inline ival operator+(long a, const ival& b) { return ival(a) + b; }
inline ival operator-(long a, const ival& b) { return ival(a) - b; }

}  // namespace theta2
