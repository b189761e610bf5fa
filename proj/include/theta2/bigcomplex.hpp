#pragma once

#include <string>

#include "theta2/bigfloat.hpp"

namespace theta2 {

// Complex scalar over two bigfloat components. No MPC dependency: the few
// operations needed are spelled out, with principal branches where relevant.
struct bigcomplex {
    bigfloat re, im;

    explicit bigcomplex(prec_t p = 53) : re(0.0, p), im(0.0, p) {}
    bigcomplex(bigfloat r, bigfloat i) : re(std::move(r)), im(std::move(i)) {}
    bigcomplex(double r, double i, prec_t p) : re(r, p), im(i, p) {}

    prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    bigcomplex round_to(prec_t p) const { return {re.round_to(p), im.round_to(p)}; }

    friend bigcomplex operator+(const bigcomplex& a, const bigcomplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend bigcomplex operator-(const bigcomplex& a, const bigcomplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend bigcomplex operator-(const bigcomplex& a) { return {-a.re, -a.im}; }
    friend bigcomplex operator*(const bigcomplex& a, const bigcomplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bigcomplex operator*(const bigcomplex& a, const bigfloat& s) { return {a.re * s, a.im * s}; }
    friend bigcomplex operator*(const bigfloat& s, const bigcomplex& a) { return a * s; }
    friend bigcomplex operator/(const bigcomplex& a, const bigfloat& s) { return {a.re / s, a.im / s}; }
    friend bigcomplex operator/(const bigcomplex& a, const bigcomplex& b) {
        bigfloat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    bigcomplex& operator+=(const bigcomplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bigcomplex& operator-=(const bigcomplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    bigcomplex& operator*=(const bigcomplex& o) { return *this = *this * o; }

    friend bigcomplex conj(const bigcomplex& a) { return {a.re, -a.im}; }
    friend bigfloat abs(const bigcomplex& a) { return bigfloat::hypot(a.re, a.im, MPFR_RNDN); }
    friend bigfloat abs_up(const bigcomplex& a) { return bigfloat::hypot(a.re, a.im, MPFR_RNDU); }
    friend bigfloat abs_down(const bigcomplex& a) { return bigfloat::hypot(a.re, a.im, MPFR_RNDD); }
    // arg in (-pi, pi], atan2 convention
    friend bigfloat arg(const bigcomplex& a) { return bigfloat::atan2(a.im, a.re, MPFR_RNDN); }

    static bigcomplex mul_2si(const bigcomplex& a, long k) {
        return {bigfloat::mul_2si(a.re, k), bigfloat::mul_2si(a.im, k)};
    }
    static bigcomplex i_times(const bigcomplex& a) { return {-a.im, a.re}; }

    // z^n by binary powering, n may be negative (then 1/z^|n|)
    static bigcomplex pow_si(const bigcomplex& z, long n) {
        prec_t p = z.prec();
        bigcomplex acc(1.0, 0.0, p), base = z;
        unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        if (n < 0) return bigcomplex(1.0, 0.0, p) / acc;
        return acc;
    }

    std::string to_string(size_t digits = 0) const {
        std::string r = re.to_string(digits);
        std::string i = im.to_string(digits);
        if (im.is_zero()) return r;
        return r + (im.sgn() < 0 ? "-" : "+") + (im.sgn() < 0 ? i.substr(1) : i) + "i";
    }
};

// exp(i*pi*w) = exp(-pi*im(w)) * (cos(pi*re(w)) + i*sin(pi*re(w)))
inline bigcomplex exp_ipi(const bigcomplex& w) {
    prec_t p = w.prec();
    bigfloat pi = bigfloat::pi(p);
    bigfloat mag = bigfloat::exp(-(pi * w.im));
    bigfloat t = pi * w.re;
    bigfloat c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), t.raw(), MPFR_RNDN);
    return {mag * c, mag * s};
}

// principal square root: re >= 0, and im >= 0 on the negative real axis
inline bigcomplex csqrt_principal(const bigcomplex& z) {
    prec_t p = z.prec();
    if (z.is_zero()) return bigcomplex(p);
    bigfloat r = abs(z);
    if (z.im.is_zero()) {
        if (z.re.sgn() > 0) return {bigfloat::sqrt(z.re), bigfloat(0.0, p)};
        return {bigfloat(0.0, p), bigfloat::sqrt(-z.re)};
    }
    // t = sqrt((r + |re|)/2); the other component is |im|/(2t)
    bigfloat t = bigfloat::sqrt(bigfloat::mul_2si(r + bigfloat::abs(z.re), -1));
    bigfloat u = bigfloat::mul_2si(bigfloat::abs(z.im) / t, -1);
    if (z.re.sgn() >= 0) return {t, z.im.sgn() >= 0 ? u : -u};
    return {u, z.im.sgn() >= 0 ? t : -t};
}

}  // namespace theta2
