#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "theta2/errors.hpp"

namespace theta2 {

using prec_t = mpfr_prec_t;

// Arbitrary-precision real scalar with value semantics over mpfr_t.
// Every value carries the precision it was created with; binary operators
// produce a result at the wider operand's precision, rounded to nearest.
// The named static functions take an explicit rounding mode and are the
// building blocks for the directed-rounding (certified bound) code paths.
class bigfloat {
  public:
    explicit bigfloat(prec_t p = 53) { mpfr_init2(x_, clamp(p)); }
    bigfloat(double v, prec_t p) {
        mpfr_init2(x_, clamp(p));
        mpfr_set_d(x_, v, MPFR_RNDN);
    }
    bigfloat(long v, prec_t p) {
        mpfr_init2(x_, clamp(p));
        mpfr_set_si(x_, v, MPFR_RNDN);
    }
    bigfloat(const bigfloat& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    bigfloat(bigfloat&& o) noexcept {
        mpfr_init2(x_, 2);
        mpfr_swap(x_, o.x_);
    }
    bigfloat& operator=(const bigfloat& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    bigfloat& operator=(bigfloat&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~bigfloat() { mpfr_clear(x_); }

    static bigfloat from_str(const std::string& s, prec_t p) {
        bigfloat r(p);
        if (mpfr_set_str(r.x_, s.c_str(), 10, MPFR_RNDN) != 0)
            fail(errc::parse_error, "not a decimal number: '" + s + "'");
        return r;
    }

    prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_srcptr raw() const { return x_; }
    mpfr_ptr raw() { return x_; }

    // value at a different precision (rounded)
    bigfloat round_to(prec_t p, mpfr_rnd_t rnd = MPFR_RNDN) const {
        bigfloat r(p);
        mpfr_set(r.x_, x_, rnd);
        return r;
    }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(x_) != 0; }
    bool is_inf() const { return mpfr_inf_p(x_) != 0; }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sgn() const { return mpfr_sgn(x_); }
    // exponent e with |x| in [2^(e-1), 2^e); 0 for zero
    long exp2() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(x_)); }

    friend bool operator<(const bigfloat& a, const bigfloat& b) { return mpfr_less_p(a.x_, b.x_); }
    friend bool operator<=(const bigfloat& a, const bigfloat& b) { return mpfr_lessequal_p(a.x_, b.x_); }
    friend bool operator>(const bigfloat& a, const bigfloat& b) { return mpfr_greater_p(a.x_, b.x_); }
    friend bool operator>=(const bigfloat& a, const bigfloat& b) { return mpfr_greaterequal_p(a.x_, b.x_); }
    friend bool operator==(const bigfloat& a, const bigfloat& b) { return mpfr_equal_p(a.x_, b.x_); }
    friend bool operator!=(const bigfloat& a, const bigfloat& b) { return !mpfr_equal_p(a.x_, b.x_); }
    friend bool operator<(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) < 0; }
    friend bool operator<=(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) <= 0; }
    friend bool operator>(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) > 0; }
    friend bool operator>=(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) >= 0; }

#define THETA2_BF_BINOP(op, fn)                                         \
    friend bigfloat operator op(const bigfloat& a, const bigfloat& b) { \
        bigfloat r(wider(a, b));                                        \
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);                                \
        return r;                                                       \
    }
    THETA2_BF_BINOP(+, mpfr_add)
    THETA2_BF_BINOP(-, mpfr_sub)
    THETA2_BF_BINOP(*, mpfr_mul)
    THETA2_BF_BINOP(/, mpfr_div)
#undef THETA2_BF_BINOP

    friend bigfloat operator-(const bigfloat& a) {
        bigfloat r(a.prec());
        mpfr_neg(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    bigfloat& operator+=(const bigfloat& o) {
        mpfr_add(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }
    bigfloat& operator-=(const bigfloat& o) {
        mpfr_sub(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }
    bigfloat& operator*=(const bigfloat& o) {
        mpfr_mul(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }

    // directed-rounding primitives
#define THETA2_BF_FN2(name, fn)                                                         \
    static bigfloat name(const bigfloat& a, const bigfloat& b, mpfr_rnd_t rnd, prec_t p = 0) { \
        bigfloat r(p ? p : wider(a, b));                                                \
        fn(r.x_, a.x_, b.x_, rnd);                                                      \
        return r;                                                                       \
    }
    THETA2_BF_FN2(add, mpfr_add)
    THETA2_BF_FN2(sub, mpfr_sub)
    THETA2_BF_FN2(mul, mpfr_mul)
    THETA2_BF_FN2(div, mpfr_div)
    THETA2_BF_FN2(atan2, mpfr_atan2)
    THETA2_BF_FN2(hypot, mpfr_hypot)
    THETA2_BF_FN2(pow, mpfr_pow)
#undef THETA2_BF_FN2

#define THETA2_BF_FN1(name, fn)                                                 \
    static bigfloat name(const bigfloat& a, mpfr_rnd_t rnd = MPFR_RNDN, prec_t p = 0) { \
        bigfloat r(p ? p : a.prec());                                           \
        fn(r.x_, a.x_, rnd);                                                    \
        return r;                                                               \
    }
    THETA2_BF_FN1(sqrt, mpfr_sqrt)
    THETA2_BF_FN1(exp, mpfr_exp)
    THETA2_BF_FN1(log, mpfr_log)
    THETA2_BF_FN1(sin, mpfr_sin)
    THETA2_BF_FN1(cos, mpfr_cos)
    THETA2_BF_FN1(atan, mpfr_atan)
    THETA2_BF_FN1(asin, mpfr_asin)
    THETA2_BF_FN1(abs, mpfr_abs)
#undef THETA2_BF_FN1

    static bigfloat pi(prec_t p, mpfr_rnd_t rnd = MPFR_RNDN) {
        bigfloat r(p);
        mpfr_const_pi(r.x_, rnd);
        return r;
    }
    // exact scaling by 2^k
    static bigfloat mul_2si(const bigfloat& a, long k) {
        bigfloat r(a.prec());
        mpfr_mul_2si(r.x_, a.x_, k, MPFR_RNDN);
        return r;
    }
    static bigfloat pow2(long k, prec_t p = 32) {  // 2^k, exact
        bigfloat r(p);
        mpfr_set_si_2exp(r.raw(), 1, k, MPFR_RNDN);
        return r;
    }
    static bigfloat min(const bigfloat& a, const bigfloat& b) { return a <= b ? a : b; }
    static bigfloat max(const bigfloat& a, const bigfloat& b) { return a >= b ? a : b; }

    // shortest decimal string that identifies the value at its own precision,
    // format d.ddd...e+xx (always with an explicit exponent)
    std::string to_string(size_t digits = 0) const {
        if (is_nan()) return "nan";
        if (is_inf()) return sgn() < 0 ? "-inf" : "inf";
        if (is_zero()) return "0";
        if (digits == 0) digits = static_cast<size_t>(static_cast<double>(prec()) * 0.30103) + 3;
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
        std::string mant(s);
        mpfr_free_str(s);
        std::string sign;
        if (!mant.empty() && mant[0] == '-') {
            sign = "-";
            mant = mant.substr(1);
        }
        // strip trailing zeros but keep at least one digit
        size_t last = mant.find_last_not_of('0');
        mant = mant.substr(0, std::max<size_t>(last + 1, 1));
        std::string out = sign + mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(static_cast<long>(e) - 1);
        return out;
    }

  private:
    static prec_t clamp(prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }
    static prec_t wider(const bigfloat& a, const bigfloat& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }
    mpfr_t x_;
};

inline bigfloat operator*(const bigfloat& a, long b) { return a * bigfloat(b, a.prec()); }
inline bigfloat operator*(long a, const bigfloat& b) { return bigfloat(a, b.prec()) * b; }
inline bigfloat operator/(const bigfloat& a, long b) { return a / bigfloat(b, a.prec()); }
inline bigfloat operator+(const bigfloat& a, long b) { return a + bigfloat(b, a.prec()); }
inline bigfloat operator-(long a, const bigfloat& b) { return bigfloat(a, b.prec()) - b; }
inline bigfloat operator-(const bigfloat& a, long b) { return a - bigfloat(b, a.prec()); }

}  // namespace theta2
