#include "theta2/siegel.hpp"

#include <cctype>

namespace theta2 {

bigfloat q_param(const tau2& t, int j) {
    if (j < 1 || j > 3) fail(errc::internal_error, "q_param: j must be 1, 2 or 3");
    const bigfloat& y = j == 1 ? t.y1() : (j == 2 ? t.y2() : t.y3());
    return bigfloat::exp(-(bigfloat::pi(t.prec()) * y));
}

bigfloat lambda1(const tau2& t) {
    // eigenvalues of [[y1,y3],[y3,y2]]: ((y1+y2) -+ sqrt((y1-y2)^2 + 4 y3^2))/2
    bigfloat s = t.y1() + t.y2();
    bigfloat d = t.y1() - t.y2();
    bigfloat disc = bigfloat::sqrt(d * d + bigfloat::mul_2si(t.y3() * t.y3(), 2));
    return bigfloat::mul_2si(s - disc, -1);
}

bigfloat lambda1_lower(const tau2& t) {
    const prec_t p = 64;
    bigfloat y1 = t.y1().round_to(p, MPFR_RNDD), y2 = t.y2().round_to(p, MPFR_RNDD);
    bigfloat y1u = t.y1().round_to(p, MPFR_RNDU), y2u = t.y2().round_to(p, MPFR_RNDU);
    bigfloat y3a = bigfloat::abs(t.y3()).round_to(p, MPFR_RNDU);
    bigfloat s = bigfloat::add(y1, y2, MPFR_RNDD);
    bigfloat d = bigfloat::max(bigfloat::abs(bigfloat::sub(y1u, y2, MPFR_RNDU)),
                               bigfloat::abs(bigfloat::sub(y1, y2u, MPFR_RNDD)));
    bigfloat t1 = bigfloat::mul(d, d, MPFR_RNDU);
    bigfloat t2 = bigfloat::mul_2si(bigfloat::mul(y3a, y3a, MPFR_RNDU), 2);
    bigfloat disc = bigfloat::sqrt(bigfloat::add(t1, t2, MPFR_RNDU), MPFR_RNDU);
    return bigfloat::mul_2si(bigfloat::sub(s, disc, MPFR_RNDD), -1);
}

bigfloat r_value(const tau2& t) {
    bigfloat half1 = bigfloat::mul_2si(t.y1(), -1);
    bigfloat half2 = bigfloat::mul_2si(t.y2(), -1);
    return bigfloat::min(lambda1(t), bigfloat::min(half1, half2));
}

bigfloat r_lower(const tau2& t) {
    bigfloat half1 = bigfloat::mul_2si(t.y1().round_to(64, MPFR_RNDD), -1);
    bigfloat half2 = bigfloat::mul_2si(t.y2().round_to(64, MPFR_RNDD), -1);
    return bigfloat::min(lambda1_lower(t), bigfloat::min(half1, half2));
}

namespace {

bigfloat domain_eps(prec_t p) { return bigfloat::pow2(-static_cast<long>(p / 2), 32); }

}  // namespace

bool in_fprime(const tau2& t, const bigfloat* eps_in) {
    prec_t p = t.prec();
    bigfloat eps = eps_in ? *eps_in : domain_eps(p);
    bigfloat half = bigfloat(0.5, p) + eps;
    if (bigfloat::abs(t.z1.re) > half) return false;
    if (bigfloat::abs(t.z2.re) > half) return false;
    if (bigfloat::abs(t.z3.re) > half) return false;
    if (bigfloat::mul_2si(bigfloat::abs(t.y3()), 1) > t.y1() + eps) return false;
    if (t.y1() > t.y2() + eps) return false;
    bigfloat sqrt3_half = bigfloat::mul_2si(bigfloat::sqrt(bigfloat(3.0, p)), -1);
    if (t.y1() < sqrt3_half - eps) return false;
    bigfloat one_m = bigfloat(1.0, p) - eps;
    if (abs(t.z1) < one_m) return false;
    if (abs(t.z2) < one_m) return false;
    return true;
}

bool in_f1(const tau1& t, const bigfloat* eps_in) {
    prec_t p = t.prec();
    bigfloat eps = eps_in ? *eps_in : domain_eps(p);
    if (t.z.im.sgn() <= 0) return false;
    if (bigfloat::abs(t.z.re) > bigfloat(0.5, p) + eps) return false;
    if (abs(t.z) < bigfloat(1.0, p) - eps) return false;
    return true;
}

namespace {

// one real literal: [-]ddd[.ddd][e[-]dd]; returns length consumed
size_t scan_real(const std::string& s, size_t pos) {
    size_t i = pos;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    }
    if (digits == 0) return 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        size_t ed = 0;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j, ++ed;
        if (ed > 0) i = j;
    }
    return i - pos;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

bigcomplex parse_complex(const std::string& raw, prec_t p) {
    std::string s = strip(raw);
    if (s.empty()) fail(errc::parse_error, "empty complex literal");
    size_t n1 = scan_real(s, 0);
    if (n1 == 0) fail(errc::parse_error, "bad complex literal: '" + raw + "'");
    std::string first = s.substr(0, n1);
    size_t i = n1;
    if (i == s.size()) return {bigfloat::from_str(first, p), bigfloat(0.0, p)};
    if (s[i] == 'i' && i + 1 == s.size())  // purely imaginary, "1i" is i
        return {bigfloat(0.0, p), bigfloat::from_str(first, p)};
    if (s[i] != '+' && s[i] != '-') fail(errc::parse_error, "bad complex literal: '" + raw + "'");
    size_t n2 = scan_real(s, i);
    if (n2 == 0 || i + n2 >= s.size() || s[i + n2] != 'i' || i + n2 + 1 != s.size())
        fail(errc::parse_error, "bad complex literal: '" + raw + "'");
    return {bigfloat::from_str(first, p), bigfloat::from_str(s.substr(i, n2), p)};
}

tau2 parse_tau2(const std::string& s, prec_t p) {
    size_t a = s.find(';');
    size_t b = a == std::string::npos ? std::string::npos : s.find(';', a + 1);
    if (a == std::string::npos || b == std::string::npos || s.find(';', b + 1) != std::string::npos)
        fail(errc::parse_error, "tau must be three complex numbers separated by ';'");
    return {parse_complex(s.substr(0, a), p), parse_complex(s.substr(a + 1, b - a - 1), p),
            parse_complex(s.substr(b + 1), p)};
}

}  // namespace theta2
