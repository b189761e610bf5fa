#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "theta2/interval.hpp"
#include "theta2/numerics.hpp"

using namespace theta2;

TEST_CASE("directed rounding brackets round-to-nearest") {
    std::mt19937_64 eng(42);
    auto rnd = [&] { return (static_cast<double>(eng() >> 11) * 0x1p-53 - 0.5) * 8.0; };
    for (int i = 0; i < 200; ++i) {
        bigfloat a(rnd(), 64), b(rnd(), 64);
        bigfloat dn = bigfloat::add(a, b, MPFR_RNDD), up = bigfloat::add(a, b, MPFR_RNDU);
        CHECK(dn <= up);
        CHECK(dn <= a + b);
        CHECK(a + b <= up);
        if (!b.is_zero()) {
            bigfloat qd = bigfloat::div(a, b, MPFR_RNDD, 48), qu = bigfloat::div(a, b, MPFR_RNDU, 48);
            CHECK(qd <= qu);
        }
    }
}

TEST_CASE("pow2 and mul_2si are exact") {
    bigfloat one(1.0, 64);
    CHECK(bigfloat::pow2(-100).to_double() == std::pow(2.0, -100));
    CHECK(bigfloat::mul_2si(one, 30) == bigfloat(1073741824.0, 64));
    bigfloat x(0.7, 53);
    CHECK(bigfloat::mul_2si(bigfloat::mul_2si(x, 41), -41) == x);
}

TEST_CASE("to_string emits explicit exponent form and survives reparse") {
    bigfloat x = bigfloat::from_str("3.14159265358979323846", 128);
    std::string s = x.to_string();
    CHECK(s.find('e') != std::string::npos);
    bigfloat y = bigfloat::from_str(s, 128);
    CHECK(bigfloat::abs(x - y).to_double() < 1e-35);
    CHECK(bigfloat(0.0, 64).to_string() == "0");
    CHECK(bigfloat::from_str("-2.5e-3", 64).to_double() == -0.0025);
}

TEST_CASE("err_radius combines upward") {
    err_radius a = err_radius::from_exp2(-100);
    err_radius b = err_radius::from_exp2(-101);
    CHECK((a + b).to_double() >= a.to_double() + b.to_double() * 0.999);
    CHECK(a.plus_exp2(-100).to_double() == std::pow(2.0, -99));
    bigfloat mag(2.0, 32);
    err_radius m = err_radius::mul(mag, a, mag, b);
    // |x| ry + |y| rx + rx ry, everything rounded up
    CHECK(m.to_double() >= 2 * a.to_double() + 2 * b.to_double());
    CHECK(err_radius::zero().is_zero());
}

TEST_CASE("complex magnitude bounds and principal square root") {
    bigcomplex z(3.0, -4.0, 96);
    CHECK(abs_down(z) <= abs(z));
    CHECK(abs(z) <= abs_up(z));
    CHECK(abs(z).to_double() == doctest::Approx(5.0));
    bigcomplex r = principal_sqrt(z);
    CHECK(r.re.sgn() > 0);
    bigcomplex back = r * r;
    CHECK(abs(back - z).to_double() < 1e-25);
    // negative real axis lands on the positive imaginary ray
    bigcomplex n = principal_sqrt(bigcomplex(-4.0, 0.0, 96));
    CHECK(n.re.is_zero());
    CHECK(n.im.to_double() == doctest::Approx(2.0));
}

TEST_CASE("exp_ipi lies on the expected circle") {
    for (double x : {0.0, 0.25, -0.3, 0.5, 1.0, -1.0}) {
        bigcomplex w(x, 0.7, 128);
        bigcomplex e = exp_ipi(w);
        double want = std::exp(-M_PI * 0.7);
        CHECK(abs(e).to_double() == doctest::Approx(want).epsilon(1e-12));
        CHECK(arg(e).to_double() ==
              doctest::Approx(std::remainder(M_PI * x, 2 * M_PI)).epsilon(1e-12));
    }
}

TEST_CASE("angular span certificate with and without radii") {
    prec_t p = 96;
    std::vector<bigcomplex> pts = {bigcomplex(1.0, 0.1, p), bigcomplex(1.0, -0.1, p),
                                   bigcomplex(0.8, 0.3, p), bigcomplex(1.2, 0.0, p)};
    CHECK(good_position(pts));
    // scale invariance: rotate and scale the whole tuple
    bigcomplex c(0.3, 1.7, p);
    std::vector<bigcomplex> rot;
    for (auto& z : pts) rot.push_back(z * c);
    CHECK(good_position(rot));
    // an opposite pair can never sit in a quarter plane
    std::vector<bigcomplex> bad = {bigcomplex(1.0, 0.0, p), bigcomplex(-1.0, 0.02, p)};
    CHECK(!good_position(bad));
    // a disk meeting zero poisons the certificate
    std::vector<err_radius> fat(pts.size(), err_radius(2.0));
    CHECK(!good_position(pts, fat));
    bigfloat span = angular_span(pts, std::vector<err_radius>(pts.size()));
    CHECK(span.to_double() > 0.0);
    CHECK(span.to_double() < 0.6);
}

TEST_CASE("convex tail bound dominates the exact series") {
    // f(k) = (k+1)^2: sum q^((k+1)^2) against q^1/(1 - q^3)
    bigfloat q(0.3, 64);
    bigfloat bound = tail_bound(bigfloat(1.0, 64), bigfloat(4.0, 64), q);
    double exact = 0;
    for (int k = 1; k < 40; ++k) exact += std::pow(0.3, k * k);
    CHECK(bound.to_double() >= exact);
    CHECK(bound.to_double() < exact * 1.4);
}

TEST_CASE("interval arithmetic encloses point evaluation") {
    ival a = ival::from_str("0.1");
    CHECK(a.lo() <= a.hi());
    CHECK(a.lo() < a.hi());  // 0.1 is not a binary float: endpoints differ
    ival b = ival::from_str("0.7");
    ival s = a + b, d = a - b, m = a * b, q = a / b;
    CHECK(s.lo().to_double() <= 0.8);
    CHECK(0.8 <= s.hi().to_double() + 1e-16);
    CHECK(d.hi().to_double() >= -0.6 - 1e-16);
    CHECK(m.lo().to_double() <= 0.07);
    CHECK(q.hi().to_double() >= 1.0 / 7.0);
    CHECK(ival::pi().lo() < bigfloat::pi(256));
    CHECK(bigfloat::pi(256) < ival::pi().hi());
    CHECK(ival::sqrt(ival(2.0)).lo().to_double() == doctest::Approx(std::sqrt(2.0)));
    CHECK(ival::asin(ival(0.5)).hi().to_double() == doctest::Approx(M_PI / 6).epsilon(1e-14));
    CHECK_THROWS_AS((void)ival::asin(ival(1.5)), error);
    CHECK_THROWS_AS((void)(a / (a - a)), error);
    CHECK_THROWS_AS((void)ival::pow01(ival(1.5), ival(2.0)), error);
    ival pw = ival::pow01(ival::from_str("0.3"), ival(2.0));
    CHECK(pw.lo().to_double() <= 0.09);
    CHECK(0.09 <= pw.hi().to_double() + 1e-15);
    CHECK(ival(1.0).certainly_lt(ival(2.0)));
    CHECK(!ival(1.0).certainly_lt(ival(1.0)));
    CHECK((a - a).contains_zero());
}
