#include <doctest.h>

#include <array>
#include <cmath>
#include <string>

#include "oracle.hpp"
#include "theta2/errors.hpp"
#include "theta2/theta.hpp"

using namespace theta2;

namespace {

// Reference values computed with an unrelated arbitrary-precision package
// (direct lattice summation at 60 significant digits, truncated here to 37).
// Empty string means the true value is exactly 0. The tau coordinates are
// binary64 on purpose: the generator consumed doubles, so the test point must
// be bit-identical or the 16th digit of every value drifts.
struct frozen_point {
    double x1, y1, x2, y2, x3, y3;
    std::array<const char*, 16> v;
};

const frozen_point kFrozen[] = {
    {0, 1, 0, 1, 0, 0,
     {"1.180340599016096226045337940558488587234", "0.9925441784910574194770080685760078993011",
      "0.9925441784910574194770080685760078993011", "0.834626841674073186281429732799046808994",
      "0.9925441784910574194770080685760078993011", "", "0.834626841674073186281429732799046808994",
      "", "0.9925441784910574194770080685760078993011", "0.834626841674073186281429732799046808994",
      "", "", "0.834626841674073186281429732799046808994", "", "", "0"}},
    {0.5, 1, 0, 2, 0, 0.3,
     {"1.003742425440428034922058993930621221931+0.08751532677286786511586717941650653554123i",
      "1.003742425440428034922058993930621221931-0.08751532677286786511586717941650653554123i",
      "0.9962715239779622163109010411634167107084+0.08534034637555701038750992427767129068895i",
      "0.9962715239779622163109010411634167107084-0.08534034637555701038750992427767129068895i",
      "0.8454912433455605556689586892953316002238+0.3502139398614220313477510638362612085086i",
      "", "0.8362898573142590337602959534736986749098+0.3464026009746265928915512151275370086914i",
      "", "0.4157703732814465046637274263918093617506+0.0531101630370936776870982599083430170302i",
      "0.4157703732814465046637274263918093617506-0.0531101630370936776870982599083430170302i",
      "", "", "0.3884562008732588711330952128205294597635+0.1609038267896311527822654607187966561224i",
      "", "", "0.1724967723727734338173764437220349653211+0.07145050258238736754702044980603495660295i"}},
    // a point outside the reduction domain (|z1| < 1): evaluation only needs
    // the eigenvalue floor
    {-0.25, 0.9, 0.125, 1.3, 0.375, 0.41,
     {"1.090529411785628444090945285754860442056-0.08073162560232755678700657723479571080862i",
      "0.971704187542845063609629340588018290056+0.106375997209297852469916578577840385714i",
      "1.076761759571688279043852218389744046608-0.08660811878859855550792465423156893662064i",
      "0.8609066164920803041455183514908173752462+0.06096462572216739061480200202156379021844i",
      "1.001647263665829631010490720290908439096-0.2386813599091150043042325709626875076536i",
      "", "0.9318660791628260487825339373608633377629-0.1529615245993994161014680204599986518726i",
      "", "0.6821390795382445819969262095281160682672-0.07132042817392686304539638300041596651421i",
      "0.752231406892942633644937536967477952444+0.2130478438328779810735461530470478001172i",
      "", "", "0.6799708315293642743801750703398270326434-0.339336177573416202081019009645363295987i",
      "", "", "0.366605472367577618692935443744011213303-0.5190255882714435917906578928678133763258i"}},
};

bigcomplex parse_ref(const std::string& s, prec_t p) {
    return s.empty() ? bigcomplex(p) : parse_complex(s, p);
}

}  // namespace

TEST_CASE("certified evaluation matches the frozen external reference") {
    const prec_t p = 192;
    for (const frozen_point& fp : kFrozen) {
        const prec_t q = p + 32;
        tau2 t(bigcomplex(bigfloat(fp.x1, q), bigfloat(fp.y1, q)),
               bigcomplex(bigfloat(fp.x2, q), bigfloat(fp.y2, q)),
               bigcomplex(bigfloat(fp.x3, q), bigfloat(fp.y3, q)));
        theta_vec v = theta_all(t, p);
        for (int j = 0; j < 16; ++j) {
            bigcomplex want = parse_ref(fp.v[static_cast<size_t>(j)], p);
            // reference digits quantize at ~1e-37
            CHECK(oracle::cdist(v.value[static_cast<size_t>(j)], want) < 5e-36);
            CHECK(v.radius[static_cast<size_t>(j)].v <= bigfloat::pow2(-p, 32));
        }
    }
}

TEST_CASE("certified evaluation matches an independent brute-force sum") {
    const prec_t p = 320;
    oracle::fprime_sampler smp(2024, 4.0);
    for (int i = 0; i < 3; ++i) {
        tau2 t = smp.next(p + 64);
        theta_vec v = theta_all(t, p);
        for (int j : kEvenChars) {
            bigcomplex ref = oracle::theta_naive(t, j, p + 64);
            CHECK(abs(v.value[static_cast<size_t>(j)] - ref) <= bigfloat::pow2(-300, 32));
        }
    }
}

TEST_CASE("odd characteristics vanish identically") {
    theta_vec v = theta_all(parse_tau2("0.3+1.2i; -0.4+2.5i; 0.2+0.5i", 160), 128);
    for (int j : {5, 7, 10, 11, 13, 14}) {
        CHECK(v.value[static_cast<size_t>(j)].is_zero());
        CHECK(v.radius[static_cast<size_t>(j)].is_zero());
    }
}

TEST_CASE("diagonal points factor into genus-1 products") {
    const prec_t p = 160;
    tau1 w1{parse_complex("0.25+1.5i", p + 32)}, w2{parse_complex("-0.125+3i", p + 32)};
    tau2 diag(w1.z, w2.z, bigcomplex(p + 32));
    theta_vec v = theta_all(diag, p);
    theta1_vec f1 = theta_g1(w1, p), f2 = theta_g1(w2, p);
    for (int j = 0; j < 16; ++j) {
        int j1 = char_b0(j) + 2 * char_a0(j), j2 = char_b1(j) + 2 * char_a1(j);
        bigcomplex prod = f1.value[static_cast<size_t>(j1)] * f2.value[static_cast<size_t>(j2)];
        CHECK(abs(v.value[static_cast<size_t>(j)] - prod) <= bigfloat::pow2(-(p - 8), 32));
    }
}

TEST_CASE("genus-1 Jacobi identity") {
    const prec_t p = 160;
    oracle::fprime_sampler smp(7, 8.0);
    for (int i = 0; i < 10; ++i) {
        tau1 z = smp.next_g1(p + 32);
        theta1_vec v = theta_g1(z, p);
        bigcomplex t0 = bigcomplex::pow_si(v.value[0], 4);
        bigcomplex t1 = bigcomplex::pow_si(v.value[1], 4);
        bigcomplex t2 = bigcomplex::pow_si(v.value[2], 4);
        CHECK(abs(t0 - (t1 + t2)) <= bigfloat::pow2(-(p - 8), 32));
        CHECK(v.value[3].is_zero());
        for (int j : {0, 1, 2}) {
            bigcomplex ref = oracle::theta_naive_g1(z, j, p + 64);
            CHECK(abs(v.value[static_cast<size_t>(j)] - ref) <= bigfloat::pow2(-(p - 2), 32));
        }
    }
}

TEST_CASE("evaluation rejects points under the eigenvalue floor") {
    CHECK_THROWS_AS((void)theta_all(parse_tau2("0.0005i; 0.0005i; 0", 96), 64), error);
    try {
        (void)theta_all(parse_tau2("0.0005i; 0.0005i; 0", 96), 64);
    } catch (const error& e) {
        CHECK(e.code() == errc::domain_error);
    }
}

TEST_CASE("precision scaling: radius tracks the request") {
    tau2 t = parse_tau2("0.5+1i; 2i; 0.3i", 640);
    for (prec_t p : {64, 128, 256, 512}) {
        theta_vec v = theta_all(t, p);
        for (int j : kEvenChars)
            CHECK(v.radius[static_cast<size_t>(j)].v <= bigfloat::pow2(-p, 32));
    }
    // values at different precisions agree within the coarser radius
    theta_vec lo = theta_all(t, 96), hi = theta_all(t, 512);
    for (int j : kEvenChars)
        CHECK(abs(lo.value[static_cast<size_t>(j)] - hi.value[static_cast<size_t>(j)]) <=
              bigfloat::pow2(-95, 32));
}

TEST_CASE("first-term approximants carry certified envelopes") {
    const prec_t p = 128;
    oracle::fprime_sampler smp(99, 8.0);
    struct trial {
        bound_kind kind;
        long knum, kden;
    };
    const trial trials[] = {{bound_kind::b46, 1, 1},  {bound_kind::b46, 2, 1},
                            {bound_kind::b89, 1, 1},  {bound_kind::b0, 1, 1},
                            {bound_kind::b02, 1, 1},  {bound_kind::b01, 1, 1},
                            {bound_kind::b1all, 1, 1},{bound_kind::b12, 1, 1},
                            {bound_kind::bp01, 8, 3}, {bound_kind::bp89, 8, 3}};
    int evaluated = 0;
    for (int i = 0; i < 30; ++i) {
        tau2 t = smp.next(p + 32);
        theta_vec v = theta_all(t, p);
        for (const trial& tr : trials) {
            bound_report rep;
            try {
                rep = xi_rho(t, tr.kind, tr.knum, tr.kden);
            } catch (const error& e) {
                CHECK(e.code() == errc::domain_error);  // hypotheses not certifiable here
                continue;
            }
            ++evaluated;
            bigfloat tol = rep.disk_radius().v + bigfloat::pow2(-p, 32) + bigfloat::pow2(-120, 32);
            for (int j : rep.js)
                CHECK(abs(v.value[static_cast<size_t>(j)] - rep.xi) <= tol);
        }
    }
    CHECK(evaluated > 100);  // the hypotheses hold at most reduced points
}

TEST_CASE("good position envelopes and criterion") {
    // envelopes are increasing in q and certified below sqrt(2)/2 at the gates
    ival e1 = envelope_r(ival::from_str("0.1")), e2 = envelope_r(ival::from_str("0.287"));
    CHECK(e1.hi() < e2.lo());
    CHECK(e2.hi().to_double() < std::sqrt(2.0) / 2);
    ival l1 = envelope_lambda(ival::from_str("0.05")), l2 = envelope_lambda(ival::from_str("0.152"));
    CHECK(l1.hi() < l2.lo());
    CHECK(l2.hi().to_double() < std::sqrt(2.0) / 2);

    CHECK(good_position_criterion(parse_tau2("1i; 1i; 0", 96)) == gp_reason::by_r);
    // r = y1/2 = 0.35 under the r gate while lambda1 = 0.7 clears its own
    CHECK(good_position_criterion(parse_tau2("0.7i; 40i; 0", 96)) == gp_reason::by_lambda1);
    CHECK(good_position_criterion(parse_tau2("0.1i; 0.1i; 0", 96)) == gp_reason::unknown);
    CHECK_THROWS_AS((void)good_position_criterion(parse_tau2("1i; -2i; 0", 96)), error);
}

TEST_CASE("lower bounds after base change hold at sample points") {
    oracle::fprime_sampler smp(31337, 8.0);
    for (int i = 0; i < 20; ++i) {
        tau2 t = smp.next(128);
        gamma_lower_bounds lb = lower_bounds_at_gamma(t);
        CHECK(lb.r_gamma1.sgn() > 0);
        CHECK(lb.r_gamma2.sgn() > 0);
        CHECK(lb.lambda1_gamma3.sgn() > 0);
        // certified forms: 9 y1/(34 |z1|^2), 9 y2/(34 |z2|^2), 9/(44 y2)
        double y1 = t.y1().to_double(), y2 = t.y2().to_double();
        double n1 = abs(t.z1).to_double(), n2 = abs(t.z2).to_double();
        CHECK(lb.r_gamma1.to_double() == doctest::Approx(9 * y1 / (34 * n1 * n1)).epsilon(1e-9));
        CHECK(lb.r_gamma2.to_double() == doctest::Approx(9 * y2 / (34 * n2 * n2)).epsilon(1e-9));
        CHECK(lb.lambda1_gamma3.to_double() == doctest::Approx(9 / (44 * y2)).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)lower_bounds_at_gamma(parse_tau2("0.9i; 2i; 0", 96)), error);
}
