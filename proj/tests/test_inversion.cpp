#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "theta2/errors.hpp"
#include "theta2/inversion.hpp"
#include "theta2/theta.hpp"

using namespace theta2;

namespace {

double entrywise_dist(const tau2& a, const tau2& b) {
    return std::max({oracle::cdist(a.z1, b.z1), oracle::cdist(a.z2, b.z2),
                     oracle::cdist(a.z3, b.z3)});
}

theta_quotients2 exact_quotients(const tau2& t, prec_t p) {
    theta_quotients2 q = quotients_from_theta(theta_all(t, p));
    return q;
}

}  // namespace

TEST_CASE("even slot layout is ascending") {
    for (size_t i = 0; i < kEvenChars.size(); ++i)
        CHECK(even_slot(kEvenChars[i]) == static_cast<int>(i));
    CHECK(even_slot(0) == 0);
    CHECK(even_slot(15) == 9);
}

TEST_CASE("quotient extraction normalizes the first slot") {
    tau2 t = parse_tau2("0.5+1i; 2i; 0.3i", 192);
    theta_quotients2 q = exact_quotients(t, 160);
    CHECK(q.q[0].re.to_double() == doctest::Approx(1.0));
    CHECK(q.q[0].im.is_zero());
    theta_vec v = theta_all(t, 160);
    bigcomplex direct = (v.value[4] * v.value[4]) / (v.value[0] * v.value[0]);
    CHECK(oracle::cdist(q.q[static_cast<size_t>(even_slot(4))], direct) < 1e-40);
}

TEST_CASE("round trip: quotients back to the sampled point") {
    const prec_t p = 256;
    oracle::fprime_sampler smp(555, 8.0, /*canonical=*/true);
    for (int i = 0; i < 5; ++i) {
        tau2 t = smp.next(p + 48);
        recovered_tau rt = recover_tau(exact_quotients(t, p + 16), p);
        CHECK(entrywise_dist(rt.tau, t) < std::pow(2.0, -232));
        CHECK(rt.radius.v <= bigfloat::pow2(-(p - 40), 32));
    }
}

TEST_CASE("mirrored input recovers the canonical representative") {
    const prec_t p = 192;
    tau2 t = parse_tau2("0.25+1.1i; -0.3+2.2i; 0.1+0.4i", p + 48);
    tau2 mirrored(t.z1, t.z2, -t.z3);
    // the even squared quotients cannot tell t from mirrored
    theta_quotients2 qa = exact_quotients(t, p + 16);
    theta_quotients2 qb = exact_quotients(mirrored, p + 16);
    for (int s = 0; s < 10; ++s)
        CHECK(oracle::cdist(qa.q[static_cast<size_t>(s)], qb.q[static_cast<size_t>(s)]) < 1e-40);
    recovered_tau ra = recover_tau(qa, p), rb = recover_tau(qb, p);
    CHECK(entrywise_dist(ra.tau, rb.tau) < 1e-40);
    CHECK(ra.tau.z3.im.sgn() >= 0);  // canonical orientation
    CHECK(entrywise_dist(ra.tau, t) < 1e-40);
}

TEST_CASE("vanishing off-diagonal entry collapses cleanly") {
    const prec_t p = 192;
    tau2 t = parse_tau2("0.3+1.2i; 0.1+2.5i; 0", p + 48);
    recovered_tau rt = recover_tau(exact_quotients(t, p + 16), p);
    CHECK(rt.tau.z3.is_zero());
    CHECK(oracle::cdist(rt.tau.z1, t.z1) < 1e-40);
    CHECK(oracle::cdist(rt.tau.z2, t.z2) < 1e-40);
    // the z3 disk is the square-root blowup of the input radius, not 2^-p
    CHECK(rt.radius.v <= bigfloat::pow2(-(p - 64) / 2, 32));
}

TEST_CASE("inconsistent quotients are rejected") {
    const prec_t p = 128;
    theta_quotients2 q = exact_quotients(parse_tau2("0.5+1i; 2i; 0.3i", p + 48), p + 16);
    // corrupt one slot badly; the series consistency guard must notice
    q.q[5] = q.q[5] * bigfloat(1.5, q.prec);
    CHECK_THROWS_AS((void)recover_tau(q, p), error);
}

TEST_CASE("genus-1 round trip and Newton evaluation") {
    const prec_t p = 256;
    oracle::fprime_sampler smp(808, 16.0);
    for (int i = 0; i < 5; ++i) {
        tau1 z = smp.next_g1(p + 48);
        theta1_vec v = theta_g1(z, p + 16);
        bigcomplex lam = (v.value[1] * v.value[1]) / (v.value[0] * v.value[0]);
        recovered_tau1 rt = recover_tau_g1(lam, err_radius::from_exp2(-(p + 8)), p);
        // high points are ill-conditioned: lambda sits within e^(-pi y) of 1,
        // so the certified disk grows by that factor over the input radius
        long cond = static_cast<long>(std::ceil(z.z.im.to_double() * 4.5324));
        CHECK(oracle::cdist(rt.tau.z, z.z) < std::pow(2.0, std::max(-240.0, -270.0 + cond)));
        CHECK(rt.radius.v <= bigfloat::pow2(-(p + 8) + cond + 8, 32));
    }
    // Newton evaluation agrees with the series
    for (prec_t wp : {128, 1024}) {
        tau1 z{parse_complex("0.25+1.1i", wp + 32)};
        theta1_vec a = theta_g1(z, wp), b = theta_g1_newton(z, wp);
        for (int j = 0; j < 3; ++j)
            CHECK(abs(a.value[static_cast<size_t>(j)] - b.value[static_cast<size_t>(j)]) <=
                  (a.radius[static_cast<size_t>(j)] + b.radius[static_cast<size_t>(j)]).v);
    }
}

TEST_CASE("recovered radius shrinks with the precision request") {
    tau2 t = parse_tau2("0.5+1i; 2i; 0.3i", 640);
    theta_quotients2 q = exact_quotients(t, 560);
    double prev = 1.0;
    for (prec_t p : {96, 192, 384}) {
        recovered_tau rt = recover_tau(q, p);
        double r = rt.radius.to_double();
        CHECK(r < prev);
        CHECK(rt.radius.v <= bigfloat::pow2(-(p - 40), 32));
        prev = r;
    }
}
