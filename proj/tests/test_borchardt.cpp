#include <doctest.h>

#include <array>
#include <cmath>

#include "oracle.hpp"
#include "theta2/borchardt.hpp"
#include "theta2/errors.hpp"
#include "theta2/symplectic.hpp"
#include "theta2/theta.hpp"

using namespace theta2;

namespace {

std::array<err_radius, 4> zero4() { return {}; }

std::array<bigcomplex, 4> squares_0b(const theta_vec& v) {
    // (theta_{0,b}^2)_b, i.e. j = 0..3
    std::array<bigcomplex, 4> s;
    for (int j = 0; j < 4; ++j) s[static_cast<size_t>(j)] = v.value[static_cast<size_t>(j)] * v.value[static_cast<size_t>(j)];
    return s;
}

}  // namespace

TEST_CASE("real pair limit matches the frozen reference") {
    prec_t p = 192;
    std::array<bigcomplex, 2> s = {bigcomplex(1.0, 0.0, p), bigcomplex(0.25, 0.0, p)};
    limit_result r = agm_limit(s, {}, p);
    bigfloat want = bigfloat::from_str("0.56075714507190064253195054820726663512724328560165", p);
    CHECK(bigfloat::abs(r.value.re - want).to_double() < 1e-48);
    CHECK(bigfloat::abs(r.value.im).to_double() < 1e-48);
    CHECK(r.radius.v <= bigfloat::pow2(-p, 32));
    // equal inputs are a fixed point
    std::array<bigcomplex, 2> eq = {bigcomplex(1.0, 0.0, p), bigcomplex(1.0, 0.0, p)};
    CHECK(oracle::cdist(agm_limit(eq, {}, p).value, bigcomplex(1.0, 0.0, p)) < 1e-50);
}

TEST_CASE("limits are homogeneous of degree one") {
    prec_t p = 160;
    std::array<bigcomplex, 4> s = {bigcomplex(1.0, 0.0, p), bigcomplex(0.9, 0.05, p),
                                   bigcomplex(0.8, -0.1, p), bigcomplex(1.1, 0.02, p)};
    bigcomplex c(1.7, 0.6, p);
    std::array<bigcomplex, 4> cs;
    for (int i = 0; i < 4; ++i) cs[static_cast<size_t>(i)] = c * s[static_cast<size_t>(i)];
    limit_result base = borchardt_limit(s, zero4(), p);
    limit_result scld = borchardt_limit(cs, zero4(), p);
    CHECK(oracle::cdist(scld.value, c * base.value) < 1e-40);
}

TEST_CASE("iteration contracts quadratically once the spread is small") {
    prec_t p = 256;
    std::array<bigcomplex, 4> s = {bigcomplex(1.0, 0.0, p), bigcomplex(0.95, 0.02, p),
                                   bigcomplex(0.9, -0.04, p), bigcomplex(1.05, 0.01, p)};
    borchardt_state st = make_borchardt_state(s, zero4());
    double prev_spread = 0;
    for (int it = 0; it < 8; ++it) {
        double spread = 0;
        for (int i = 1; i < 4; ++i)
            spread = std::max(spread, oracle::cdist(st.s[static_cast<size_t>(i)], st.s[0]));
        if (it >= 2) {
            // d_{n+1} <= C d_n^2 with a lenient constant
            CHECK(spread <= 8.0 * prev_spread * prev_spread + 1e-70);
        }
        prev_spread = spread;
        st = borchardt_step(st);
    }
}

TEST_CASE("root selection rejects undecidable and badly spread tuples") {
    prec_t p = 128;
    // s_1 = -1 has both roots orthogonal to t_0: no decidable sign
    std::array<bigcomplex, 4> amb = {bigcomplex(1.0, 0.0, p), bigcomplex(-1.0, 0.0, p),
                                     bigcomplex(1.0, 0.0, p), bigcomplex(1.0, 0.0, p)};
    CHECK_THROWS_AS((void)good_roots(amb, zero4()), error);
    // radii so large the certificate cannot close
    std::array<err_radius, 4> fat;
    fat.fill(err_radius(0.9));
    std::array<bigcomplex, 4> ones = {bigcomplex(1.0, 0.0, p), bigcomplex(1.0, 0.0, p),
                                      bigcomplex(1.0, 0.0, p), bigcomplex(1.0, 0.0, p)};
    CHECK_THROWS_AS((void)good_roots(ones, fat), error);
}

TEST_CASE("global sign flip of the chosen roots leaves the next iterate unchanged") {
    prec_t p = 160;
    std::array<bigcomplex, 4> s = {bigcomplex(1.0, 0.0, p), bigcomplex(0.9, 0.1, p),
                                   bigcomplex(1.1, -0.05, p), bigcomplex(0.95, 0.0, p)};
    borchardt_state st = make_borchardt_state(s, zero4());
    borchardt_state a = borchardt_step(st);
    // convolution squares are invariant under t -> -t
    borchardt_state flipped = a;
    for (auto& t : flipped.t) t = -t;
    borchardt_state b1 = borchardt_step(a), b2 = borchardt_step(flipped);
    for (int i = 0; i < 4; ++i)
        CHECK(oracle::cdist(b1.s[static_cast<size_t>(i)], b2.s[static_cast<size_t>(i)]) == 0.0);
}

TEST_CASE("theta squares at doubled points form the orbit") {
    // one step from (theta_{0,b}^2(tau)) lands on (theta_{0,b}^2(2 tau))
    prec_t p = 256;
    oracle::fprime_sampler smp(1001, 6.0);
    for (int i = 0; i < 5; ++i) {
        tau2 t = smp.next(p + 32);
        theta_vec v1 = theta_all(t, p), v2 = theta_all(t.scale(1), p);
        borchardt_state st = make_borchardt_state(squares_0b(v1), zero4());
        borchardt_state nx = borchardt_step(st);
        std::array<bigcomplex, 4> want = squares_0b(v2);
        for (int b = 0; b < 4; ++b)
            CHECK(abs(nx.s[static_cast<size_t>(b)] - want[static_cast<size_t>(b)]) <=
                  bigfloat::pow2(-(p - 12), 32));
    }
}

TEST_CASE("orbit limits recover the base theta value") {
    // with good sign choices the limit of (theta_{0,b}^2(tau)) is 1, so the
    // normalized tuple s_b = theta_b^2/theta_0^2 has limit 1/theta_0^2
    prec_t p = 192;
    oracle::fprime_sampler smp(404, 4.0);
    for (int i = 0; i < 3; ++i) {
        tau2 t = smp.next(p + 32);
        theta_vec v = theta_all(t, p);
        std::array<bigcomplex, 4> sq = squares_0b(v);
        limit_result plain = borchardt_limit(sq, zero4(), p);
        CHECK(oracle::cdist(plain.value, bigcomplex(1.0, 0.0, p)) < 1e-50);
        std::array<bigcomplex, 4> quot;
        for (int b = 0; b < 4; ++b) quot[static_cast<size_t>(b)] = sq[static_cast<size_t>(b)] / sq[0];
        limit_result norm = borchardt_limit(quot, zero4(), p);
        bigcomplex inv_t0 = bigcomplex(1.0, 0.0, p) / sq[0];
        CHECK(oracle::cdist(norm.value, inv_t0) < 1e-50);
        CHECK(norm.steps >= 1);
    }
}

TEST_CASE("limit precision scales with the request") {
    prec_t hi = 512;
    std::array<bigcomplex, 4> s = {bigcomplex(1.0, 0.0, hi), bigcomplex(0.8, 0.3, hi),
                                   bigcomplex(0.9, -0.2, hi), bigcomplex(1.2, 0.1, hi)};
    limit_result a = borchardt_limit(s, zero4(), 96);
    limit_result b = borchardt_limit(s, zero4(), hi);
    CHECK(a.radius.v <= bigfloat::pow2(-96, 32));
    CHECK(b.radius.v <= bigfloat::pow2(-512, 32));
    CHECK(abs(a.value - b.value) <= bigfloat::pow2(-95, 32));
}
