#include "theta2/inversion.hpp"

#include <algorithm>
#include <utility>

namespace theta2 {

namespace {

long ceil_log2_l(long n) {
    long e = 0;
    while ((1L << e) < n) ++e;
    return e;
}

bigcomplex one_at(prec_t w) { return {bigfloat(1L, w), bigfloat(0L, w)}; }

// enclosure of x* y* for |x - x*| <= rx, |y - y*| <= ry, plus rounding
bigcomplex cmul(const bigcomplex& x, const err_radius& rx, const bigcomplex& y,
                const err_radius& ry, err_radius* rout) {
    bigcomplex p = x * y;
    if (rout) {
        *rout = err_radius::mul(abs_up(x), rx, abs_up(y), ry)
                    .plus_exp2(abs_up(p).exp2() - p.prec() + 3);
    }
    return p;
}

// enclosure of x*/y*; requires the denominator disk to avoid zero
bigcomplex cdiv(const bigcomplex& x, const err_radius& rx, const bigcomplex& y,
                const err_radius& ry, err_radius* rout) {
    bigfloat den = bigfloat::sub(abs_down(y), ry.v, MPFR_RNDD);
    if (!(den > 0.0)) fail(errc::domain_error, "quotient denominator not bounded away from zero");
    bigcomplex q = x / y;
    if (rout) {
        bigfloat num = bigfloat::add(rx.v, bigfloat::mul(abs_up(q), ry.v, MPFR_RNDU), MPFR_RNDU);
        err_radius r(bigfloat::div(num, den, MPFR_RNDU));
        *rout = r.plus_exp2(abs_up(q).exp2() - q.prec() + 3);
    }
    return q;
}

// certified square root with the two-fold ambiguity resolved canonically:
// im >= 0, and re >= 0 when im is exactly zero. When |s| is dominated by its
// own radius the root collapses to 0 with radius sqrt(8 rs); when the sign of
// im is not certified the radius is inflated to cover both representatives.
bigcomplex canonical_sqrt(const bigcomplex& s, const err_radius& rs, err_radius* rout) {
    prec_t w = s.prec();
    bigfloat a_up = abs_up(s), a_dn = abs_down(s);
    if (a_up <= bigfloat::mul_2si(rs.v, 2)) {
        // |root*|^2 <= |s| + rs <= 5 rs
        *rout = err_radius(bigfloat::sqrt(bigfloat::mul_2si(rs.v, 3), MPFR_RNDU));
        return bigcomplex(w);
    }
    bigcomplex t = csqrt_principal(s);
    bigfloat m = bigfloat::sub(a_dn, rs.v, MPFR_RNDD);
    // min over signs: |t -+ sqrt(s*)| <= rs / sqrt(|s| - rs)
    err_radius r(bigfloat::div(rs.v, bigfloat::sqrt(m, MPFR_RNDD), MPFR_RNDU));
    r = r.plus_exp2(abs_up(t).exp2() - w + 3);
    if (t.im.sgn() < 0 || (t.im.is_zero() && t.re.sgn() < 0)) t = -t;
    if (bigfloat::abs(t.im) <= r.v) {
        // representative choice uncertain; cover the flipped candidate too
        r.v = bigfloat::mul_2si(bigfloat::add(r.v, bigfloat::abs(t.im).round_to(err_radius::kPrec, MPFR_RNDU), MPFR_RNDU), 2);
    }
    *rout = r;
    return t;
}

struct lifted_q {
    std::array<bigcomplex, 10> q;
    std::array<err_radius, 10> radius;
};

lifted_q lift(const theta_quotients2& in, prec_t w) {
    lifted_q out;
    for (int i = 0; i < 10; ++i) {
        out.q[i] = in.q[i].round_to(w);
        out.radius[i] = in.q[i].prec() > w
                            ? in.radius[i].plus_exp2(abs_up(in.q[i]).exp2() - w + 2)
                            : in.radius[i];
    }
    return out;
}

std::array<initial_tuple, 4> tuples_from(const std::array<bigcomplex, 10>& q,
                                         const std::array<err_radius, 10>& rq, prec_t w) {
    // slots: 0->j0, 1->j1, 2->j2, 3->j3, 4->j4, 5->j6, 6->j8, 7->j9, 8->j12
    std::array<initial_tuple, 4> out;
    bigcomplex one = one_at(w);
    auto put = [&](int k, int pos, bigcomplex v, err_radius r) {
        out[k].s[pos] = std::move(v);
        out[k].radius[pos] = r;
    };
    for (int k = 0; k < 4; ++k) put(k, 0, one, err_radius::zero());

    put(0, 1, q[1], rq[1]);
    put(0, 2, q[2], rq[2]);
    put(0, 3, q[3], rq[3]);

    err_radius r;
    bigcomplex v = cdiv(one, err_radius::zero(), q[4], rq[4], &r);
    put(1, 1, v, r);
    v = cdiv(q[5], rq[5], q[4], rq[4], &r);
    put(1, 2, v, r);
    v = cdiv(q[2], rq[2], q[4], rq[4], &r);
    put(1, 3, v, r);

    v = cdiv(q[7], rq[7], q[6], rq[6], &r);
    put(2, 1, v, r);
    v = cdiv(one, err_radius::zero(), q[6], rq[6], &r);
    put(2, 2, v, r);
    v = cdiv(q[1], rq[1], q[6], rq[6], &r);
    put(2, 3, v, r);

    put(3, 1, q[6], rq[6]);
    put(3, 2, q[4], rq[4]);
    put(3, 3, q[8], rq[8]);

    return out;
}

}  // namespace

int even_slot(int j) {
    for (int i = 0; i < 10; ++i)
        if (kEvenChars[i] == j) return i;
    fail(errc::internal_error, "not an even characteristic index");
}

theta_quotients2 quotients_from_theta(const theta_vec& v) {
    theta_quotients2 out;
    out.prec = v.prec;
    prec_t w = v.prec + 32;
    for (int i = 0; i < 10; ++i) {
        int j = kEvenChars[i];
        if (j == 0) {
            out.q[i] = one_at(w);
            out.radius[i] = err_radius::zero();
            continue;
        }
        err_radius r;
        bigcomplex t = cdiv(v.value[j], v.radius[j], v.value[0], v.radius[0], &r);
        out.q[i] = cmul(t, r, t, r, &out.radius[i]);
    }
    return out;
}

std::array<initial_tuple, 4> initial_tuples(const theta_quotients2& q) {
    prec_t w = std::max<prec_t>(q.prec + 32, q.q[1].prec());
    lifted_q lq = lift(q, w);
    return tuples_from(lq.q, lq.radius, w);
}

recovered_tau recover_tau(const theta_quotients2& q, prec_t p) {
    if (p < 8 || p > (1L << 24)) fail(errc::domain_error, "precision out of range");
    const long g = 24 + ceil_log2_l(p);
    const prec_t pl = p + g;   // Borchardt limit target
    const prec_t w = pl + 32;  // arithmetic width

    lifted_q lq = lift(q, w);
    std::array<initial_tuple, 4> tup = tuples_from(lq.q, lq.radius, w);
    std::array<limit_result, 4> lim;
    for (int k = 0; k < 4; ++k) {
        try {
            lim[k] = borchardt_limit(tup[k].s, tup[k].radius, pl);
        } catch (const error& e) {
            fail(e.code(), "limit sequence " + std::to_string(k) + ": " + e.what());
        }
    }

    // z1 = i L0/(Q4 L1), z2 = i L0/(Q8 L2), det = -L0/L3
    err_radius rd1, rd2, r1, r2, rdet;
    bigcomplex d1 = cmul(lq.q[4], lq.radius[4], lim[1].value, lim[1].radius, &rd1);
    bigcomplex z1 = bigcomplex::i_times(cdiv(lim[0].value, lim[0].radius, d1, rd1, &r1));
    bigcomplex d2 = cmul(lq.q[6], lq.radius[6], lim[2].value, lim[2].radius, &rd2);
    bigcomplex z2 = bigcomplex::i_times(cdiv(lim[0].value, lim[0].radius, d2, rd2, &r2));
    bigcomplex det = -cdiv(lim[0].value, lim[0].radius, lim[3].value, lim[3].radius, &rdet);

    err_radius r12;
    bigcomplex z12 = cmul(z1, r1, z2, r2, &r12);
    bigcomplex z3sq = z12 - det;
    err_radius r3sq =
        (r12 + rdet).plus_exp2(std::max(abs_up(z12).exp2(), abs_up(det).exp2()) - w + 2);
    err_radius r3;
    bigcomplex z3 = canonical_sqrt(z3sq, r3sq, &r3);

    // low-precision series consistency check at the recovered point
    tau2 back(z1.round_to(96), z2.round_to(96), z3.round_to(96));
    if (!back.im_positive_definite())
        fail(errc::domain_error, "recovered point is not in the upper half space");
    theta_vec chk = theta_all(back, 64);
    for (int i = 0; i < 10; ++i) {
        int j = kEvenChars[i];
        err_radius rc;
        bigcomplex t = cdiv(chk.value[j], chk.radius[j], chk.value[0], chk.radius[0], &rc);
        bigcomplex qs = cmul(t, rc, t, rc, &rc);
        double diff = err_radius(abs_up(qs - lq.q[i].round_to(96))).to_double();
        double tol = 1.6e-5 + 512.0 * (r3.to_double() + lq.radius[i].to_double());
        if (diff > tol)
            fail(errc::domain_error,
                 "quotients inconsistent with the recovered point (slot " + std::to_string(i) +
                     ")");
    }

    const prec_t pout = p + 32;
    auto fin = [&](const bigcomplex& zv, const err_radius& rz) {
        return std::pair<bigcomplex, err_radius>(zv.round_to(pout),
                                                 rz.plus_exp2(abs_up(zv).exp2() - pout + 2));
    };
    auto [f1, fr1] = fin(z1, r1);
    auto [f2, fr2] = fin(z2, r2);
    auto [f3, fr3] = fin(z3, r3);
    err_radius rmax = fr1 <= fr2 ? fr2 : fr1;
    if (rmax <= fr3) rmax = fr3;
    return {tau2(std::move(f1), std::move(f2), std::move(f3)), rmax};
}

recovered_tau1 recover_tau_g1(const bigcomplex& lambda, const err_radius& lambda_radius,
                              prec_t p) {
    if (p < 8 || p > (1L << 24)) fail(errc::domain_error, "precision out of range");
    const long g = 24 + ceil_log2_l(p);
    const prec_t pl = p + g;
    const prec_t w = pl + 32;

    bigcomplex lam = lambda.round_to(w);
    err_radius rl = lambda.prec() > w
                        ? lambda_radius.plus_exp2(abs_up(lambda).exp2() - w + 2)
                        : lambda_radius;
    bigcomplex one = one_at(w);

    err_radius rsq;
    bigcomplex lsq = cmul(lam, rl, lam, rl, &rsq);
    bigcomplex mu2 = one - lsq;
    err_radius rmu2 = rsq.plus_exp2(-w + 2);
    if (abs_up(mu2) <= bigfloat::mul_2si(rmu2.v, 2))
        fail(errc::domain_error, "quotient is 1: the point degenerates to a cusp");
    bigcomplex mu = csqrt_principal(mu2);
    if (mu.re.sgn() < 0) mu = -mu;  // re > 0 branch
    bigfloat m = bigfloat::sub(abs_down(mu2), rmu2.v, MPFR_RNDD);
    err_radius rmu(bigfloat::div(rmu2.v, bigfloat::sqrt(m, MPFR_RNDD), MPFR_RNDU));
    rmu = rmu.plus_exp2(abs_up(mu).exp2() - w + 3);

    limit_result m0 = agm_limit({one, lam}, {err_radius::zero(), rl}, pl);
    limit_result m1 = agm_limit({one, mu}, {err_radius::zero(), rmu}, pl);
    err_radius rq;
    bigcomplex t = bigcomplex::i_times(cdiv(m0.value, m0.radius, m1.value, m1.radius, &rq));
    if (t.im.sgn() <= 0)
        fail(errc::domain_error, "recovered point is not in the upper half plane");

    const prec_t pout = p + 32;
    err_radius rt = rq.plus_exp2(abs_up(t).exp2() - pout + 2);
    return {tau1(t.round_to(pout)), rt};
}

theta1_vec theta_g1_newton(const tau1& z, prec_t p) {
    if (p < 8 || p > (1L << 24)) fail(errc::domain_error, "precision out of range");
    if (!in_f1(z)) fail(errc::domain_error, "point is not reduced");
    const prec_t target = p + 32;

    // series start
    theta1_vec v0 = theta_g1(tau1(z.z.round_to(96)), 64);
    err_radius rl;
    bigcomplex lam = cdiv(v0.value[1], v0.radius[1], v0.value[0], v0.radius[0], &rl);
    lam = cmul(lam, rl, lam, rl, &rl);

    prec_t cur = 64;
    bigfloat res_prev = bigfloat(1.0, 32);
    bool have_prev = false;
    bigfloat deriv_lo(1.0, 32);
    while (cur < target) {
        cur = std::min<prec_t>(2 * cur, target);
        prec_t wc = cur + 32;
        lam = lam.round_to(wc);
        bigcomplex zc = z.z.round_to(wc);
        bigfloat h = bigfloat::pow2(-static_cast<long>(cur / 2), wc);
        try {
            bigcomplex f0 = recover_tau_g1(lam, err_radius::zero(), cur).tau.z - zc;
            bigcomplex lp = lam, lm = lam;
            lp.re += h;
            lm.re -= h;
            bigcomplex fp = recover_tau_g1(lp, err_radius::zero(), cur).tau.z - zc;
            bigcomplex fm = recover_tau_g1(lm, err_radius::zero(), cur).tau.z - zc;
            bigcomplex d = bigcomplex::mul_2si((fp - fm), -1) / bigcomplex(h, bigfloat(0L, wc));
            bigfloat res = abs_up(f0);
            if (abs_down(d) <= 0.0) fail(errc::newton_diverged, "derivative vanished");
            if (have_prev && res > res_prev && res > bigfloat::pow2(-static_cast<long>(cur) + 24, 32))
                fail(errc::newton_diverged, "residual stopped contracting");
            res_prev = res.round_to(32, MPFR_RNDU);
            have_prev = true;
            deriv_lo = abs_down(d).round_to(32, MPFR_RNDD);
            lam = lam - f0 / d;
        } catch (const error& e) {
            if (e.code() == errc::newton_diverged) throw;
            fail(errc::newton_diverged, std::string("iteration left the basin: ") + e.what());
        }
    }

    // final residual gate and certified lambda disk
    recovered_tau1 fin = recover_tau_g1(lam, err_radius::zero(), target);
    bigcomplex f0 = fin.tau.z - z.z.round_to(target + 32);
    bigfloat res = bigfloat::add(abs_up(f0), fin.radius.v, MPFR_RNDU);
    bigfloat scale = bigfloat::max(bigfloat(1.0, 32), abs_up(z.z).round_to(32, MPFR_RNDU));
    if (res > bigfloat::mul(scale, bigfloat::pow2(-static_cast<long>(p) + 8, 32), MPFR_RNDU))
        fail(errc::newton_diverged, "final residual too large");
    err_radius rlam(bigfloat::mul_2si(bigfloat::div(res, deriv_lo, MPFR_RNDU), 1));
    rlam = rlam.plus_exp2(abs_up(lam).exp2() - static_cast<long>(target) + 8);

    // assemble thetas from the converged quotient
    const prec_t wf = target + 32;
    bigcomplex one = one_at(wf);
    bigcomplex lamf = lam.round_to(wf);
    limit_result m0 = agm_limit({one, lamf}, {err_radius::zero(), rlam}, target);
    err_radius r00;
    bigcomplex th00sq = cdiv(one, err_radius::zero(), m0.value, m0.radius, &r00);
    err_radius r01;
    bigcomplex th01sq = cmul(lamf, rlam, th00sq, r00, &r01);
    err_radius rsq;
    bigcomplex lsq = cmul(lamf, rlam, lamf, rlam, &rsq);
    bigcomplex mu2 = one - lsq;
    err_radius rmu2 = rsq.plus_exp2(-wf + 2);
    err_radius r10;
    bigcomplex th10sq;
    {
        err_radius rmu;
        bigcomplex mu = canonical_sqrt(mu2, rmu2, &rmu);
        if (mu.re.sgn() < 0) mu = -mu;
        th10sq = cmul(mu, rmu, th00sq, r00, &r10);
    }

    theta1_vec out(z, p);
    const std::array<bigcomplex, 3> sq = {th00sq, th01sq, th10sq};
    const std::array<err_radius, 3> rq = {r00, r01, r10};
    for (int j = 0; j < 3; ++j) {
        err_radius rr;
        // on the reduced domain every theta here sits in the right half plane
        bigcomplex root = canonical_sqrt(sq[j], rq[j], &rr);
        if (root.re.sgn() < 0) root = -root;
        out.value[j] = root.round_to(p + 32);
        out.radius[j] = rr.plus_exp2(abs_up(root).exp2() - static_cast<long>(p) - 30);
    }
    out.value[3] = bigcomplex(p + 32);
    out.radius[3] = err_radius::zero();
    return out;
}

}  // namespace theta2
