#include "theta2/theta.hpp"

#include <cmath>

#include "theta2/errors.hpp"

namespace theta2 {

namespace {

constexpr prec_t kAux = 128;

bigfloat aux_inf() {
    bigfloat r(0.0, kAux);
    mpfr_set_inf(r.raw(), 1);
    return r;
}

// Certified tail of the truncated lattice sum outside max|N_i| <= S, with
// h an upper bound on exp(-pi lambda1 / 4). Terms pair up (N <-> -N), the
// accumulators are doubled at the end, so the tail is counted per point:
//   genus 2: sum_{s>S} 8 s h^{s^2} <= 8(S+1) h^{(S+1)^2} / (1 - 2 h^{2S+3})
//   genus 1: sum_{n>S} 2 h^{n^2}  <= 2 h^{(S+1)^2} / (1 - h^{2S+3})
// The consecutive-shell ratio must be <= 1/2 for the geometric majorant to
// close; +inf is returned otherwise so callers keep growing S.
bigfloat lattice_tail(const bigfloat& h_up, unsigned long S, bool genus1) {
    bigfloat e1(static_cast<long>(S + 1), kAux);
    bigfloat hS = bigfloat::pow(h_up, e1, MPFR_RNDU, kAux);
    bigfloat hSS = bigfloat::pow(hS, e1, MPFR_RNDU, kAux);
    bigfloat hr =
        bigfloat::pow(h_up, bigfloat(2 * static_cast<long>(S) + 3, kAux), MPFR_RNDU, kAux);
    bigfloat ratio = genus1 ? hr : bigfloat::mul_2si(hr, 1);
    if (!(ratio <= bigfloat(0.5, kAux))) return aux_inf();
    bigfloat num = genus1
                       ? bigfloat::mul_2si(hSS, 1)
                       : bigfloat::mul(bigfloat(8 * static_cast<long>(S + 1), kAux), hSS,
                                       MPFR_RNDU, kAux);
    bigfloat den = bigfloat::sub(bigfloat(1.0, kAux), ratio, MPFR_RNDD);
    return bigfloat::div(num, den, MPFR_RNDU, kAux);
}

struct cutoff {
    unsigned long S;
    bigfloat tail;  // rounded up, < 2^-(p+8)
};

// lam_lo: certified lower bound on lambda1 (resp. Im z in genus 1)
cutoff choose_cutoff(const bigfloat& lam_lo, prec_t p, bool genus1) {
    double lam = lam_lo.to_double();
    if (!(lam >= kLambdaFloor))
        fail(errc::domain_error, "theta: smallest eigenvalue of Im tau is " +
                                     lam_lo.to_string(6) + ", below the evaluation floor 1e-3");
    bigfloat h_up = ival::exp(-(ival::pi() * ival(lam_lo)) / ival(4.0)).hi();
    // first guess from h^(S^2) ~ 2^-(p+10); the loop below certifies
    double s0 = std::sqrt(4.0 * static_cast<double>(p + 10) * 0.6931471805599453 /
                          (3.141592653589793 * lam));
    unsigned long S = static_cast<unsigned long>(s0 < 2 ? 2 : s0) + 1;
    bigfloat target = bigfloat::pow2(-static_cast<long>(p) - 8, kAux);
    bigfloat tail = lattice_tail(h_up, S, genus1);
    int rounds = 0;
    while (!(tail <= target)) {
        S += S / 8 + 1;
        if (++rounds > 4000 || S > 100000000ul)
            fail(errc::internal_error, "theta: truncation search did not converge");
        tail = lattice_tail(h_up, S, genus1);
    }
    return {S, tail};
}

// Working precision: with T accumulated terms, multiplication chains of
// length <= path from the seeds, and |partial sums| <= T, the accumulated
// rounding is below (T path + T^2) 2^(3-w) <= 2^-(p+29) for this w.
prec_t working_prec(prec_t p, unsigned long S, bool genus1) {
    double T = genus1 ? 2.0 * static_cast<double>(S) + 4
                      : (2.0 * static_cast<double>(S) + 1) * (2.0 * static_cast<double>(S) + 1) + 8;
    double path = genus1 ? 2.0 * static_cast<double>(S) + 64 : 8.0 * static_cast<double>(S) + 64;
    long l = static_cast<long>(std::ceil(std::log2(T * path + T * T))) + 1;
    return p + 32 + static_cast<prec_t>(l);
}

}  // namespace

theta_vec theta_all(const tau2& t, prec_t p) {
    if (p < 8) fail(errc::domain_error, "theta: precision must be at least 8 bits");
    if (!t.im_positive_definite())
        fail(errc::domain_error, "theta: Im tau is not positive definite");
    bigfloat lam_lo = lambda1_lower(t);
    cutoff cut = choose_cutoff(lam_lo, p, false);
    const unsigned long S = cut.S;
    prec_t w = working_prec(p, S, false);
    if (t.prec() > w) w = t.prec();  // keep the stored point exact
    tau2 tw = t.round_to(w);

    // P(N) = exp(i pi (N1^2 z1 + N2^2 z2 + 2 N1 N2 z3) / 4) = A^(N1^2) B^(N2^2) C^(N1 N2)
    bigcomplex A = exp_ipi(bigcomplex::mul_2si(tw.z1, -2));
    bigcomplex A2 = A * A;
    bigcomplex B = exp_ipi(bigcomplex::mul_2si(tw.z2, -2));
    bigcomplex B2 = B * B;
    bigcomplex C = exp_ipi(bigcomplex::mul_2si(tw.z3, -1));
    bigcomplex Ci = exp_ipi(-bigcomplex::mul_2si(tw.z3, -1));

    // acc[a0 + 2 a1][b0 + 2 b1]: half-lattice sums before doubling; the pair
    // (N, -N) contributes P(N) * 2 cos(pi (N1 b0 + N2 b1) / 2), so each point
    // adds +-P wherever N1 b0 + N2 b1 is even, and the odd characteristics
    // never receive anything (exact zero).
    std::array<std::array<bigcomplex, 4>, 4> acc;
    for (auto& row : acc)
        for (auto& v : row) v = bigcomplex(w);

    auto accumulate = [&acc](const bigcomplex& P, long n1, long n2) {
        int aclass = static_cast<int>(n1 & 1) + 2 * static_cast<int>(n2 & 1);
        for (int b = 0; b < 4; ++b) {
            long k = (n1 * (b & 1) + n2 * ((b >> 1) & 1)) & 3;
            if (k & 1) continue;
            if (k == 0)
                acc[aclass][b] += P;
            else
                acc[aclass][b] -= P;
        }
    };

    // row N2 = 0, N1 >= 1 (the mirror half is the pairing; center added later)
    {
        bigcomplex P(1.0, 0.0, w);
        bigcomplex rr = A;  // step ratio A^(2 N1 + 1)
        for (unsigned long n1 = 1; n1 <= S; ++n1) {
            P *= rr;
            rr *= A2;
            accumulate(P, static_cast<long>(n1), 0);
        }
    }
    // rows N2 = 1..S, walked outward from N1 = 0 so |P| <= 1 throughout
    bigcomplex Pc(1.0, 0.0, w);   // P(0, N2)
    bigcomplex rB = B;            // row ratio B^(2 N2 + 1)
    bigcomplex CN(1.0, 0.0, w);   // C^(N2)
    bigcomplex CNm(1.0, 0.0, w);  // C^(-N2)
    for (unsigned long n2 = 1; n2 <= S; ++n2) {
        Pc *= rB;
        rB *= B2;
        CN *= C;
        CNm *= Ci;
        accumulate(Pc, 0, static_cast<long>(n2));
        bigcomplex P = Pc;
        bigcomplex rr = A * CN;  // rightward ratio A^(2 N1 + 1) C^(N2)
        for (unsigned long n1 = 1; n1 <= S; ++n1) {
            P *= rr;
            rr *= A2;
            accumulate(P, static_cast<long>(n1), static_cast<long>(n2));
        }
        P = Pc;
        rr = A * CNm;  // leftward ratio A^(-2 N1 + 1) C^(-N2)
        for (unsigned long n1 = 1; n1 <= S; ++n1) {
            P *= rr;
            rr *= A2;
            accumulate(P, -static_cast<long>(n1), static_cast<long>(n2));
        }
    }

    theta_vec out(t, p);
    out.trunc = S;
    err_radius rad = err_radius(cut.tail).plus_exp2(-static_cast<long>(p) - 20);
    const prec_t pstore = p + 32;
    for (int j = 0; j < 16; ++j) {
        if (char_is_odd(j)) {
            out.value[j] = bigcomplex(pstore);
            out.radius[j] = err_radius::zero();
            continue;
        }
        int aclass = char_a0(j) + 2 * char_a1(j);
        int b = char_b0(j) + 2 * char_b1(j);
        bigcomplex v = bigcomplex::mul_2si(acc[aclass][b], 1);
        if (aclass == 0) v.re += bigfloat(1.0, w);  // center term N = 0
        out.value[j] = v.round_to(pstore);
        out.radius[j] = rad;
    }
    return out;
}

theta1_vec theta_g1(const tau1& t, prec_t p) {
    if (p < 8) fail(errc::domain_error, "theta: precision must be at least 8 bits");
    if (!(t.z.im.sgn() > 0)) fail(errc::domain_error, "theta: Im z must be positive");
    bigfloat y_lo = t.z.im.round_to(64, MPFR_RNDD);
    cutoff cut = choose_cutoff(y_lo, p, true);
    const unsigned long S = cut.S;
    prec_t w = working_prec(p, S, true);
    if (t.prec() > w) w = t.prec();
    bigcomplex z = t.z.round_to(w);

    bigcomplex A = exp_ipi(bigcomplex::mul_2si(z, -2));  // P(n) = A^(n^2)
    bigcomplex A2 = A * A;

    std::array<std::array<bigcomplex, 2>, 2> acc;  // [a][b]
    for (auto& row : acc)
        for (auto& v : row) v = bigcomplex(w);

    bigcomplex P(1.0, 0.0, w);
    bigcomplex rr = A;
    for (unsigned long n = 1; n <= S; ++n) {
        P *= rr;
        rr *= A2;
        int aclass = static_cast<int>(n & 1);
        for (int b = 0; b < 2; ++b) {
            long k = (static_cast<long>(n) * b) & 3;
            if (k & 1) continue;
            if (k == 0)
                acc[aclass][b] += P;
            else
                acc[aclass][b] -= P;
        }
    }

    theta1_vec out(t, p);
    out.trunc = S;
    err_radius rad = err_radius(cut.tail).plus_exp2(-static_cast<long>(p) - 20);
    const prec_t pstore = p + 32;
    for (int j = 0; j < 4; ++j) {
        if (j == 3) {  // a = b = 1: the odd characteristic
            out.value[j] = bigcomplex(pstore);
            out.radius[j] = err_radius::zero();
            continue;
        }
        int a = (j >> 1) & 1, b = j & 1;
        bigcomplex v = bigcomplex::mul_2si(acc[a][b], 1);
        if (a == 0) v.re += bigfloat(1.0, w);
        out.value[j] = v.round_to(pstore);
        out.radius[j] = rad;
    }
    return out;
}

namespace {

// q^e with the convention q^0 = 1 (exponents can hit 0 at the edge of the
// allowed k range)
ival pw(const ival& q, const ival& e) {
    if (e.lo().is_zero() && e.hi().is_zero()) return ival(1.0);
    return ival::pow01(q, e);
}

// q^e / (1 - q^f)
ival geo(const ival& q, const ival& e, const ival& f) { return pw(q, e) / (1 - pw(q, f)); }

ival fr(long num, long den) { return ival(num) / ival(den); }

ival alpha37() { return ival::sqrt(fr(3, 7)); }

}  // namespace

ival rho46(const ival& q1, const ival& q2, long knum, long kden) {
    if (knum <= 0 || kden <= 0 || knum <= kden)
        fail(errc::domain_error, "rho46: requires k > 1");
    ival invk = fr(kden, knum);
    return geo(q1, ival(2L), ival(4L)) + geo(q2, 1 - invk, 3 - invk) +
           geo(q2, 1 + invk, 3 + invk) +
           pw(q1, fr(7, 8)) * pw(q2, fr(1, 2)) / ((1 - pw(q2, fr(3, 2))) * (1 - pw(q1, ival(2L)))) +
           pw(q1, fr(25, 8)) * pw(q2, fr(3, 2)) /
               ((1 - pw(q2, fr(9, 2))) * (1 - pw(q1, ival(6L))));
}

ival rho89(const ival& q1, const ival& q2, long knum, long kden) {
    return rho46(q2, q1, knum, kden);
}

ival rho0(const ival& q1, const ival& q2) {
    return 2 * geo(q1, ival(4L), ival(5L)) + 2 * geo(q2, ival(4L), ival(5L)) +
           2 * pw(q1, fr(1, 2)) * pw(q2, fr(1, 2)) /
               ((1 - pw(q1, fr(3, 2))) * (1 - pw(q2, fr(3, 2)))) +
           2 * pw(q1, fr(3, 2)) * pw(q2, fr(3, 2)) /
               ((1 - pw(q1, fr(9, 2))) * (1 - pw(q2, fr(9, 2))));
}

ival rho12(const ival& q1, const ival& q2) {
    return geo(q1, fr(3, 2), fr(7, 2)) + geo(q1, fr(5, 2), fr(9, 2)) + geo(q2, fr(3, 2), fr(7, 2)) +
           geo(q2, fr(5, 2), fr(9, 2)) +
           pw(q1, fr(7, 8)) * pw(q2, fr(7, 8)) / ((1 - pw(q1, ival(2L))) * (1 - pw(q2, ival(2L)))) +
           pw(q1, fr(25, 8)) * pw(q2, fr(25, 8)) /
               ((1 - pw(q1, ival(6L))) * (1 - pw(q2, ival(6L))));
}

ival rho01p(const ival& q1, const ival& q2, long knum, long kden) {
    if (knum <= 0 || kden <= 0 || knum < 2 * kden)
        fail(errc::domain_error, "rho01p: requires k >= 2");
    ival tk = fr(2 * kden, knum);  // 2/k
    ival al = alpha37();
    return 2 * geo(q2, ival(4L), ival(5L)) + 2 * geo(q1, ival(1L), ival(3L)) +
           2 * pw(q1, 1 - tk) * q2 / (1 - pw(q1, 3 - tk)) +
           2 * pw(q1, 1 + tk) * q2 / (1 - pw(q1, 3 + tk)) +
           2 * pw(q1, 1 - al) * pw(q2, 4 * (1 - al)) /
               ((1 - pw(q1, 3 * (1 - al))) * (1 - pw(q2, 5 * (1 - al)))) +
           2 * pw(q1, 1 + al) * pw(q2, 4 * (1 + al)) /
               ((1 - pw(q1, 3 * (1 + al))) * (1 - pw(q2, 5 * (1 + al))));
}

ival rho89p(const ival& q1, const ival& q2, long knum, long kden) {
    if (knum <= 0 || kden <= 0 || knum < 2 * kden)
        fail(errc::domain_error, "rho89p: requires k >= 2");
    ival invk = fr(kden, knum);
    ival al = alpha37();
    ival nal = fr(9, 4) * al;  // (9/4) alpha
    return geo(q2, ival(2L), ival(4L)) + geo(q1, 1 - invk, 3 - invk) +
           geo(q1, 1 + invk, 3 + invk) +
           pw(q2, 2 - nal) * pw(q1, 1 - al) /
               ((1 - pw(q2, 4 * (1 - al))) * (1 - pw(q1, 3 * (1 - al)))) +
           pw(q2, 2 + nal) * pw(q1, 1 + al) /
               ((1 - pw(q2, 4 * (1 + al))) * (1 - pw(q1, 3 * (1 + al))));
}

ival envelope_r(const ival& q) {
    ival s2 = q * q, s4 = s2 * s2, s5 = s4 * q, s8 = s4 * s4, s9 = s8 * q;
    ival om = 1 - q;
    return 8 * s2 + 4 * s4 + 8 * s5 + 4 * s8 + 4 * (1 + q) * s9 / (om * om);
}

ival envelope_lambda(const ival& q) {
    ival s2 = q * q, s4 = s2 * s2, s5 = s4 * q, s8 = s4 * s4, s9 = s8 * q;
    ival om = 1 - q;
    return 4 * q + 4 * s2 + 4 * s4 + 8 * s5 + 4 * s8 + 4 * (1 + q) * s9 / (om * om);
}

gp_reason good_position_criterion(const tau2& t) {
    if (!t.im_positive_definite())
        fail(errc::domain_error, "good_position_criterion: Im tau not positive definite");
    if (r_lower(t) >= ival::from_str("0.4").hi()) return gp_reason::by_r;
    if (lambda1_lower(t) >= ival::from_str("0.6").hi()) return gp_reason::by_lambda1;
    return gp_reason::unknown;
}

gamma_lower_bounds lower_bounds_at_gamma(const tau2& t) {
    if (!in_fprime(t))
        fail(errc::domain_error, "lower_bounds_at_gamma: point outside the reduction domain");
    ival y1(t.y1()), y2(t.y2());
    ival az1 = ival(t.z1.re) * ival(t.z1.re) + y1 * y1;
    ival az2 = ival(t.z2.re) * ival(t.z2.re) + y2 * y2;
    ival r1 = 9 * y1 / (34 * az1);
    ival r2 = 9 * y2 / (34 * az2);
    ival l3 = ival(9L) / (44 * y2);
    return {r1.lo(), r2.lo(), l3.lo()};
}

namespace {

struct hyp_data {
    ival y1, y2, y3, x3, q1, q2;
};

hyp_data make_hyp(const tau2& t) {
    hyp_data h{ival(t.y1()), ival(t.y2()), ival(t.y3()), ival(t.z3.re), ival(), ival()};
    h.q1 = ival::exp(-(ival::pi() * h.y1));
    h.q2 = ival::exp(-(ival::pi() * h.y2));
    return h;
}

void need(bool ok, const char* what) {
    if (!ok) fail(errc::domain_error, std::string("xi_rho: hypothesis not certified: ") + what);
}

bool quarter_hyp(const hyp_data& h) {  // y3^2 <= (1/4) y1 y2
    return (4 * (h.y3 * h.y3)).certainly_le(h.y1 * h.y2);
}

bool k_y3_le(const hyp_data& h, long knum, long kden, const ival& y) {  // k|y3| <= y
    return (knum * ival::abs(h.y3)).certainly_le(kden * y);
}

// evaluation error of the xi builders: a handful of exp(i pi w) factors and
// bounded additions at precision w, with |x_j|, y_j below 2^12 in every
// supported regime
err_radius xi_eval_err(const bigcomplex& xi, prec_t w) {
    err_radius e;
    e.v = bigfloat::mul(
        bigfloat::add(abs_up(xi).round_to(err_radius::kPrec, MPFR_RNDU),
                      bigfloat(4.0, err_radius::kPrec), MPFR_RNDU),
        bigfloat::pow2(-static_cast<long>(w) + 16, err_radius::kPrec), MPFR_RNDU);
    return e;
}

}  // namespace

err_radius bound_report::disk_radius() const {
    if (!multiplicative) return err_radius(rho) + xi_err;
    // |theta - xi_c| <= rho |xi| + |xi - xi_c| <= rho (|xi_c| + e) + e
    err_radius base = err_radius(rho).scaled(abs_up(xi));
    err_radius cross;
    cross.v = bigfloat::mul(xi_err.v, rho.round_to(err_radius::kPrec, MPFR_RNDU), MPFR_RNDU);
    return base + cross + xi_err;
}

bound_report xi_rho(const tau2& t, bound_kind kind, long knum, long kden) {
    if (knum <= 0 || kden <= 0) fail(errc::domain_error, "xi_rho: k must be positive");
    if (!t.im_positive_definite())
        fail(errc::domain_error, "xi_rho: Im tau not positive definite");
    hyp_data h = make_hyp(t);
    prec_t w = t.prec() < 96 ? 96 : t.prec();
    tau2 tw = t.round_to(w);

    bound_report rep;
    rep.kind = kind;
    switch (kind) {
        case bound_kind::b46:
            need(quarter_hyp(h), "y3^2 <= y1 y2 / 4");
            need(k_y3_le(h, knum, kden, h.y2), "k |y3| <= y2");
            rep.xi = bigcomplex::mul_2si(exp_ipi(bigcomplex::mul_2si(tw.z1, -2)), 1);
            rep.rho = rho46(h.q1, h.q2, knum, kden).hi();
            rep.multiplicative = true;
            rep.js = {4, 6};
            break;
        case bound_kind::b89:
            need(quarter_hyp(h), "y3^2 <= y1 y2 / 4");
            need(k_y3_le(h, knum, kden, h.y1), "k |y3| <= y1");
            rep.xi = bigcomplex::mul_2si(exp_ipi(bigcomplex::mul_2si(tw.z2, -2)), 1);
            rep.rho = rho89(h.q1, h.q2, knum, kden).hi();
            rep.multiplicative = true;
            rep.js = {8, 9};
            break;
        case bound_kind::b0:
        case bound_kind::b02:
        case bound_kind::b01:
        case bound_kind::b1all: {
            need(quarter_hyp(h), "y3^2 <= y1 y2 / 4");
            bigcomplex one(1.0, 0.0, w);
            bigcomplex e1 = bigcomplex::mul_2si(exp_ipi(tw.z1), 1);  // 2 exp(i pi z1)
            bigcomplex e2 = bigcomplex::mul_2si(exp_ipi(tw.z2), 1);
            ival r0 = rho0(h.q1, h.q2);
            rep.multiplicative = false;
            if (kind == bound_kind::b0) {
                rep.xi = one + e1 + e2;
                rep.rho = r0.hi();
                rep.js = {0};
            } else if (kind == bound_kind::b02) {
                rep.xi = one + e1;
                rep.rho = (r0 + 2 * h.q2).hi();
                rep.js = {0, 2};
            } else if (kind == bound_kind::b01) {
                rep.xi = one + e2;
                rep.rho = (r0 + 2 * h.q1).hi();
                rep.js = {0, 1};
            } else {
                rep.xi = one;
                rep.rho = (r0 + 2 * h.q1 + 2 * h.q2).hi();
                rep.js = {0, 1, 2, 3};
            }
            break;
        }
        case bound_kind::b12: {
            need((2 * ival::abs(h.x3)).certainly_le(ival(1L)), "|x3| <= 1/2");
            need(k_y3_le(h, 2, 1, h.y1), "2 |y3| <= y1");
            need(k_y3_le(h, 2, 1, h.y2), "2 |y3| <= y2");
            bigcomplex zh = bigcomplex::mul_2si(tw.z3, -1);
            bigcomplex cosf = exp_ipi(zh) + exp_ipi(-zh);
            rep.xi =
                bigcomplex::mul_2si(exp_ipi(bigcomplex::mul_2si(tw.z1 + tw.z2, -2)), 1) * cosf;
            rep.rho = rho12(h.q1, h.q2).hi();
            rep.multiplicative = true;
            rep.js = {12};
            break;
        }
        case bound_kind::bp01:
            need((7 * (h.y3 * h.y3)).certainly_le(3 * (h.y1 * h.y2)), "y3^2 <= 3 y1 y2 / 7");
            need(k_y3_le(h, knum, kden, h.y1), "k |y3| <= y1");
            rep.xi = bigcomplex(1.0, 0.0, w) + bigcomplex::mul_2si(exp_ipi(tw.z2), 1);
            rep.rho = rho01p(h.q1, h.q2, knum, kden).hi();
            rep.multiplicative = false;
            rep.js = {0, 1};
            break;
        case bound_kind::bp89:
            need((7 * (h.y3 * h.y3)).certainly_le(3 * (h.y1 * h.y2)), "y3^2 <= 3 y1 y2 / 7");
            need(k_y3_le(h, knum, kden, h.y1), "k |y3| <= y1");
            rep.xi = bigcomplex::mul_2si(exp_ipi(bigcomplex::mul_2si(tw.z2, -2)), 1);
            rep.rho = rho89p(h.q1, h.q2, knum, kden).hi();
            rep.multiplicative = true;
            rep.js = {8, 9};
            break;
    }
    rep.xi_err = xi_eval_err(rep.xi, w);
    return rep;
}

}  // namespace theta2
