#include "theta2/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <utility>

#include "theta2/errors.hpp"
#include "theta2/interval.hpp"
#include "theta2/symplectic.hpp"

namespace theta2 {

namespace {

// ---------------------------------------------------------------------------
// interval helpers local to the threshold checks

ival imax(const ival& a, const ival& b) {
    return {bigfloat::max(a.lo(), b.lo()), bigfloat::max(a.hi(), b.hi())};
}

// sin over an interval contained in [0, pi/2], where sin is increasing
ival sin_inc(const ival& x) {
    bigfloat half_pi = bigfloat::div(bigfloat::pi(ival::kPrec, MPFR_RNDD), bigfloat(2.0, ival::kPrec), MPFR_RNDD);
    if (x.lo().sgn() < 0 || half_pi < x.hi()) fail(errc::internal_error, "sin_inc: interval leaves [0, pi/2]");
    return {ival::sin_point(x.lo()).lo(), ival::sin_point(x.hi()).hi()};
}

// cos over an interval contained in [0, pi], where cos is decreasing
ival cos_dec(const ival& x) {
    bigfloat pi_lo = bigfloat::pi(ival::kPrec, MPFR_RNDD);
    if (x.lo().sgn() < 0 || pi_lo < x.hi()) fail(errc::internal_error, "cos_dec: interval leaves [0, pi]");
    return {ival::cos_point(x.hi()).lo(), ival::cos_point(x.lo()).hi()};
}

// ---------------------------------------------------------------------------
// angular spans

// doubles bracketing pi/2
constexpr double kQuarterLo = 0x1.921fb54442d18p+0;
constexpr double kQuarterHi = 0x1.921fb54442d19p+0;
// slack absorbing every double-rounding step in the span arithmetic
constexpr double kAngleEps = 1e-9;

// Certified [lower, upper] enclosure of the minimal arc containing the four
// disks value[js[i]] +- radius[js[i]]. A disk reaching 0 makes the direction
// unbounded: {0, +inf}.
std::pair<double, double> tuple_span(const theta_vec& v, const std::array<int, 4>& js) {
    double ang[4], half[4];
    double dmax = 0;
    for (int i = 0; i < 4; ++i) {
        const bigcomplex& c = v.value[static_cast<std::size_t>(js[static_cast<std::size_t>(i)])];
        const bigfloat& r = v.radius[static_cast<std::size_t>(js[static_cast<std::size_t>(i)])].v;
        // magnitudes can sit hundreds of decades below double range, so the
        // clearance test stays in big floats; only the final tiny ratio is
        // allowed to underflow (kAngleEps dominates it)
        bigfloat den = bigfloat::sub(abs_down(c), r, MPFR_RNDD);
        if (!(den.sgn() > 0)) return {0.0, HUGE_VAL};
        double ratio = bigfloat::div(r, den, MPFR_RNDU, err_radius::kPrec).to_double();
        if (!(ratio < 1.0)) return {0.0, HUGE_VAL};
        ang[i] = arg(c).to_double();
        half[i] = std::asin(ratio) + kAngleEps;
        dmax = std::max(dmax, half[i]);
    }
    std::sort(ang, ang + 4);
    // minimal covering arc of the four directions: full circle minus the
    // largest gap between consecutive (sorted, wrapped) angles
    double gap = 2 * 0x1.921fb54442d18p+1 - (ang[3] - ang[0]);  // wrap gap, 2pi down-rounded is fine inside eps slack
    for (int i = 0; i < 3; ++i) gap = std::max(gap, ang[i + 1] - ang[i]);
    double arc = 2 * 0x1.921fb54442d19p+1 - gap;
    if (arc < 0) arc = 0;
    double hi = arc + 2 * dmax + kAngleEps;
    double lo = arc - 2 * dmax - kAngleEps;
    if (lo < 0) lo = 0;
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// scaling cutoffs

// smallest n in [0, 62] with 2^n * lb >= threshold; 63 when the bound is
// useless (adversarial input with nonpositive lower bound)
long cutoff_from_bound(const bigfloat& lb, const bigfloat& threshold) {
    if (!(lb.sgn() > 0)) return 63;
    for (long n = 0; n <= 62; ++n)
        if (!(bigfloat::mul_2si(lb, n) < threshold)) return n;
    return 63;
}

// per-k cutoff without the membership gate; throws where the gamma lower
// bounds do (non-reduced points), callers decide how tolerant to be
long cutoff_raw(const tau2& t, int k) {
    if (k == 0) return 0;  // r >= sqrt(3)/4 > 0.4 everywhere in the domain
    gamma_lower_bounds lb = lower_bounds_at_gamma(t);
    // thresholds rounded up so the cutoff never claims more than the
    // good-position criterion will certify
    bigfloat th_r = ival::from_str("0.4").hi();
    bigfloat th_l = ival::from_str("0.6").hi();
    if (k == 1) return cutoff_from_bound(lb.r_gamma1, th_r);
    if (k == 2) return cutoff_from_bound(lb.r_gamma2, th_r);
    return cutoff_from_bound(lb.lambda1_gamma3, th_l);
}

// The span test needs every disk to stay clear of 0, so the absolute radius
// 2^-p must undercut the smallest tuple entry. That entry decays like the
// leading lattice term exp(-pi (a/2)^t Y (a/2)); its size in bits, maximized
// over the tuple, is the precision surcharge a route carries.
long tuple_decay_bits(const tau2& s, const std::array<int, 4>& js) {
    double y1 = s.y1().to_double(), y2 = s.y2().to_double(), y3 = s.y3().to_double();
    double worst = 0;
    for (int j : js) {
        double a0 = char_a0(j), a1 = char_a1(j);
        worst = std::max(worst, a0 * y1 + a1 * y2 + 2 * a0 * a1 * y3);
    }
    if (!(worst >= 0) || worst > 1e7) return -1;  // adversarial geometry
    // pi * log2(e) / 4 per unit of the quadratic form, plus headroom
    return std::lround(1.1332 * worst) + 8;
}

sample_report eval_sample(const tau2& t, int k, long n, prec_t p) {
    sample_report rep{t};
    rep.k = k;
    rep.n = n;
    rep.span = HUGE_VAL;
    rep.prec_used = p;

    constexpr prec_t kPrecCap = prec_t(1) << 24;
    std::vector<eval_route> routes = candidate_routes(t, k, n);
    struct cand {
        double cost;
        prec_t pp;
        const eval_route* r;
    };
    std::vector<cand> order;
    for (const eval_route& r : routes) {
        double l1 = lambda1_lower(r.point).to_double();
        if (!(l1 >= kLambdaFloor)) continue;
        long decay = tuple_decay_bits(r.point, r.js);
        if (decay < 0) continue;
        prec_t pp = p + 32 + static_cast<prec_t>(decay);
        if (pp > kPrecCap) continue;
        // lattice work scales like prec^3 / lambda1: truncation grows with
        // sqrt(prec / lambda1) in each of two dimensions, arithmetic with
        // prec^2
        double cost = static_cast<double>(pp) * static_cast<double>(pp) * static_cast<double>(pp) / l1;
        order.push_back({cost, pp, &r});
    }
    std::stable_sort(order.begin(), order.end(), [](const cand& a, const cand& b) { return a.cost < b.cost; });

    for (int attempt = 0; attempt < 2; ++attempt) {
        bool got = false;
        for (const cand& c : order) {
            prec_t pp = attempt == 0 ? c.pp : 2 * c.pp;
            if (pp > kPrecCap) continue;
            try {
                theta_vec v = theta_all(c.r->point, pp);
                auto [lo, hi] = tuple_span(v, c.r->js);
                rep.span = hi;
                rep.closed_form = c.r->closed_form;
                rep.prec_used = pp;
                got = true;
                if (hi < kQuarterLo) {
                    rep.verdict = sample_verdict::pass;
                    return rep;
                }
                if (lo > kQuarterHi) {
                    rep.verdict = sample_verdict::fail;
                    return rep;
                }
                break;  // inconclusive radii: retry at doubled precision
            } catch (const error&) {
                // route infeasible at this precision, try the next one
            }
        }
        if (!got) break;  // no feasible route; more precision will not help
    }
    rep.verdict = sample_verdict::uncertifiable;
    return rep;
}

// ---------------------------------------------------------------------------
// threshold check plumbing

void push_lt(std::vector<threshold_check>& out, const char* name, const ival& computed, const ival& claimed) {
    threshold_check c;
    c.name = name;
    c.claimed_bound = claimed.mid_d();
    c.computed_value = computed.mid_d();
    c.margin = (claimed - computed).lo().to_double();
    c.pass = c.margin > 0;
    out.push_back(std::move(c));
}

void push_ge(std::vector<threshold_check>& out, const char* name, const ival& computed, const ival& claimed) {
    threshold_check c;
    c.name = name;
    c.claimed_bound = claimed.mid_d();
    c.computed_value = computed.mid_d();
    c.margin = (computed - claimed).lo().to_double();
    c.pass = c.margin > 0;
    out.push_back(std::move(c));
}

// Gap between arctan(sqrt(q)/(1+sqrt(q))) and asin(rho12) + asin(rho0) on the
// whole diagonal segment q in (0, qmax]: a geometric subdivision handles
// [q0, qmax] using that both sides increase in q, and a linearized comparison
// handles (0, q0] in one stroke:
//   asin(y) <= (asin(y0)/y0) y for y <= y0      (asin(y)/y increasing),
//   (rho0 + rho12)(q, q) <= K q for q <= q0     (every term is a positive
//        multiple of q^a / (1-q^b)^c with a >= 1, so the ratio to q is
//        nondecreasing; K is the ratio at q0),
//   atan(x) >= (atan(x0)/x0) x for x <= x0      (atan(x)/x decreasing),
//   sqrt(q)/(1+sqrt(q)) >= sqrt(q)/(1+sqrt(q0)) for q <= q0,
// so the gap is at least (c0 - s0 K sqrt(q0)) sqrt(q) with the constants
// below; positivity of the coefficient settles the whole tail.
double convex_gap_margin() {
    ival pi = ival::pi();
    ival sqrt3 = ival::sqrt(ival(3.0));
    ival qmax = ival::exp(-(pi * sqrt3 / ival(2.0)));
    ival q0(0x1p-12);

    ival rho_sum0 = rho0(q0, q0) + rho12(q0, q0);
    ival s0 = ival::asin(rho_sum0) / rho_sum0;
    ival cap = rho_sum0 / q0;
    ival sq0 = ival::sqrt(q0);
    ival x0 = sq0 / (1 + sq0);
    ival c0 = (ival::atan(x0) / x0) / (1 + sq0);
    double margin = (c0 - s0 * cap * sq0).lo().to_double();

    const long cells = 64;
    ival ratio = ival::exp(ival::log(qmax / q0) / ival(cells));
    ival qa = q0;
    for (long i = 0; i < cells; ++i) {
        ival qb = (i == cells - 1) ? qmax : qa * ratio;
        ival lhs = ival::asin(rho12(qb, qb)) + ival::asin(rho0(qb, qb));
        ival sqa = ival::sqrt(qa);
        ival gap = ival::atan(sqa / (1 + sqa)) - lhs;
        margin = std::min(margin, gap.lo().to_double());
        qa = qb;
    }
    return margin;
}

}  // namespace

// ---------------------------------------------------------------------------

long n_cutoff(const tau2& t, int k) {
    if (k < 0 || k > 3) fail(errc::domain_error, "n_cutoff: k must be in 0..3");
    if (!in_fprime(t)) fail(errc::domain_error, "n_cutoff: point is not reduced");
    return cutoff_raw(t, k);
}

std::vector<eval_route> candidate_routes(const tau2& t, int k, long n) {
    if (k < 0 || k > 3) fail(errc::domain_error, "candidate_routes: k must be in 0..3");
    if (n < 0 || n > 62) fail(errc::domain_error, "candidate_routes: n must be in 0..62");
    std::vector<eval_route> out;
    auto add = [&out](tau2 pt, std::array<int, 4> js, bool closed) {
        out.push_back({std::move(pt), js, closed});
    };
    try {
        add(act_scaled(gamma(k), t, n), {0, 1, 2, 3}, false);
    } catch (const error&) {
        // adversarial points can leave the half space under the action
    }
    try {
        if (k == 1)
            add(tau_kn(t, 1, n), n == 0 ? std::array<int, 4>{4, 0, 6, 2} : std::array<int, 4>{0, 4, 2, 6}, true);
        if (k == 2)
            add(tau_kn(t, 2, n), n == 0 ? std::array<int, 4>{8, 9, 0, 1} : std::array<int, 4>{0, 1, 8, 9}, true);
        if (k == 3) {
            add(tau_kn(t, 3, n), {0, 8, 4, 12}, true);
            add(tau_kn(t, 4, n), {0, 8, 1, 9}, true);
        }
    } catch (const error&) {
    }
    return out;
}

std::vector<sample_report> verify_point(const tau2& t, prec_t p) {
    if (p < 8 || p > (prec_t(1) << 24)) fail(errc::domain_error, "verify_point: precision out of range");
    std::vector<sample_report> out;
    for (int k = 0; k < 4; ++k) {
        long cut = 1;
        try {
            cut = std::max(cutoff_raw(t, k), 1L);  // n = 0 is always exercised
        } catch (const error&) {
            cut = 1;  // off-domain input: still report the base case
        }
        for (long n = 0; n < cut; ++n) out.push_back(eval_sample(t, k, n, p));
    }
    return out;
}

std::vector<threshold_check> verify_constants() {
    std::vector<threshold_check> out;
    auto guard = [&out](const char* name, const std::function<void()>& body) {
        try {
            body();
        } catch (const error&) {
            threshold_check c;
            c.name = name;
            c.margin = -1e308;
            c.pass = false;
            out.push_back(std::move(c));
        }
    };

    ival pi = ival::pi();
    ival half_pi = pi / ival(2.0);
    ival sqrt3 = ival::sqrt(ival(3.0));
    ival root_half = ival::sqrt(ival(2.0)) / ival(2.0);
    ival q_med = ival::exp(-(pi * sqrt3 / ival(2.0)));  // threshold shared by several regimes

    // --- base changes 1 and 2 (swap + doubling of one diagonal entry) -----

    guard("g12_case1_rho46", [&] {
        push_lt(out, "g12_case1_rho46", rho46(q_med, q_med, 2, 1), ival::from_str("0.348"));
    });
    guard("g12_case1_rho0", [&] {
        push_lt(out, "g12_case1_rho0", rho0(q_med, q_med) + 4 * q_med, ival::from_str("0.405"));
    });
    guard("g12_case1_angle", [&] {
        ival s = pi / ival(8.0) + ival::asin(ival::from_str("0.348")) + ival::asin(ival::from_str("0.405"));
        push_lt(out, "g12_case1_angle", s, half_pi);
    });
    guard("g12_case2_angle", [&] {
        ival q1 = ival::exp(-(pi * sqrt3 / ival(8.0)));
        ival q2 = ival::exp(-(pi * sqrt3));
        ival lead = imax(pi / ival(16.0),
                         ival::atan((2 * q1 * sin_inc(pi / ival(4.0))) / (1 + 2 * q1 * cos_dec(pi / ival(4.0)))));
        ival s = lead + ival::asin(rho46(q1, q2, 4, 1)) + ival::asin(rho0(q1, q2) + 2 * q2);
        push_lt(out, "g12_case2_angle", s, half_pi);
    });
    guard("g12_case3_angle", [&] {
        ival q1 = ival::from_str("0.699");
        ival qq = ival::exp(-(2 * pi * sqrt3));
        ival lead = imax(pi / ival(32.0),
                         ival::atan((2 * q1 * sin_inc(pi / ival(8.0))) / (1 + 2 * q1 * cos_dec(pi / ival(8.0)))));
        ival s = lead + ival::asin(rho0(q1, qq) + 2 * qq) + ival::asin(rho46(q1, qq, 8, 1));
        push_lt(out, "g12_case3_angle", s, half_pi);
    });
    guard("g12_case3_window", [&] {
        push_ge(out, "g12_case3_window", pi / (-ival::log(ival::from_str("0.699"))), ival::from_str("8.77"));
    });
    // largest scaled bound the sweep can need: sup over y1 >= sqrt(3)/2 of
    // 0.4 * 34 (1/4 + y1^2) / (9 y1^2), decreasing in y1, so the value at
    // y1^2 = 3/4; it must sit inside the case-3 window
    guard("g12_scaling_coverage", [&] {
        ival sup = ival::from_str("0.4") * ival(34.0) * (1 + ival(1.0) / ival(3.0)) / ival(9.0);
        push_lt(out, "g12_scaling_coverage", sup, ival::from_str("8.77"));
    });

    // --- good-position criterion envelopes --------------------------------

    guard("criterion_r_threshold", [&] {
        push_lt(out, "criterion_r_threshold", ival::exp(-(ival::from_str("0.4") * pi)), ival::from_str("0.287"));
    });
    guard("criterion_r_envelope", [&] {
        push_lt(out, "criterion_r_envelope", envelope_r(ival::from_str("0.287")), root_half);
    });
    guard("criterion_lambda_envelope", [&] {
        push_lt(out, "criterion_lambda_envelope", envelope_lambda(ival::exp(-(ival::from_str("0.6") * pi))), root_half);
    });

    // --- base change 3, un-conjugated route (pure dilation) ---------------

    ival q_wide = ival::from_str("0.151");
    guard("t3_case1_b1", [&] {
        ival s = pi / ival(8.0) + 2 * ival::asin(rho46(q_wide, q_wide, 2, 1));
        push_lt(out, "t3_case1_b1", s, half_pi);
    });
    guard("t3_case1_b2", [&] {
        ival s = pi / ival(16.0) + ival::asin(rho46(q_wide, q_wide, 2, 1)) + 2 * q_wide * sin_inc(pi / ival(4.0)) +
                 ival::asin(rho0(q_wide, q_wide));
        push_lt(out, "t3_case1_b2", s, half_pi);
    });
    guard("t3_case1_b3", [&] {
        ival s = 3 * pi / ival(16.0) + ival::asin(rho12(q_wide, q_wide)) + ival::asin(rho46(q_wide, q_wide, 2, 1));
        push_lt(out, "t3_case1_b3", s, half_pi);
    });
    guard("t3_case1_b4", [&] {
        ival s = pi / ival(4.0) + ival::asin(rho12(q_wide, q_wide)) + ival::asin(rho0(q_wide, q_wide));
        push_lt(out, "t3_case1_b4", s, half_pi);
    });
    guard("t3_case1_window", [&] {
        push_ge(out, "t3_case1_window", pi / (-ival::log(q_wide)), ival::from_str("1.66"));
    });
    guard("t3_case2_b1", [&] {
        ival s = pi / ival(4.0) + 2 * ival::asin(rho46(q_med, q_med, 2, 1));
        push_lt(out, "t3_case2_b1", s, half_pi);
    });
    guard("t3_case2_b2", [&] {
        ival s = pi / ival(8.0) + ival::asin(rho46(q_med, q_med, 2, 1)) + ival::asin(rho0(q_med, q_med) + 4 * q_med);
        push_lt(out, "t3_case2_b2", s, half_pi);
    });
    guard("t3_case2_b3", [&] {
        ival s = 3 * pi / ival(8.0) + ival::asin(rho12(q_med, q_med)) + ival::asin(rho46(q_med, q_med, 2, 1));
        push_lt(out, "t3_case2_b3", s, half_pi);
    });
    guard("t3_opposite_sign", [&] {
        ival s = 3 * pi / ival(8.0) + ival::atan(2 * q_med) + ival::asin(rho12(q_med, q_med)) +
                 ival::asin(rho0(q_med, q_med));
        push_lt(out, "t3_opposite_sign", s, half_pi);
    });
    guard("t3_same_sign_convex", [&] {
        threshold_check c;
        c.name = "t3_same_sign_convex";
        c.margin = convex_gap_margin();
        c.pass = c.margin > 0;
        out.push_back(std::move(c));
    });

    // --- base change 3, conjugated route ----------------------------------

    guard("t4_stitch_q1window", [&] {
        push_ge(out, "t4_stitch_q1window", ival::from_str("1.66") * ival(3.0) / ival(4.0), ival::from_str("1.24"));
    });
    guard("t4_part1_q1", [&] {
        push_lt(out, "t4_part1_q1", ival::exp(-(ival::from_str("1.24") * pi)), ival::from_str("0.021"));
    });
    guard("t4_part1_angle", [&] {
        ival q1 = ival::from_str("0.021");
        ival q2 = ival::from_str("0.38");
        ival m1 = 9 * pi / ival(64.0);
        ival m2 = ival::atan((2 * q2) / (1 + 2 * q2 * cos_dec(9 * pi / ival(16.0)))) - 3 * pi / ival(32.0);
        ival m3 = ival::atan((2 * q2 * sin_inc(3 * pi / ival(8.0))) / (1 + 2 * q2 * cos_dec(3 * pi / ival(8.0))));
        ival s = imax(m1, imax(m2, m3)) + ival::asin(rho89p(q1, q2, 8, 3)) +
                 ival::asin(rho01p(q1, q2, 8, 3) / cos_dec(pi / ival(16.0)));
        push_lt(out, "t4_part1_angle", s, half_pi);
    });
    guard("t4_part1_window", [&] {
        ival w = 3 * pi / (ival(4.0) * (-ival::log(ival::from_str("0.38"))));
        push_ge(out, "t4_part1_window", w, ival::from_str("2.43"));
    });
    guard("t4_stitch_parts", [&] {
        push_ge(out, "t4_stitch_parts", ival::from_str("2.43") * ival(3.0) / ival(4.0), ival::from_str("1.82"));
    });
    guard("t4_part2_q1", [&] {
        push_lt(out, "t4_part2_q1", ival::exp(-(ival::from_str("1.82") * pi)), ival::from_str("0.0033"));
    });
    guard("t4_part2_angle", [&] {
        ival q1 = ival::from_str("0.0033");
        ival q2 = ival::from_str("0.571");
        ival m1 = 9 * pi / ival(128.0);
        ival m2 = ival::atan((2 * q2 * sin_inc(9 * pi / ival(32.0))) / (1 + 2 * q2 * cos_dec(9 * pi / ival(32.0))));
        ival s = imax(m1, m2) + ival::asin(rho89p(q1, q2, 16, 3)) + ival::asin(rho01p(q1, q2, 16, 3));
        push_lt(out, "t4_part2_angle", s, half_pi);
    });
    guard("t4_part2_window", [&] {
        ival w = 3 * pi / (ival(4.0) * (-ival::log(ival::from_str("0.571"))));
        push_ge(out, "t4_part2_window", w, ival::from_str("4.2"));
    });

    // --- regime stitching for base change 3 -------------------------------

    guard("t3_scaling_conversion", [&] {
        push_lt(out, "t3_scaling_conversion", ival(44.0) * ival::from_str("0.6") / ival(9.0), ival::from_str("2.94"));
    });
    guard("t3_coverage_scaling", [&] {
        push_lt(out, "t3_coverage_scaling", ival::from_str("2.94"), ival::from_str("4.2"));
    });
    guard("t3_coverage_dyadic", [&] {
        push_lt(out, "t3_coverage_dyadic", 2 * ival::from_str("1.66"), ival::from_str("4.2"));
    });

    return out;
}

// ---------------------------------------------------------------------------
// randomized sweep

namespace {

struct sample_coords {
    double x1, y1, x2, y2, x3, y3;
};

tau2 coords_to_tau(const sample_coords& s) {
    const prec_t p = 64;  // doubles are exact at 64 bits
    return {bigcomplex{bigfloat(s.x1, p), bigfloat(s.y1, p)},
            bigcomplex{bigfloat(s.x2, p), bigfloat(s.y2, p)},
            bigcomplex{bigfloat(s.x3, p), bigfloat(s.y3, p)}};
}

const std::array<sample_coords, 8> kCornerBattery = {{
    {0.5, 0.875, 0.5, 0.875, 0.25, 0.4375},     // all x at the wall, 2 y3 = y1
    {0.0, 1.0, 0.0, 1.0, 0.0, 0.0},             // unit diagonal point
    {-0.5, 0.875, -0.5, 0.875, -0.25, -0.4375},  // mirrored signs
    {0.5, 0.875, 0.0, 1024.0, 0.0, 0.4375},     // extreme aspect ratio
    {0.0, 1.0, 0.0, 1024.0, 0.5, 0.5},          // x3 at the wall, 2 y3 = y1
    {0.0, 32.0, 0.0, 1024.0, 0.0, 16.0},        // tall with maximal y3
    {-0.5, 0.875, 0.5, 2.0, -0.25, 0.4375},     // mixed signs, modest height
    {0.0, 1.0625, 0.0, 1.0625, 0.5, 0.53125},   // both couplings at the wall
}};

void fold_report(sweep_summary& sum, const sample_report& rep, const sample_coords& c) {
    ++sum.reports;
    if (rep.verdict == sample_verdict::fail) ++sum.failures;
    if (rep.verdict == sample_verdict::uncertifiable) {
        ++sum.uncertifiable;
        return;
    }
    double margin = kQuarterLo - rep.span;
    std::size_t k = static_cast<std::size_t>(rep.k);
    std::size_t route = rep.closed_form ? 1 : 0;
    ++sum.count_k[k][route];
    sum.min_margin_k[k][route] = std::min(sum.min_margin_k[k][route], margin);
    if (margin < sum.min_margin) {
        sum.min_margin = margin;
        char buf[256];
        std::snprintf(buf, sizeof buf, "k=%d n=%ld route=%s margin=%.9e z1=%.17g%+.17gi z2=%.17g%+.17gi z3=%.17g%+.17gi",
                      rep.k, rep.n, rep.closed_form ? "closed" : "direct", margin, c.x1, c.y1, c.x2, c.y2, c.x3, c.y3);
        sum.worst = buf;
    }
}

}  // namespace

sweep_summary sweep(const sweep_config& cfg) {
    if (cfg.prec < 8 || cfg.prec > (prec_t(1) << 24)) fail(errc::domain_error, "sweep: precision out of range");
    if (cfg.ymax < 1.0) fail(errc::domain_error, "sweep: ymax must be at least 1");

    sweep_summary sum;
    auto run_one = [&](const sample_coords& c) {
        tau2 t = coords_to_tau(c);
        for (const sample_report& rep : verify_point(t, cfg.prec)) fold_report(sum, rep, c);
        ++sum.points;
    };

    if (cfg.corners)
        for (const sample_coords& c : kCornerBattery) run_one(c);

    std::mt19937_64 eng(cfg.seed);
    auto u01 = [&eng] { return static_cast<double>(eng() >> 11) * 0x1p-53; };
    // strictly above sqrt(3)/2 so rounding keeps samples inside the domain
    const double y1_min = 0.8660254037844387;
    for (unsigned long i = 0; i < cfg.samples; ++i) {
        sample_coords c{};
        unsigned long attempts = 0;
        do {
            if (++attempts > 100000) fail(errc::internal_error, "sweep: sampler rejection rate too high");
            c.x1 = u01() - 0.5;
            c.x2 = u01() - 0.5;
            c.x3 = u01() - 0.5;
            c.y1 = y1_min * std::exp(u01() * std::log(std::max(cfg.ymax, y1_min) / y1_min));
            c.y2 = c.y1 * std::exp(u01() * std::log(std::max(cfg.ymax / c.y1, 1.0)));
            c.y3 = (u01() - 0.5) * c.y1;
        } while (c.x1 * c.x1 + c.y1 * c.y1 < 1.0 || c.x2 * c.x2 + c.y2 * c.y2 < 1.0);
        run_one(c);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// report writers

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

std::string report_text(const std::vector<threshold_check>& checks, const sweep_summary* summary) {
    std::string s;
    unsigned long failed = 0;
    for (const threshold_check& c : checks)
        if (!c.pass) ++failed;
    s += "constants checks " + std::to_string(checks.size()) + " failed " + std::to_string(failed) + "\n";
    for (const threshold_check& c : checks) {
        s += "check " + c.name + " claimed " + fmt("%.9e", c.claimed_bound) + " computed " +
             fmt("%.9e", c.computed_value) + " margin " + fmt("%.9e", c.margin) + (c.pass ? " pass" : " FAIL") + "\n";
    }
    if (summary) {
        s += "sweep points " + std::to_string(summary->points) + " reports " + std::to_string(summary->reports) +
             " failures " + std::to_string(summary->failures) + " uncertifiable " +
             std::to_string(summary->uncertifiable) + "\n";
        s += "sweep min_margin " + fmt("%.9e", summary->min_margin) + "\n";
        for (int k = 0; k < 4; ++k)
            for (int route = 0; route < 2; ++route) {
                auto ks = static_cast<std::size_t>(k);
                auto rs = static_cast<std::size_t>(route);
                if (summary->count_k[ks][rs] == 0) continue;
                s += "sweep min k=" + std::to_string(k) + (route ? " closed " : " direct ") +
                     fmt("%.9e", summary->min_margin_k[ks][rs]) + " count " +
                     std::to_string(summary->count_k[ks][rs]) + "\n";
            }
        if (!summary->worst.empty()) s += "sweep worst " + summary->worst + "\n";
    }
    return s;
}

// floating values are serialized as decimal strings so parsers never squeeze
// them through a double
std::string report_json(const std::vector<threshold_check>& checks, const sweep_summary* summary) {
    std::string s = "{\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const threshold_check& c = checks[i];
        if (i) s += ",";
        s += "{\"name\":\"" + c.name + "\",\"claimed\":\"" + fmt("%.9e", c.claimed_bound) +
             "\",\"computed\":\"" + fmt("%.9e", c.computed_value) + "\",\"margin\":\"" + fmt("%.9e", c.margin) +
             "\",\"pass\":" + (c.pass ? "true" : "false") + "}";
    }
    s += "],\"samples\":";
    if (summary) {
        s += "{\"count\":" + std::to_string(summary->points) + ",\"failures\":" + std::to_string(summary->failures) +
             ",\"uncertifiable\":" + std::to_string(summary->uncertifiable) + ",\"min_margin\":\"" +
             fmt("%.9e", summary->min_margin) + "\"}";
    } else {
        s += "null";
    }
    s += "}";
    return s;
}

}  // namespace theta2
