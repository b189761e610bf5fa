#include "theta2/borchardt.hpp"

#include <vector>

#include "theta2/errors.hpp"

namespace theta2 {

namespace {

// |z| lower bound over the disk; ambiguous_roots when the radius eats more
// than half the modulus (the disk then gives no usable root data)
bigfloat disk_floor(const bigcomplex& z, const err_radius& r) {
    const bigfloat lo = abs_down(z);
    if (!(r.v < bigfloat::mul_2si(lo, -1)))
        fail(errc::ambiguous_roots, "good_roots: tuple entry indistinguishable from zero");
    return bigfloat::sub(lo, r.v, MPFR_RNDD);
}

// root of s with radius: |t - t*| <= rs / sqrt(2 m) + eval slop, where m
// lower-bounds |s| over the disk and t* is the root of the true value on
// t's side of the plane
bigcomplex certified_root(const bigcomplex& s, const err_radius& rs, err_radius& rt_out) {
    const prec_t w = s.prec();
    const bigfloat m = disk_floor(s, rs);
    const bigcomplex t = csqrt_principal(s);
    const bigfloat den =
        bigfloat::sqrt(bigfloat::mul_2si(m, 1).round_to(err_radius::kPrec, MPFR_RNDD), MPFR_RNDD);
    bigfloat prop = bigfloat::div(rs.v, den, MPFR_RNDU);
    bigfloat slop = bigfloat::mul(abs_up(t).round_to(err_radius::kPrec, MPFR_RNDU),
                                  bigfloat::pow2(-static_cast<long>(w) + 6), MPFR_RNDU);
    rt_out = err_radius(bigfloat::add(prop, slop, MPFR_RNDU));
    return t;
}

// sign of re(a conj(b)) certified against both radii; 0 means ambiguous
int certified_dot_sign(const bigcomplex& a, const err_radius& ra, const bigcomplex& b,
                       const err_radius& rb) {
    const bigfloat ip = a.re * b.re + a.im * b.im;
    const bigfloat au = abs_up(a).round_to(err_radius::kPrec, MPFR_RNDU);
    const bigfloat bu = abs_up(b).round_to(err_radius::kPrec, MPFR_RNDU);
    bigfloat margin = bigfloat::add(bigfloat::mul(au, rb.v, MPFR_RNDU),
                                    bigfloat::mul(bu, ra.v, MPFR_RNDU), MPFR_RNDU);
    margin = bigfloat::add(margin, bigfloat::mul(ra.v, rb.v, MPFR_RNDU), MPFR_RNDU);
    // rounding of the dot product itself
    const bigfloat dot_err = bigfloat::mul(bigfloat::mul(au, bu, MPFR_RNDU),
                                           bigfloat::pow2(-static_cast<long>(a.prec()) + 4),
                                           MPFR_RNDU);
    margin = bigfloat::add(margin, dot_err, MPFR_RNDU);
    if (ip > margin) return 1;
    if (ip < -margin) return -1;
    return 0;
}

// product with certified radius plus evaluation slop
bigcomplex certified_mul(const bigcomplex& a, const err_radius& ra, const bigcomplex& b,
                         const err_radius& rb, err_radius& r_out) {
    const bigcomplex v = a * b;
    r_out = err_radius::mul(abs_up(a), ra, abs_up(b), rb) +
            err_radius(bigfloat::mul(abs_up(v).round_to(err_radius::kPrec, MPFR_RNDU),
                                     bigfloat::pow2(-static_cast<long>(v.prec()) + 4), MPFR_RNDU));
    return v;
}

template <std::size_t N>
std::array<bigcomplex, N> select_roots(const std::array<bigcomplex, N>& s,
                                       const std::array<err_radius, N>& radius,
                                       std::array<err_radius, N>* root_radius) {
    std::array<bigcomplex, N> t = s;
    std::array<err_radius, N> rt;
    for (std::size_t b = 0; b < N; ++b) t[b] = certified_root(s[b], radius[b], rt[b]);
    for (std::size_t b = 1; b < N; ++b) {
        const int sgn = certified_dot_sign(t[b], rt[b], t[0], rt[0]);
        if (sgn == 0)
            fail(errc::ambiguous_roots, "good_roots: sign margin smaller than the error bound");
        if (sgn < 0) t[b] = -t[b];
    }
    if (!good_position(std::vector<bigcomplex>(t.begin(), t.end()),
                       std::vector<err_radius>(rt.begin(), rt.end())))
        fail(errc::not_in_good_position, "good_roots: roots fail the quarter-plane certificate");
    if (root_radius) *root_radius = rt;
    return t;
}

unsigned long iteration_cap(prec_t p) {
    unsigned long lg = 0;
    while ((prec_t(1) << lg) < p) ++lg;
    return 4 * (lg + 64);
}

// shared stopping logic: cross-component spread of the computed tuple. The
// radii stay out of the stop test on purpose (they are charged to the final
// radius instead); otherwise wide inputs could never observe agreement.
template <std::size_t N>
bigfloat spread_upper(const std::array<bigcomplex, N>& s, const std::array<err_radius, N>&) {
    bigfloat d(0.0, err_radius::kPrec);
    for (std::size_t b = 1; b < N; ++b)
        d = bigfloat::max(d, abs_up(s[b] - s[0]).round_to(err_radius::kPrec, MPFR_RNDU));
    return d;
}

template <typename State, std::size_t N>
limit_result run_limit(State state, prec_t p, State (*advance)(const State&)) {
    const bigfloat thresh = bigfloat::pow2(-static_cast<long>(p) - 4);
    const unsigned long cap = iteration_cap(p);
    bigcomplex prev(state.s[0].prec());
    bool have_prev = false;
    while (true) {
        const bigfloat d = spread_upper<N>(state.s, state.radius);
        if (have_prev && d < thresh) {
            const bigfloat d2 = abs_up(state.s[0] - prev).round_to(err_radius::kPrec, MPFR_RNDU);
            if (d2 < thresh) break;
        }
        if (state.steps >= cap)
            fail(errc::no_convergence, "limit: iteration cap hit before agreement");
        prev = state.s[0];
        have_prev = true;
        state = advance(state);
    }
    // remaining drift: in the quadratic regime the post-stop movement is
    // dominated by a geometric series under twice the current spread
    bigfloat extra = bigfloat::pow2(-static_cast<long>(p) - 3);
    for (std::size_t b = 0; b < N; ++b)
        extra = bigfloat::add(extra, bigfloat::mul_2si(state.radius[b].v, 2), MPFR_RNDU);
    limit_result out;
    out.value = state.s[0].round_to(p + 32);
    out.radius = state.radius[0] + err_radius(extra);
    out.radius = out.radius + err_radius(bigfloat::mul(
                                 abs_up(out.value).round_to(err_radius::kPrec, MPFR_RNDU),
                                 bigfloat::pow2(-static_cast<long>(p) - 28), MPFR_RNDU));
    out.steps = state.steps;
    return out;
}

// round a tuple to working precision, charging the representation change
template <std::size_t N, typename State>
State widen(const std::array<bigcomplex, N>& s, const std::array<err_radius, N>& r, prec_t w) {
    State st;
    for (std::size_t b = 0; b < N; ++b) {
        st.s[b] = s[b].round_to(w);
        st.radius[b] =
            r[b] + err_radius(bigfloat::mul(abs_up(s[b]).round_to(err_radius::kPrec, MPFR_RNDU),
                                            bigfloat::pow2(-static_cast<long>(w) + 1), MPFR_RNDU));
    }
    return st;
}

}  // namespace

borchardt_state make_borchardt_state(std::array<bigcomplex, 4> s, std::array<err_radius, 4> r) {
    borchardt_state st;
    st.s = std::move(s);
    st.radius = std::move(r);
    return st;
}

std::array<bigcomplex, 4> good_roots(const std::array<bigcomplex, 4>& s,
                                     const std::array<err_radius, 4>& radius,
                                     std::array<err_radius, 4>* root_radius) {
    return select_roots<4>(s, radius, root_radius);
}

borchardt_state borchardt_step(const borchardt_state& st) {
    std::array<err_radius, 4> rt;
    const std::array<bigcomplex, 4> t = select_roots<4>(st.s, st.radius, &rt);
    borchardt_state out;
    out.t = t;
    out.t_radius = rt;
    out.has_roots = true;
    out.steps = st.steps + 1;
    // pairings over (Z/2Z)^2: b = b1 + b2
    static constexpr int pair_idx[3][2][2] = {
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    {
        bigcomplex acc(t[0].prec());
        err_radius racc;
        for (int b = 0; b < 4; ++b) {
            err_radius rp;
            acc += certified_mul(t[static_cast<std::size_t>(b)], rt[static_cast<std::size_t>(b)],
                                 t[static_cast<std::size_t>(b)], rt[static_cast<std::size_t>(b)],
                                 rp);
            racc = racc + rp;
        }
        out.s[0] = bigcomplex::mul_2si(acc, -2);
        out.radius[0] = racc.scaled(bigfloat(0.25, err_radius::kPrec));
    }
    for (int b = 1; b < 4; ++b) {
        bigcomplex acc(t[0].prec());
        err_radius racc;
        for (int pr = 0; pr < 2; ++pr) {
            const std::size_t i = static_cast<std::size_t>(pair_idx[b - 1][pr][0]);
            const std::size_t j = static_cast<std::size_t>(pair_idx[b - 1][pr][1]);
            err_radius rp;
            acc += certified_mul(t[i], rt[i], t[j], rt[j], rp);
            racc = racc + rp;
        }
        out.s[static_cast<std::size_t>(b)] = bigcomplex::mul_2si(acc, -1);
        out.radius[static_cast<std::size_t>(b)] = racc.scaled(bigfloat(0.5, err_radius::kPrec));
    }
    return out;
}

limit_result borchardt_limit(const std::array<bigcomplex, 4>& s0,
                             const std::array<err_radius, 4>& radius, prec_t p) {
    if (p < 8) fail(errc::domain_error, "borchardt_limit: precision too small");
    const prec_t w = p + 48;
    return run_limit<borchardt_state, 4>(widen<4, borchardt_state>(s0, radius, w), p,
                                         +[](const borchardt_state& st) { return borchardt_step(st); });
}

agm_state make_agm_state(std::array<bigcomplex, 2> s, std::array<err_radius, 2> r) {
    agm_state st;
    st.s = std::move(s);
    st.radius = std::move(r);
    return st;
}

std::array<bigcomplex, 2> agm_good_roots(const std::array<bigcomplex, 2>& s,
                                         const std::array<err_radius, 2>& radius,
                                         std::array<err_radius, 2>* root_radius) {
    return select_roots<2>(s, radius, root_radius);
}

agm_state agm_step(const agm_state& st) {
    std::array<err_radius, 2> rt;
    const std::array<bigcomplex, 2> t = select_roots<2>(st.s, st.radius, &rt);
    agm_state out;
    out.t = t;
    out.t_radius = rt;
    out.has_roots = true;
    out.steps = st.steps + 1;
    out.s[0] = bigcomplex::mul_2si(st.s[0] + st.s[1], -1);
    out.radius[0] = (st.radius[0] + st.radius[1]).scaled(bigfloat(0.5, err_radius::kPrec)) +
                    err_radius(bigfloat::mul(abs_up(out.s[0]).round_to(err_radius::kPrec, MPFR_RNDU),
                                             bigfloat::pow2(-static_cast<long>(out.s[0].prec()) + 4),
                                             MPFR_RNDU));
    err_radius rp;
    out.s[1] = certified_mul(t[0], rt[0], t[1], rt[1], rp);
    out.radius[1] = rp;
    return out;
}

limit_result agm_limit(const std::array<bigcomplex, 2>& s0, const std::array<err_radius, 2>& radius,
                       prec_t p) {
    if (p < 8) fail(errc::domain_error, "agm_limit: precision too small");
    const prec_t w = p + 48;
    return run_limit<agm_state, 2>(widen<2, agm_state>(s0, radius, w), p,
                                   +[](const agm_state& st) { return agm_step(st); });
}

}  // namespace theta2
