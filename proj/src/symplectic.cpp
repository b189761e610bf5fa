#include "theta2/symplectic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

#include "theta2/errors.hpp"

namespace theta2 {

namespace {

// block accessors: blocks[0]=A, 1=B, 2=C, 3=D; entry (i,j) of block q
inline std::int64_t blk(const sympmat& g, int q, int i, int j) {
    return g.at((q / 2) * 2 + i, (q % 2) * 2 + j);
}

constexpr std::int64_t kJ[16] = {0, 0, 1, 0,   //
                                 0, 0, 0, 1,   //
                                 -1, 0, 0, 0,  //
                                 0, -1, 0, 0};

}  // namespace

sympmat sympmat::identity() {
    sympmat g;
    for (int i = 0; i < 4; ++i) g.at(i, i) = 1;
    return g;
}

bool sympmat::is_symplectic() const {
    // g^t J g == J, accumulated wide so 2^n-sized entries cannot overflow
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            __int128 acc = 0;
            for (int k = 0; k < 4; ++k) {
                __int128 jk = 0;
                for (int l = 0; l < 4; ++l) jk += static_cast<__int128>(kJ[4 * k + l]) * at(l, c);
                acc += static_cast<__int128>(at(k, r)) * jk;
            }
            if (acc != static_cast<__int128>(kJ[4 * r + c])) return false;
        }
    }
    return true;
}

sympmat sympmat::operator*(const sympmat& o) const {
    sympmat r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            __int128 acc = 0;
            for (int k = 0; k < 4; ++k) acc += static_cast<__int128>(at(i, k)) * o.at(k, j);
            if (acc > INT64_MAX || acc < INT64_MIN)
                fail(errc::internal_error, "sympmat: product entry overflows 64 bits");
            r.at(i, j) = static_cast<std::int64_t>(acc);
        }
    }
    return r;
}

sympmat sympmat::inverse() const {
    sympmat r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r.at(i, j) = blk(*this, 3, j, i);       // D^t
            r.at(i, j + 2) = -blk(*this, 1, j, i);  // -B^t
            r.at(i + 2, j) = -blk(*this, 2, j, i);  // -C^t
            r.at(i + 2, j + 2) = blk(*this, 0, j, i);
        }
    }
    return r;
}

sympmat gamma(int k) {
    if (k < 0 || k > 3) fail(errc::domain_error, "gamma: k out of range 0..3");
    if (k == 0) return sympmat::identity();
    std::int64_t s[2][2] = {};
    if (k == 1) s[0][0] = 1;
    if (k == 2) s[1][1] = 1;
    if (k == 3) s[0][1] = s[1][0] = 1;
    sympmat g;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            std::int64_t s2 = s[i][0] * s[0][j] + s[i][1] * s[1][j];
            g.at(i, j) = i == j ? -1 : 0;
            g.at(i, j + 2) = -s[i][j];
            g.at(i + 2, j) = s[i][j];
            g.at(i + 2, j + 2) = (i == j ? -1 : 0) + s2;
        }
    }
    return g;
}

sympmat eta(int k, long n) {
    if (k < 1 || k > 4) fail(errc::domain_error, "eta: k out of range 1..4");
    if (n < 0 || n > 62) fail(errc::domain_error, "eta: n out of range 0..62");
    const std::int64_t p2 = std::int64_t(1) << n;
    sympmat g;
    auto rows = [&g](std::initializer_list<std::int64_t> e) {
        int i = 0;
        for (std::int64_t v : e) g.m[static_cast<std::size_t>(i++)] = v;
    };
    switch (k) {
        case 1:
            rows({0, 0, -1, 0, 0, 1, 0, 0, 1, 0, p2, 0, 0, 0, 0, 1});
            break;
        case 2:
            rows({1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, p2});
            break;
        case 3:
            rows({0, 0, 0, -1, 0, 0, -1, 0, 0, 1, p2, 0, 1, 0, 0, p2});
            break;
        case 4: {
            sympmat f;
            f.m = {0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1};
            g = f * eta(3, n);
            break;
        }
    }
    if (!g.is_symplectic()) fail(errc::internal_error, "eta: constructed matrix not symplectic");
    return g;
}

theta_char theta_char::from_index(int j) {
    if (j < 0 || j > 15) fail(errc::domain_error, "theta_char: index out of range");
    return {(j >> 2) & 1, (j >> 3) & 1, j & 1, (j >> 1) & 1};
}

transform_data transform_char(const sympmat& g, const theta_char& ch) {
    // every quantity below is a polynomial in the entries, so reducing the
    // matrix mod 8 up front keeps all intermediates tiny while preserving
    // both epsilon mod 8 and the target characteristic mod 2
    std::int64_t r8[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r8[i][j] = ((g.at(i, j) % 8) + 8) % 8;
    auto A = [&](int i, int j) { return r8[i][j]; };
    auto B = [&](int i, int j) { return r8[i][j + 2]; };
    auto C = [&](int i, int j) { return r8[i + 2][j]; };
    auto D = [&](int i, int j) { return r8[i + 2][j + 2]; };

    const std::int64_t cd[2] = {C(0, 0) * D(0, 0) + C(0, 1) * D(0, 1),
                                C(1, 0) * D(1, 0) + C(1, 1) * D(1, 1)};
    const std::int64_t ab[2] = {A(0, 0) * B(0, 0) + A(0, 1) * B(0, 1),
                                A(1, 0) * B(1, 0) + A(1, 1) * B(1, 1)};
    const std::int64_t u[4] = {ch.a0 - cd[0], ch.a1 - cd[1], ch.b0 - ab[0], ch.b1 - ab[1]};

    std::int64_t al[2], be[2];
    for (int i = 0; i < 2; ++i) {
        al[i] = be[i] = 0;
        for (int r = 0; r < 4; ++r) {
            al[i] += r8[r][i] * u[r];
            be[i] += r8[r][i + 2] * u[r];
        }
    }

    std::int64_t Ba[2], Cb[2], Da[2], Ab[2];
    for (int i = 0; i < 2; ++i) {
        Ba[i] = B(i, 0) * al[0] + B(i, 1) * al[1];
        Cb[i] = C(i, 0) * be[0] + C(i, 1) * be[1];
        Da[i] = D(i, 0) * al[0] + D(i, 1) * al[1];
        Ab[i] = A(i, 0) * be[0] + A(i, 1) * be[1];
    }
    transform_data td;
    td.target.a0 = static_cast<int>(((al[0] % 2) + 2) % 2);
    td.target.a1 = static_cast<int>(((al[1] % 2) + 2) % 2);
    td.target.b0 = static_cast<int>(((be[0] % 2) + 2) % 2);
    td.target.b1 = static_cast<int>(((be[1] % 2) + 2) % 2);

    // The last summand accounts for reducing the source characteristic from
    // the integer vectors (alpha, beta) to bits: shifting the second half of
    // a characteristic by an even vector 2q multiplies theta by
    // exp(2 i pi a'^t q), i.e. adds 2 a'^t (beta - b') to the exponent of
    // zeta8. Without it kappa would not be characteristic-independent.
    std::int64_t eps = 2 * (Ba[0] * Cb[0] + Ba[1] * Cb[1]) - (Da[0] * Ba[0] + Da[1] * Ba[1]) -
                       (Cb[0] * Ab[0] + Cb[1] * Ab[1]) +
                       2 * (ab[0] * (Da[0] - Cb[0]) + ab[1] * (Da[1] - Cb[1])) +
                       2 * (td.target.a0 * (be[0] - td.target.b0) +
                            td.target.a1 * (be[1] - td.target.b1));
    td.epsilon = static_cast<int>(((eps % 8) + 8) % 8);
    return td;
}

namespace {

struct cmat2 {
    bigcomplex e[2][2];
};

// C tau + D and A tau + B as 2x2 complex matrices at precision w
cmat2 affine_block(const sympmat& g, int qa, int qb, const tau2& t, prec_t w) {
    const bigcomplex z[2][2] = {{t.z1.round_to(w), t.z3.round_to(w)},
                                {t.z3.round_to(w), t.z2.round_to(w)}};
    cmat2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            bigcomplex acc(w);
            for (int k = 0; k < 2; ++k)
                acc += z[k][j] * bigfloat(static_cast<long>(blk(g, qa, i, k)), w);
            acc.re += bigfloat(static_cast<long>(blk(g, qb, i, j)), w);
            r.e[i][j] = acc;
        }
    }
    return r;
}

bigcomplex det2(const cmat2& m) { return m.e[0][0] * m.e[1][1] - m.e[0][1] * m.e[1][0]; }

}  // namespace

bigcomplex cocycle(const sympmat& g, const tau2& t) {
    return det2(affine_block(g, 2, 3, t, t.prec() + 32));
}

tau2 act(const sympmat& g, const tau2& t) {
    const prec_t w = t.prec() + 32;
    const cmat2 num = affine_block(g, 0, 1, t, w);
    const cmat2 den = affine_block(g, 2, 3, t, w);
    const bigcomplex d = det2(den);
    // (C tau + D)^{-1} = adj / det
    const bigcomplex inv[2][2] = {{den.e[1][1] / d, -den.e[0][1] / d},
                                  {-den.e[1][0] / d, den.e[0][0] / d}};
    bigcomplex r[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = num.e[i][0] * inv[0][j] + num.e[i][1] * inv[1][j];
    tau2 out(r[0][0], r[1][1], bigcomplex::mul_2si(r[0][1] + r[1][0], -1));
    if (!out.im_positive_definite())
        fail(errc::domain_error, "act: image imaginary part not positive definite");
    return out;
}

tau2 act_scaled(const sympmat& g, const tau2& t, long n) { return act(g, t).scale(n); }

tau2 tau_kn(const tau2& t, int k, long n) {
    if (n < 0) fail(errc::domain_error, "tau_kn: n must be nonnegative");
    switch (k) {
        case 1:
            return {bigcomplex::mul_2si(t.z1, -n), bigcomplex::mul_2si(t.z2, n), t.z3};
        case 2:
            return {bigcomplex::mul_2si(t.z1, n), bigcomplex::mul_2si(t.z2, -n), t.z3};
        case 3:
            return t.scale(-n);
        case 4: {
            const prec_t w = t.prec() + 32;
            const bigcomplex z1 = t.z1.round_to(w);
            const bigcomplex q3 = t.z3.round_to(w) / z1;
            const bigcomplex one(1.0, 0.0, w);
            return {bigcomplex::mul_2si(-(one / z1), n), //
                    bigcomplex::mul_2si(t.z2.round_to(w) - t.z3.round_to(w) * q3, -n), -q3};
        }
        default:
            fail(errc::domain_error, "tau_kn: k out of range 1..4");
    }
}

bool tau4_bounds_check(const tau2& t, long n) {
    if (n < 0 || n > 59) fail(errc::domain_error, "tau4_bounds_check: n out of range 0..59");
    if (!in_fprime(t)) fail(errc::domain_error, "tau4_bounds_check: point not reduced");
    const ival x1(t.z1.re), y1(t.z1.im), x2(t.z2.re), y2(t.z2.im), x3(t.z3.re), y3(t.z3.im);
    const ival d = x1 * x1 + y1 * y1;
    // tau_4 entries: z1' = -2^n/z1, z3' = -z3/z1, z2' = 2^{-n}(z2 - z3^2/z1)
    const ival y3p = (x3 * y1 - y3 * x1) / d;  // im(-z3/z1)
    const ival y1p = y1 / d;                   // im(-1/z1); carries 2^n below
    const ival sre = x3 * x3 - y3 * y3, sim = 2 * (x3 * y3);
    const ival im_s = (sim * x1 - sre * y1) / d;  // im(z3^2/z1)
    const ival re_s = (sre * x1 + sim * y1) / d;
    const ival y2s = y2 - im_s;  // 2^n * y2(tau_4)
    const ival x2s = x2 - re_s;  // 2^n * x2(tau_4)
    // |y3'| <= (3/2^{n+2}) y1' with y1(tau_4) = 2^n y1p: scale by 2^{n+2}
    const bool c1 = ((std::int64_t(1) << (n + 2)) * ival::abs(y3p))
                        .certainly_le(3 * ((std::int64_t(1) << n) * y1p));
    // y3'^2 <= (3/7) y1' y2' with y1' = 2^n y1p, y2' = 2^{-n} y2s
    const bool c2 = (7 * (y3p * y3p)).certainly_le(3 * (y1p * y2s));
    // |x2'| <= 9/2^{n+3} with x2' = 2^{-n} x2s
    const bool c3 = (8 * ival::abs(x2s)).certainly_le(ival(9.0));
    return c1 && c2 && c3;
}

namespace {

bigcomplex zeta8_pow(int e, prec_t w) {
    return exp_ipi(bigcomplex(static_cast<double>(((e % 8) + 8) % 8) / 4.0, 0.0, w));
}

std::map<std::array<std::int64_t, 16>, int> kappa_cache;
std::mutex kappa_mutex;

int snap_root8(const bigcomplex& ratio, prec_t w) {
    const double tol = 0.015625;
    if (std::abs(abs(ratio).to_double() - 1.0) > tol)
        fail(errc::calibration_failed, "kappa: cocycle ratio modulus far from 1");
    const double ang = arg(ratio).to_double();
    int idx = static_cast<int>(std::lround(ang / (4 * std::atan(1.0) / 4)));
    idx = ((idx % 8) + 8) % 8;
    if (abs(ratio - zeta8_pow(idx, w)).to_double() > tol)
        fail(errc::calibration_failed, "kappa: ratio does not snap to an eighth root");
    return idx;
}

}  // namespace

int kappa_for(const sympmat& g) {
    if (!g.is_symplectic()) fail(errc::domain_error, "kappa_for: matrix not symplectic");
    {
        std::lock_guard<std::mutex> lk(kappa_mutex);
        auto it = kappa_cache.find(g.m);
        if (it != kappa_cache.end()) return it->second;
    }
    const prec_t p = 64, w = p + 32;
    const bigfloat tiny = bigfloat::pow2(-20);
    const tau2 refs[3] = {
        tau2(bigcomplex(0, 1, p), bigcomplex(0, 1, p), bigcomplex(0, 0, p)),
        tau2(bigcomplex(0.1, 1.1, p), bigcomplex(-0.15, 1.3, p), bigcomplex(0.05, 0.2, p)),
        tau2(bigcomplex(0.07, 1.9, p), bigcomplex(-0.11, 2.3, p), bigcomplex(0.03, 0.4, p))};
    for (const tau2& ref : refs) {
        theta_vec at_ref(ref, p), at_img(ref, p);
        bigcomplex c(w);
        try {
            at_ref = theta_all(ref, p);
            at_img = theta_all(act(g, ref), p);
            c = csqrt_principal(cocycle(g, ref));
        } catch (const error&) {
            continue;  // image too close to the lambda1 floor; try the next point
        }
        bool found = false;
        int idx = 0;
        for (int j : kEvenChars) {
            const transform_data td = transform_char(g, theta_char::from_index(j));
            const bigcomplex& src = at_ref.value[static_cast<std::size_t>(td.target.index())];
            const bigcomplex& dst = at_img.value[static_cast<std::size_t>(j)];
            if (abs(src) < tiny || abs(dst) < tiny) continue;
            const bigcomplex ratio = dst / (zeta8_pow(td.epsilon, w) * c * src);
            const int got = snap_root8(ratio, w);
            if (!found) {
                idx = got;
                found = true;
            } else if (got != idx) {
                fail(errc::calibration_failed, "kappa: characteristics disagree on eighth root");
            }
        }
        if (found) {
            std::lock_guard<std::mutex> lk(kappa_mutex);
            kappa_cache.emplace(g.m, idx);
            return idx;
        }
    }
    fail(errc::calibration_failed, "kappa: no usable characteristic at any reference point");
}

theta_vec theta_transform(const sympmat& g, const tau2& t, const theta_vec& v) {
    const prec_t p = v.prec, w = p + 40;
    const tau2 tw = t.round_to(w);
    const bigcomplex c = csqrt_principal(cocycle(g, tw));
    const int kap = kappa_for(g);
    theta_vec out(act(g, tw), p);
    out.trunc = v.trunc;
    for (int j = 0; j < 16; ++j) {
        const transform_data td = transform_char(g, theta_char::from_index(j));
        const std::size_t jp = static_cast<std::size_t>(td.target.index());
        const std::size_t js = static_cast<std::size_t>(j);
        const bigcomplex f = zeta8_pow(kap + td.epsilon, w) * c;
        out.value[js] = (f * v.value[jp]).round_to(p + 32);
        const bigfloat cu = abs_up(f);
        const bigfloat mag = bigfloat::mul(
            cu, bigfloat::add(abs_up(v.value[jp]), v.radius[jp].v, MPFR_RNDU), MPFR_RNDU);
        out.radius[js] = v.radius[jp].scaled(cu) +
                         err_radius(bigfloat::mul(mag, bigfloat::pow2(-static_cast<long>(w) + 8),
                                                  MPFR_RNDU)) +
                         err_radius(bigfloat::mul(abs_up(out.value[js]),
                                                  bigfloat::pow2(-static_cast<long>(p) - 28),
                                                  MPFR_RNDU));
    }
    return out;
}

}  // namespace theta2
