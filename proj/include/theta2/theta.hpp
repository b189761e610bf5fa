#pragma once

#include <array>
#include <vector>

#include "theta2/interval.hpp"
#include "theta2/numerics.hpp"
#include "theta2/siegel.hpp"

namespace theta2 {

// Characteristic (a, b) in {0,1}^2 x {0,1}^2, flattened as
//   j = b0 + 2 b1 + 4 a0 + 8 a1.
// A characteristic is odd when a0 b0 + a1 b1 is odd; the six odd theta
// constants vanish identically.
inline constexpr int char_b0(int j) { return j & 1; }
inline constexpr int char_b1(int j) { return (j >> 1) & 1; }
inline constexpr int char_a0(int j) { return (j >> 2) & 1; }
inline constexpr int char_a1(int j) { return (j >> 3) & 1; }
inline constexpr bool char_is_odd(int j) {
    return ((char_a0(j) & char_b0(j)) ^ (char_a1(j) & char_b1(j))) != 0;
}
inline constexpr std::array<int, 10> kEvenChars = {0, 1, 2, 3, 4, 6, 8, 9, 12, 15};

// All sixteen genus-2 theta constants at one point, with certified absolute
// error radii (<= 2^-prec each when produced by theta_all; transformed
// vectors inherit the cocycle scaling). Odd entries are exactly zero,
// radius zero.
struct theta_vec {
    tau2 tau;
    prec_t prec;
    std::array<bigcomplex, 16> value;
    std::array<err_radius, 16> radius;
    unsigned long trunc = 0;  // lattice cutoff actually used (diagnostics)

    theta_vec(tau2 t, prec_t p) : tau(std::move(t)), prec(p) {}
};

// Genus-1 quadruple theta_{a,b}(z), indexed j = b + 2a; entry 3 is the odd
// one, exactly zero.
struct theta1_vec {
    tau1 tau;
    prec_t prec;
    std::array<bigcomplex, 4> value;
    std::array<err_radius, 4> radius;
    unsigned long trunc = 0;

    theta1_vec(tau1 t, prec_t p) : tau(std::move(t)), prec(p) {}
};

// Certified evaluation by direct lattice summation. The truncation cutoff is
// chosen so the proven tail is < 2^-(p+8); accumulated rounding stays below
// 2^-(p+20); every radius therefore lands under 2^-p. Rejects points whose
// smallest Im-eigenvalue sits below the floor (the cutoff would explode).
inline constexpr double kLambdaFloor = 1e-3;
theta_vec theta_all(const tau2& t, prec_t p);
theta1_vec theta_g1(const tau1& t, prec_t p);

// First-terms approximants xi with certified error envelopes rho. Each kind
// carries its own hypotheses on (y1, y2, y3); they are verified, not assumed.
// "multiplicative" reports certify |theta_j/xi - 1| <= rho, additive ones
// |theta_j - xi| <= rho, matching the shape each envelope was derived in.
enum class bound_kind {
    b46,    // j in {4,6},   xi = 2 exp(i pi z1/4), multiplicative, parameter k
    b89,    // j in {8,9},   xi = 2 exp(i pi z2/4), multiplicative, parameter k
    b0,     // j = 0,        xi = 1 + 2e^{i pi z1} + 2e^{i pi z2}, additive
    b02,    // j in {0,2},   xi = 1 + 2e^{i pi z1}, additive (rho0 + 2 q2)
    b01,    // j in {0,1},   xi = 1 + 2e^{i pi z2}, additive (rho0 + 2 q1)
    b1all,  // j in {0..3},  xi = 1, additive (rho0 + 2 q1 + 2 q2)
    b12,    // j = 12,       xi = 2 exp(i pi (z1+z2)/4) * 2cos(pi z3/2), mult.
    bp01,   // j in {0,1},   xi as b01, additive, sharper cross terms, k >= 2
    bp89,   // j in {8,9},   xi as b89, multiplicative, sharper cross terms
};

struct bound_report {
    bound_kind kind;
    bigcomplex xi;           // approximant value
    err_radius xi_err;       // evaluation error of xi itself
    bigfloat rho;            // envelope, rounded up
    bool multiplicative;
    std::vector<int> js;

    // total disk radius around the computed xi containing theta_j
    err_radius disk_radius() const;
};

// The k parameter is a rational knum/kden >= 1 (the tau4 regimes need 8/3
// and 16/3). Fails with domain_error when the kind's hypotheses do not
// certifiably hold at t.
bound_report xi_rho(const tau2& t, bound_kind kind, long knum = 1, long kden = 1);

// Envelope functions shared with the threshold certifier; q arguments in
// [0, 1) as intervals, k rational as above.
ival rho46(const ival& q1, const ival& q2, long knum, long kden);
ival rho89(const ival& q1, const ival& q2, long knum, long kden);
ival rho0(const ival& q1, const ival& q2);
ival rho12(const ival& q1, const ival& q2);
ival rho01p(const ival& q1, const ival& q2, long knum, long kden);
ival rho89p(const ival& q1, const ival& q2, long knum, long kden);

// |theta_j - 1| envelopes behind the good-position criterion, as functions
// of q = exp(-pi r) resp. q = exp(-pi lambda1):
//   by r:       8q^2 + 4q^4 + 8q^5 + 4q^8 + 4 (1+q) q^9 / (1-q)^2
//   by lambda1: 4q + 4q^2 + 4q^4 + 8q^5 + 4q^8 + 4 (1+q) q^9 / (1-q)^2
// Both are < sqrt(2)/2 at the thresholds r >= 0.4 and lambda1 >= 0.6, which
// places theta_0..theta_3 inside a disk contained in an open quarter plane.
ival envelope_r(const ival& q);
ival envelope_lambda(const ival& q);

enum class gp_reason { by_r, by_lambda1, unknown };
gp_reason good_position_criterion(const tau2& t);

// Certified lower bounds (rounded down) on r resp. lambda1 after the three
// nontrivial base changes:
//   r(g1 t)       >= 9 y1 / (34 |z1|^2)
//   r(g2 t)       >= 9 y2 / (34 |z2|^2)
//   lambda1(g3 t) >= 9 / (44 y2)
// Valid for t in the reduction domain; rejects other points.
struct gamma_lower_bounds {
    bigfloat r_gamma1, r_gamma2, lambda1_gamma3;
};
gamma_lower_bounds lower_bounds_at_gamma(const tau2& t);

}  // namespace theta2
