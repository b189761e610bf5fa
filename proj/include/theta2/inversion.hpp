#pragma once

#include <array>

#include "theta2/borchardt.hpp"
#include "theta2/siegel.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// Squared quotients theta_j^2/theta_0^2 at the ten even characteristics,
// stored in ascending j order {0,1,2,3,4,6,8,9,12,15}; the j=0 slot is
// exactly 1.
struct theta_quotients2 {
    prec_t prec = 0;
    std::array<bigcomplex, 10> q;
    std::array<err_radius, 10> radius;
};

// position of an even characteristic inside the 10-slot layout
int even_slot(int j);

// squares and normalizes a full theta vector (odd entries ignored)
theta_quotients2 quotients_from_theta(const theta_vec& v);

// The four projective tuples (theta_j^2(gamma_k tau))_{0<=j<=3}, normalized
// to leading entry 1. Squaring the transformation formula kills the
// characteristic-dependent eighth root (epsilon is constant mod 4 across
// j <= 3 here), so each tuple is a constant multiple of squared quotients
// at tau, read off the index maps:
//   k=0: (1, Q1, Q2, Q3)
//   k=1: (1, 1/Q4, Q6/Q4, Q2/Q4)     (image chars pull back to 4,0,6,2)
//   k=2: (1, Q9/Q8, 1/Q8, Q1/Q8)     (image chars pull back to 8,9,0,1)
//   k=3: (1, Q8, Q4, Q12)            (image chars pull back to 0,8,4,12)
struct initial_tuple {
    std::array<bigcomplex, 4> s;
    std::array<err_radius, 4> radius;
};
std::array<initial_tuple, 4> initial_tuples(const theta_quotients2& q);

// Inverse of theta evaluation on the reduction domain: four Borchardt limits
// give 1/theta_0^2(gamma_k tau), then
//   z1 = i L0 / (Q4 L1),  z2 = i L0 / (Q8 L2),  det tau = -L0 / L3,
//   z3^2 = z1 z2 - det tau.
// The sign of z3 is NOT determined by the inputs: z3 -> -z3 multiplies every
// theta constant by a characteristic-dependent sign that squares away, so
// all ten squared quotients are invariant. The returned point is the
// canonical representative with im(z3) >= 0 (re(z3) >= 0 on ties); when
// z3^2 is smaller than its own error the result carries z3 = 0 with an
// enlarged radius. A 64-bit series consistency check guards the pipeline;
// radius lands under 2^-(p - g) with guard g = 24 + ceil(log2 p).
struct recovered_tau {
    tau2 tau;
    err_radius radius;  // entrywise bound, all three entries
};
recovered_tau recover_tau(const theta_quotients2& q, prec_t p);

// Genus-1 analogue from lambda = theta_01^2/theta_00^2 on the fundamental
// domain: tau = i * agm_limit(1, lambda) / agm_limit(1, mu) with
// mu = sqrt(1 - lambda^2) taken re > 0 (valid away from the corner
// |x| = 1/2, |z| = 1 where the margin vanishes).
struct recovered_tau1 {
    tau1 tau;
    err_radius radius;
};
recovered_tau1 recover_tau_g1(const bigcomplex& lambda, const err_radius& lambda_radius, prec_t p);

// Quasi-linear forward evaluation in genus 1: series start at 64 bits, then
// Newton steps on F(lambda) = recover_tau_g1(lambda) - z with doubling
// working precision and a centered finite-difference derivative; the AGM
// limit of the converged quotient recovers theta_00^2. Fails with
// newton_diverged when the residual stops contracting (caller falls back to
// the series evaluator).
theta1_vec theta_g1_newton(const tau1& z, prec_t p);

}  // namespace theta2
