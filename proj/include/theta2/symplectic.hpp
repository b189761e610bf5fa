#pragma once

#include <array>
#include <cstdint>

#include "theta2/siegel.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// 4x4 integer symplectic matrix, row-major, block layout [[A, B], [C, D]]
// with A = rows 0..1 / cols 0..1, B = rows 0..1 / cols 2..3, and so on.
struct sympmat {
    std::array<std::int64_t, 16> m{};

    std::int64_t& at(int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
    std::int64_t at(int r, int c) const { return m[static_cast<std::size_t>(4 * r + c)]; }

    static sympmat identity();

    // g^t J g == J over the integers (equivalently A^t C and B^t D symmetric,
    // A^t D - C^t B = I)
    bool is_symplectic() const;

    sympmat operator*(const sympmat& o) const;  // overflow-checked
    sympmat inverse() const;                    // [[D^t, -B^t], [-C^t, A^t]]

    bool operator==(const sympmat& o) const = default;
};

// gamma(0) = I4; gamma(k) = [[-I, -S_k], [S_k, -I + S_k^2]] for k in 1..3,
// with S_1 = [[1,0],[0,0]], S_2 = [[0,0],[0,1]], S_3 = [[0,1],[1,0]].
sympmat gamma(int k);

// eta(k, n) for k in 1..4, n in [0, 62]; eta(4, n) is built as the fixed
// rotation factor times eta(3, n) rather than transcribed.
sympmat eta(int k, long n);

// Characteristic (a, b) with bit entries; index j = b0 + 2 b1 + 4 a0 + 8 a1.
struct theta_char {
    int a0 = 0, a1 = 0, b0 = 0, b1 = 0;

    static theta_char from_index(int j);
    int index() const { return b0 + 2 * b1 + 4 * a0 + 8 * a1; }
    bool odd() const { return ((a0 & b0) ^ (a1 & b1)) != 0; }
};

// Character bookkeeping of the transformation formula:
//   theta_{a,b}(g tau) = kappa(g) zeta8^epsilon det(C tau + D)^{1/2} theta_{a',b'}(tau)
// where (alpha; beta) = g^t (a - diag(C D^t); b - diag(A B^t)) over the
// integers, (a', b') = (alpha, beta) mod 2, and epsilon is the integer
// combination 2 (B alpha)^t (C beta) - (D alpha)^t (B alpha)
// - (C beta)^t (A beta) + 2 diag(A B^t)^t (D alpha - C beta), reduced mod 8.
struct transform_data {
    theta_char target;  // (a', b')
    int epsilon = 0;    // in [0, 8)
};

transform_data transform_char(const sympmat& g, const theta_char& ch);

// (A tau + B)(C tau + D)^{-1}, symmetrized by averaging the off-diagonal
// entries; fails with domain_error when the image's imaginary part is not
// positive definite.
tau2 act(const sympmat& g, const tau2& t);

// det(C tau + D)
bigcomplex cocycle(const sympmat& g, const tau2& t);

// 2^n * act(g, tau), exact scaling
tau2 act_scaled(const sympmat& g, const tau2& t, long n);

// Closed forms for the conjugated points:
//   k=1: [[2^{-n} z1, z3], [z3, 2^n z2]]
//   k=2: [[2^n z1, z3], [z3, 2^{-n} z2]]
//   k=3: 2^{-n} tau
//   k=4: [[-2^n/z1, -z3/z1], [-z3/z1, 2^{-n}(z2 - z3^2/z1)]]
// These equal act(eta(k, n), act(gamma(k<=2 ? k : 3), tau).scale(n)).
tau2 tau_kn(const tau2& t, int k, long n);

// Certified check, at the k=4 image of a reduced point, of
//   |y3| <= (3/2^(n+2)) y1,   y3^2 <= (3/7) y1 y2,   |x2| <= 9/2^(n+3),
// all evaluated with outward rounding on tau_kn(t, 4, n).
bool tau4_bounds_check(const tau2& t, long n);

// Eighth-root index of kappa(g) under the principal branch of det^{1/2},
// calibrated numerically at a reference point and cached (thread-safe).
// Characteristics whose reference theta value is tiny are skipped; fails
// with calibration_failed if no characteristic snaps consistently.
int kappa_for(const sympmat& g);

// Theta values at act(g, t) from values at t, radii propagated through the
// |det(C tau + D)|^{1/2} scaling. Away from the calibration point the global
// phase depends on the principal-branch choice; quotients do not.
theta_vec theta_transform(const sympmat& g, const tau2& t, const theta_vec& v);

}  // namespace theta2
