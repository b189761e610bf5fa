#pragma once

#include <array>

#include "theta2/numerics.hpp"

namespace theta2 {

// One Borchardt iterate: the 4-tuple s indexed by b in (Z/2Z)^2, with
// certified radii, plus the square roots chosen on the way here (t_b^2
// equals the previous s_b up to rounding, and {t_b} passed the
// quarter-plane certificate).
struct borchardt_state {
    std::array<bigcomplex, 4> s;
    std::array<err_radius, 4> radius;
    std::array<bigcomplex, 4> t;
    std::array<err_radius, 4> t_radius;
    bool has_roots = false;
    unsigned long steps = 0;
};

borchardt_state make_borchardt_state(std::array<bigcomplex, 4> s, std::array<err_radius, 4> r);

// Square roots in good position: t_0 is the principal root of s_0 and each
// t_b for b != 0 is the root of s_b with re(t_b conj(t_0)) > 0. The sign
// decision must clear the combined error margin (ambiguous_roots otherwise:
// raise precision) and the resulting tuple must pass the quarter-plane
// certificate (not_in_good_position otherwise: the input is off every theta
// orbit, or the base point was not reduced). A global sign flip of all four
// roots leaves every later iterate unchanged.
std::array<bigcomplex, 4> good_roots(const std::array<bigcomplex, 4>& s,
                                     const std::array<err_radius, 4>& radius,
                                     std::array<err_radius, 4>* root_radius = nullptr);

// s_b' = (1/4) sum_{b1 + b2 = b} t_{b1} t_{b2}, the convolution square over
// (Z/2Z)^2 of the chosen roots.
borchardt_state borchardt_step(const borchardt_state& st);

struct limit_result {
    bigcomplex value;
    err_radius radius;
    unsigned long steps = 0;
};

// Iterates until the four components agree within 2^-(p+4) and two
// successive iterates agree within 2^-(p+4); the returned radius combines
// the propagated input radii with the remaining quadratic-regime drift (it
// lands under 2^-p whenever the inputs carry radii well under 2^-(p-2) and
// the tuple is normalized near 1, as every caller here does). Iteration cap
// 4 (log2 p + 64), no_convergence beyond it.
limit_result borchardt_limit(const std::array<bigcomplex, 4>& s0,
                             const std::array<err_radius, 4>& radius, prec_t p);

// Genus-1 specialization on pairs: (x, y) -> ((x+y)/2, sqrt(x) sqrt(y)) with
// the root of y sign-matched to the root of x.
struct agm_state {
    std::array<bigcomplex, 2> s;
    std::array<err_radius, 2> radius;
    std::array<bigcomplex, 2> t;
    std::array<err_radius, 2> t_radius;
    bool has_roots = false;
    unsigned long steps = 0;
};

agm_state make_agm_state(std::array<bigcomplex, 2> s, std::array<err_radius, 2> r);
std::array<bigcomplex, 2> agm_good_roots(const std::array<bigcomplex, 2>& s,
                                         const std::array<err_radius, 2>& radius,
                                         std::array<err_radius, 2>* root_radius = nullptr);
agm_state agm_step(const agm_state& st);
limit_result agm_limit(const std::array<bigcomplex, 2>& s0, const std::array<err_radius, 2>& radius,
                       prec_t p);

}  // namespace theta2
