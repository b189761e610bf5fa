#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "theta2/siegel.hpp"
#include "theta2/theta.hpp"

namespace theta2 {

// One good-position verdict for theta_0..theta_3(2^n gamma_k tau).
enum class sample_verdict { pass, fail, uncertifiable };

struct sample_report {
    tau2 tau;          // base point
    int k = 0;         // base-change index 0..3
    long n = 0;        // doubling exponent
    double span = 0;   // certified upper bound on the angular span (radians)
    sample_verdict verdict = sample_verdict::uncertifiable;
    bool closed_form = false;  // evaluated through a tau_k^(n) route
    prec_t prec_used = 0;      // precision of the final attempt
};

// A reproduced numeric claim. Claims of the shape "computed < claimed" store
// margin = claimed - computed with outward rounding; "lhs >= rhs" claims are
// recast as rhs < lhs, so a positive margin always means the claim holds.
struct threshold_check {
    std::string name;
    double claimed_bound = 0;
    double computed_value = 0;
    double margin = 0;
    bool pass = false;
};

// Smallest n* such that scaling alone certifies good position of
// theta_0..theta_3(2^n gamma_k tau) for every n >= n*: the r lower bound at
// gamma_1/gamma_2 (resp. the lambda_1 bound at gamma_3) doubles with n until
// it clears the 0.4 (resp. 0.6) criterion threshold; k = 0 gives 0 since
// r(tau) >= sqrt(3)/4 already. Requires tau in the reduction domain.
long n_cutoff(const tau2& t, int k);

// Candidate evaluation routes for the tuple theta_0..theta_3(2^n gamma_k tau):
// always the direct point 2^n gamma_k tau with identity indices, plus the
// tau_k^(n) closed forms with their index maps (two for k = 3). The maps give
// the same projective tuple, so angular spans agree.
struct eval_route {
    tau2 point;
    std::array<int, 4> js;
    bool closed_form = false;
};
std::vector<eval_route> candidate_routes(const tau2& t, int k, long n);

// Evaluates every (k, n) pair with n below the scaling cutoff (n = 0 is
// always included) at the route with the largest lambda_1, retrying once at
// doubled precision when the radii spoil the verdict. Points outside the
// reduction domain are processed best-effort: verdicts there are informative
// rather than meaningful.
std::vector<sample_report> verify_point(const tau2& t, prec_t p);

// Reproduces every numeric threshold behind the quarter-plane theorem:
// regime angle sums, good-position envelopes, n-range conversions, and the
// regime-coverage overlaps, each evaluated with outward rounding. Failures
// are reported, not thrown.
std::vector<threshold_check> verify_constants();

struct sweep_config {
    unsigned long samples = 1000;
    std::uint64_t seed = 1;
    prec_t prec = 128;
    double ymax = 1024.0;
    bool corners = true;  // prepend the fixed boundary battery
};

// Aggregate of a randomized verify_point campaign. Minima are over the
// certified margins pi/2 - span; entries stay at +infinity writeback value
// 9e99 when no report hit that cell.
struct sweep_summary {
    unsigned long points = 0;
    unsigned long reports = 0;
    unsigned long failures = 0;
    unsigned long uncertifiable = 0;
    double min_margin = 9e99;
    // [k][0]: direct route, [k][1]: closed-form route
    std::array<std::array<double, 2>, 4> min_margin_k{
        {{9e99, 9e99}, {9e99, 9e99}, {9e99, 9e99}, {9e99, 9e99}}};
    std::array<std::array<unsigned long, 2>, 4> count_k{};
    std::string worst;  // "k=.. n=.. tau=.." of the minimum (diagnostics)
};

// Deterministic sampler over the reduction domain: x_j uniform in
// [-1/2, 1/2], y1 log-uniform in [sqrt(3)/2, ymax], y2 log-uniform in
// [y1, ymax], y3 uniform in [-y1/2, y1/2], resampling while |z_1| < 1 or
// |z_2| < 1. Same seed, same summary, byte for byte.
sweep_summary sweep(const sweep_config& cfg);

// Report writers shared by the command-line tool and the tests. The text
// form is line-oriented (one check or statistic per line); the JSON form
// carries {"checks":[{name, margin, pass}...], "samples":{count, failures,
// uncertifiable, min_margin}}. Pass summary = nullptr for constants-only.
std::string report_text(const std::vector<threshold_check>& checks, const sweep_summary* summary);
std::string report_json(const std::vector<threshold_check>& checks, const sweep_summary* summary);

}  // namespace theta2
