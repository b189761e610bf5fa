#pragma once

#include <stdexcept>
#include <string>

namespace theta2 {

enum class errc {
    parse_error,
    domain_error,          // input outside the admissible domain (lambda1 floor, F' checks, ...)
    ambiguous_roots,       // sign decision margin smaller than the error bound
    not_in_good_position,  // chosen roots fail the quarter-plane certificate
    no_convergence,        // iteration cap hit
    newton_diverged,
    sign_resolution_failed,
    calibration_failed,    // eighth-root snap of a cocycle constant did not verify
    internal_error,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace theta2
