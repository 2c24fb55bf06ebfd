#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tscale {

enum class Errc {
  empty_scale,
  invalid_component,
  not_in_scale,
  not_in_kappa,
  invalid_interval,
  invalid_parameter,
  no_convergence,
  quadrature_failure,
  zero_denominator,
  non_converged_derivative,
  unknown_scale,
  unknown_function,
  no_paired_function,
  parse_error,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tscale
