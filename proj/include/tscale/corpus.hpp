#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tscale/calculus.hpp"
#include "tscale/timescale.hpp"

namespace tscale {

using ParamMap = std::map<std::string, double, std::less<>>;

// A named family of time scales with its parameters bound.
//
//   reals          [lo, hi]                                  lo = 0, hi = 1
//   h_integers     {k h : lo <= k h <= hi}                   h = 1, lo = 0, hi = 10
//   q_scale        {q^k : 0 <= k <= N}, plus 0 if zero != 0  q = 0.5, N = 10, zero = 1
//   mixed          [0,1] u {2} u {3} u [4,5]
//   cantor_approx  n-th stage of the middle-thirds construction on [0,1], n = 3
//   factorial      {0} u {+-1/n! : 1 <= n <= N}               N = 12
//
// At finite N the accumulation point 0 of q_scale and factorial is
// right-scattered; on the infinite scales it would be right-dense.
class NamedScale {
 public:
  NamedScale(std::string name, ParamMap params) : name_(std::move(name)), params_(std::move(params)) {}

  const std::string& name() const noexcept { return name_; }
  const ParamMap& params() const noexcept { return params_; }
  double param(std::string_view key) const;

  TimeScale materialize() const;
  // The family restricted to [lo, hi]; lattice families are generated on
  // the window directly, so growing the window only adds points.
  TimeScale materialize(double lo, double hi) const;

  bool has_paired_function() const noexcept { return name_ == "factorial"; }

 private:
  std::string name_;
  ParamMap params_;
};

// Missing parameters take the defaults listed above; parameters the family
// does not use are ignored. Throws Errc::unknown_scale or
// Errc::invalid_parameter.
NamedScale builtin(std::string_view name, const ParamMap& params = {});

// The function paired with a family: for `factorial`,
// f(0) = 0 and f(+-1/n!) = +-1/(n+1)!. Throws Errc::no_paired_function.
ScaleFunction paired_function(const NamedScale& family);

// 1/n! for n = 1 .. count, by repeated division.
std::vector<double> factorial_reciprocals(int count);

struct ParamSpec {
  std::string name;
  double default_value;
  std::string constraint;
};

struct FamilyInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
};

std::vector<FamilyInfo> families();

// Built-in test functions:
//   const (value = 1), identity, square, cube, sqrt,
//   abs_shift |t - at| + t, step [t >= at], step_after [t > at],
//   example_factorial (the factorial family's paired function).
// `at` defaults to 0.5. Throws Errc::unknown_function.
ScaleFunction make_function(std::string_view id, const TimeScale& scale, const ParamMap& params = {});
std::vector<std::string> function_ids();

// Midpoint of the first dense block; a convenient spot for discontinuities
// that must sit at a dense point. Throws Errc::invalid_parameter for purely
// discrete scales.
double dense_probe(const TimeScale& scale);

}  // namespace tscale
