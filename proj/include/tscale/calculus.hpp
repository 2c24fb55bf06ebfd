#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tscale/measure.hpp"
#include "tscale/timescale.hpp"
#include "tscale/tolerances.hpp"

namespace tscale {

// A real function on a time scale. Evaluation off the scale throws
// Errc::not_in_scale.
//
// `kinks` and `jumps` are smoothness hints: points where the rule may fail
// to be differentiable or continuous. Quadrature splits at both, and the
// extension falls back to numeric one-sided limits next to a jump.
class ScaleFunction {
 public:
  ScaleFunction(TimeScale scale, std::function<double(double)> rule,
                std::vector<double> kinks = {}, std::vector<double> jumps = {});

  const TimeScale& scale() const noexcept { return scale_; }
  const std::vector<double>& kinks() const noexcept { return kinks_; }
  const std::vector<double>& jumps() const noexcept { return jumps_; }
  // kinks and jumps together, sorted.
  std::vector<double> breakpoints() const;
  bool is_breakpoint(double t) const;

  double operator()(double t) const;
  // Skips the membership check; for callers that already know t is in T.
  double eval_unchecked(double t) const { return rule_(t); }

 private:
  TimeScale scale_;
  std::function<double(double)> rule_;
  std::vector<double> kinks_;
  std::vector<double> jumps_;
};

// Value of a limit together with how it was reached.
struct LimitResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  double last_delta = 0.0;
  std::string epsilon_sequence;
};

// f_bar(t) = f(t) on T and f(sigma(t)) off T. One-sided limits are exact,
// f_bar_-(x) = f(sigma_-(x)) and f_bar_+(x) = f(sigma(x)), except next to a
// declared jump where they are computed numerically.
RealLineFunction extend(const ScaleFunction& f);

// Delta integral over [a, b): f(t) mu(t) summed over right-scattered t plus
// Gauss-Legendre quadrature over dense blocks. a, b must be scale points.
double delta_integral(const ScaleFunction& f, double a, double b, const Tolerances& tol = {});

// The same integral computed as the Lebesgue integral of f(rho(s)) over [a, b].
double delta_integral_via_rho(const ScaleFunction& f, double a, double b,
                              const Tolerances& tol = {});

// Hilger derivative at t in T^kappa. Exact forward quotient at
// right-scattered points; at right-dense points the difference quotient is
// taken along scale points on every available side, extrapolated to zero
// step, and the sides must agree. A failed limit comes back with
// converged == false rather than as an exception.
LimitResult hilger_derivative(const ScaleFunction& f, double t, const Tolerances& tol = {});

// Radon-Nikodym derivative d nu / d sigma at t in supp(sigma), as the limit
// of nu(J) / sigma(J) over windows J shrinking to t. At dense points J is
// (t - a e, t + b e) inside t's component, a = b = 1 away from its edges.
// At right-scattered points the
// quotient tends to (nu_+(t) - nu_-(t)) / mu(t), which is returned directly.
// Throws Errc::zero_denominator off the support.
LimitResult rn_derivative(const RealLineFunction& nu, const DeltaMeasure& m, double t,
                          const Tolerances& tol = {});

struct AgreementEntry {
  double t = 0.0;
  LimitResult hilger;
  LimitResult rn;
  double deviation = 0.0;
};

struct AgreementReport {
  std::vector<AgreementEntry> entries;
  double max_deviation = 0.0;
  std::vector<double> non_converged;
};

// Hilger derivative of f against the Radon-Nikodym derivative of its
// extension at each sample point.
AgreementReport derivative_agreement(const ScaleFunction& f, const std::vector<double>& points,
                                     const Tolerances& tol = {});

// (f_bar(c t_N) - f(0)) / (c t_N) for the factorial scale and its paired
// function, t_N = 1/N!. Equals 1/c whenever 1 < c < N.
// Throws Errc::invalid_parameter for c <= 1 or N outside [2, 18].
double counterexample_quotient(int n, double c);

// (f(t_n) - f(0)) / t_n and (f(-t_n) - f(0)) / (-t_n) for n = 1 .. N-1.
struct FactorialQuotient {
  int n = 0;
  double from_right = 0.0;
  double from_left = 0.0;
};
std::vector<FactorialQuotient> factorial_difference_quotients(int n);

}  // namespace tscale
