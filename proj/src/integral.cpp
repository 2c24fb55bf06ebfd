#include <string>

#include "tscale/calculus.hpp"
#include "tscale/error.hpp"
#include "tscale/quadrature.hpp"

namespace tscale {
namespace {

void check_bounds(const ScaleFunction& f, double a, double b) {
  const TimeScale& ts = f.scale();
  if (!ts.contains(a)) throw Error(Errc::not_in_scale, "lower bound " + std::to_string(a));
  if (!ts.contains(b)) throw Error(Errc::not_in_scale, "upper bound " + std::to_string(b));
  if (a > b)
    throw Error(Errc::invalid_interval, "[" + std::to_string(a) + ", " + std::to_string(b) + ")");
}

}  // namespace

double delta_integral(const ScaleFunction& f, double a, double b, const Tolerances& tol) {
  check_bounds(f, a, b);
  const TimeScale& ts = f.scale();
  auto comps = ts.components();
  std::size_t first = *ts.component_index(a);
  std::size_t last = *ts.component_index(b);
  std::vector<double> cuts = f.breakpoints();
  auto rule = [&f](double t) { return f.eval_unchecked(t); };

  // Positional order: the dense part of each component, then the point
  // mass mu = next.lo - hi sitting at its right-scattered maximum.
  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const Component& c = comps[i];
    double lo = std::max(c.lo, a);
    double hi = std::min(c.hi, b);
    if (lo < hi) sum += integrate(rule, lo, hi, cuts, tol);
    if (i < last) sum += f.eval_unchecked(c.hi) * (comps[i + 1].lo - c.hi);
  }
  return sum;
}

double delta_integral_via_rho(const ScaleFunction& f, double a, double b, const Tolerances& tol) {
  check_bounds(f, a, b);
  const TimeScale& ts = f.scale();
  std::vector<double> cuts = f.breakpoints();
  auto composed = [&](double s) { return f.eval_unchecked(ts.rho(s)); };

  double sum = 0.0;
  double x = a;
  while (x < b) {
    double next = ts.sigma(x);
    if (next > x) {
      // rho is constant on (x, sigma(x)] and equal to x there.
      sum += f.eval_unchecked(ts.rho(next)) * (next - x);
      x = next;
    } else {
      double end = std::min(ts.components()[*ts.component_index(x)].hi, b);
      sum += integrate(composed, x, end, cuts, tol);
      x = end;
    }
  }
  return sum;
}

}  // namespace tscale
