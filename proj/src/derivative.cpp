#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "extrapolation.hpp"
#include "tscale/calculus.hpp"
#include "tscale/corpus.hpp"
#include "tscale/error.hpp"

namespace tscale {
namespace {

std::string describe_sequence(const Tolerances& tol, bool snapped) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "eps_k = %g * 2^-k, k <= %d%s", tol.eps0, tol.max_steps,
                snapped ? ", snapped to T" : "");
  return buf;
}

struct SideLimit {
  double value = 0.0;
  bool converged = false;
  int nodes = 0;
  double gap = INFINITY;
  double threshold = 0.0;
};

// Rounding bound for (b - a) / den when a and b carry relative error ~ulp.
double quotient_noise(double a, double b, double den) {
  return 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b)) / std::abs(den);
}

// Difference quotients (f(s) - f(t)) / (s - t) along scale points s on one
// side of t, each s the scale point nearest t + dir * eps_k within distance eps_k.
SideLimit side_quotient(const ScaleFunction& f, double t, double ft, double dir,
                        const Tolerances& tol) {
  const TimeScale& ts = f.scale();
  detail::ZeroStepExtrapolator ext(tol.limit);
  double eps = tol.eps0;
  for (int k = 0; k <= tol.max_steps; ++k, eps *= 0.5) {
    double x = t + dir * eps;
    auto s = dir > 0 ? ts.floor_point(x) : ts.ceil_point(x);
    if (!s || (dir > 0 ? *s <= t : *s >= t)) continue;
    double fs = f.eval_unchecked(*s);
    double q = (fs - ft) / (*s - t);
    if (ext.add(*s - t, q, quotient_noise(fs, ft, *s - t))) break;
  }
  return {ext.estimate(), ext.converged(), ext.nodes(), ext.gap(), ext.threshold()};
}

}  // namespace

LimitResult hilger_derivative(const ScaleFunction& f, double t, const Tolerances& tol) {
  const TimeScale& ts = f.scale();
  if (!ts.in_kappa(t)) throw Error(Errc::not_in_kappa, "t = " + std::to_string(t));

  double next = ts.sigma(t);
  if (next > t) {
    LimitResult r;
    r.value = (f.eval_unchecked(next) - f.eval_unchecked(t)) / (next - t);
    r.converged = true;
    r.epsilon_sequence = "exact forward quotient";
    return r;
  }

  double ft = f.eval_unchecked(t);
  bool has_right = t < ts.sup();
  bool has_left = t > ts.inf() && ts.rho(t) == t;

  LimitResult r;
  r.epsilon_sequence = describe_sequence(tol, true);
  if (has_right && has_left) {
    SideLimit right = side_quotient(f, t, ft, 1.0, tol);
    SideLimit left = side_quotient(f, t, ft, -1.0, tol);
    r.iterations = right.nodes + left.nodes;
    double spread = std::abs(right.value - left.value);
    r.converged = right.converged && left.converged &&
                  spread < std::max(tol.limit, right.threshold + left.threshold);
    if (r.converged) {
      r.value = 0.5 * (right.value + left.value);
      r.last_delta = std::max(right.gap, left.gap);
    } else {
      r.value = right.value;
      r.last_delta = (right.converged && left.converged) ? spread : std::max(right.gap, left.gap);
    }
    return r;
  }
  SideLimit one = side_quotient(f, t, ft, has_right ? 1.0 : -1.0, tol);
  r.value = one.value;
  r.converged = one.converged;
  r.iterations = one.nodes;
  r.last_delta = one.gap;
  return r;
}

LimitResult rn_derivative(const RealLineFunction& nu, const DeltaMeasure& m, double t,
                          const Tolerances& tol) {
  const TimeScale& ts = m.scale();
  if (!ts.in_kappa(t))
    throw Error(Errc::zero_denominator, "t = " + std::to_string(t) + " lies outside supp(sigma)");

  LimitResult r;
  try {
    double next = ts.sigma(t);
    if (next > t) {
      // Once eps is below the gap the window only gains nu's jump at t.
      r.value = (one_sided_limit(nu, t, Side::right, tol) - one_sided_limit(nu, t, Side::left, tol)) /
                (next - t);
      r.converged = true;
      r.epsilon_sequence = "exact: right-scattered point";
      return r;
    }

    r.epsilon_sequence = describe_sequence(tol, false);
    // Windows reaching past the component holding t see a different
    // quotient, which can be exactly polynomial in eps and fool the
    // extrapolation. The window (t - a eps, t + b eps) stays inside the
    // component; a : b follows the room on each side so that a point close
    // to an edge does not force eps down to where the quotient cancels.
    const Component& c = ts.components()[*ts.component_index(t)];
    double room_left = std::min(t - c.lo, tol.eps0);
    double room_right = std::min(c.hi - t, tol.eps0);
    double span = std::max(room_left, room_right);
    double a = room_left / span;
    double b = room_right / span;

    detail::ZeroStepExtrapolator ext(tol.limit);
    bool any_mass = false;
    double eps = tol.eps0;
    for (int k = 0; k <= tol.max_steps; ++k, eps *= 0.5) {
      if (eps > span) continue;
      double lo = t - a * eps;
      double hi = t + b * eps;
      double den = m.distribution_left(hi) - m.distribution_right(lo);
      if (den <= 0.0) continue;
      any_mass = true;
      double upper = one_sided_limit(nu, hi, Side::left, tol);
      double lower = one_sided_limit(nu, lo, Side::right, tol);
      if (ext.add(eps, (upper - lower) / den, quotient_noise(upper, lower, den))) break;
    }
    if (!any_mass)
      throw Error(Errc::zero_denominator, "no sigma-mass near t = " + std::to_string(t));
    r.value = ext.estimate();
    r.converged = ext.converged();
    r.iterations = ext.nodes();
    r.last_delta = ext.gap();
  } catch (const Error& e) {
    if (e.code() != Errc::no_convergence) throw;
    r.converged = false;
    r.last_delta = INFINITY;
  }
  return r;
}

AgreementReport derivative_agreement(const ScaleFunction& f, const std::vector<double>& points,
                                     const Tolerances& tol) {
  AgreementReport report;
  RealLineFunction bar = extend(f);
  DeltaMeasure m(f.scale());
  for (double t : points) {
    AgreementEntry e;
    e.t = t;
    e.hilger = hilger_derivative(f, t, tol);
    e.rn = rn_derivative(bar, m, t, tol);
    e.deviation = std::abs(e.hilger.value - e.rn.value);
    if (!e.hilger.converged || !e.rn.converged) report.non_converged.push_back(t);
    report.max_deviation = std::max(report.max_deviation, e.deviation);
    report.entries.push_back(std::move(e));
  }
  return report;
}

double counterexample_quotient(int n, double c) {
  if (!(c > 1.0) || !std::isfinite(c))
    throw Error(Errc::invalid_parameter, "c must be a finite constant > 1");
  NamedScale family = builtin("factorial", {{"N", static_cast<double>(n)}});
  ScaleFunction f = paired_function(family);
  double tn = factorial_reciprocals(n).back();
  double bar = extend(f)(c * tn);
  // (bar - f(0)) / (c t_N), divided in two steps so that c < N gives 1/c exactly.
  return (bar - f(0.0)) / tn / c;
}

std::vector<FactorialQuotient> factorial_difference_quotients(int n) {
  NamedScale family = builtin("factorial", {{"N", static_cast<double>(n)}});
  ScaleFunction f = paired_function(family);
  std::vector<double> t = factorial_reciprocals(n);
  std::vector<FactorialQuotient> out;
  double f0 = f(0.0);
  for (int k = 1; k < n; ++k) {
    double tk = t[k - 1];
    out.push_back({k, (f(tk) - f0) / tk, (f(-tk) - f0) / (-tk)});
  }
  return out;
}

}  // namespace tscale
