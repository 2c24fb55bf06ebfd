#include "tscale/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "tscale/error.hpp"

namespace tscale {
namespace {

constexpr int kOrder = 10;

struct Rule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

// Roots of P_n by Newton iteration from the Chebyshev-like initial guesses.
Rule make_rule() {
  Rule rule;
  for (int i = 0; i < kOrder; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const Rule& r = rule();
  double half = 0.5 * (b - a);
  double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kOrder; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * sum;
}

struct Adaptive {
  const std::function<double(double)>& f;
  double total_width;
  const Tolerances& tol;

  double run(double a, double b, double whole, int depth) const {
    double m = 0.5 * (a + b);
    double left = panel(f, a, m);
    double right = panel(f, m, b);
    double refined = left + right;
    double allowed = tol.quad * (b - a) / total_width;
    double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(refined);
    if (std::abs(refined - whole) <= std::max(allowed, noise)) return refined;
    if (depth >= tol.max_depth || !(a < m && m < b))
      throw Error(Errc::quadrature_failure,
                  "no convergence on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    return run(a, m, left, depth + 1) + run(m, b, right, depth + 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, const Tolerances& tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, breakpoints, tol);

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (a < p && p < b) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);

  Adaptive adaptive{f, b - a, tol};
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i];
    double hi = cuts[i + 1];
    sum += adaptive.run(lo, hi, panel(f, lo, hi), 0);
  }
  return sum;
}

}  // namespace tscale
