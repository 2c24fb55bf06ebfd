#include "tscale/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tscale/error.hpp"

namespace tscale {

double one_sided_limit(const RealLineFunction& g, double t, Side side, const Tolerances& tol) {
  if (g.limit) return g.limit(t, side);
  if (g.jumps && std::find(g.jumps->begin(), g.jumps->end(), t) == g.jumps->end()) return g(t);

  double sign = side == Side::left ? -1.0 : 1.0;
  double eps = tol.eps0;
  double prev = g(t + sign * eps);
  for (int k = 1; k <= tol.max_steps; ++k) {
    eps *= 0.5;
    double cur = g(t + sign * eps);
    if (std::abs(cur - prev) < tol.limit) return cur;
    prev = cur;
  }
  throw Error(Errc::no_convergence, std::string("one-sided limit at ") + std::to_string(t) +
                                        (side == Side::left ? " from the left" : " from the right"));
}

BorelSet BorelSet::normalized() const {
  std::vector<BorelPiece> pieces;
  for (const auto& p : pieces_) {
    if (std::isnan(p.lo) || std::isnan(p.hi) || p.lo > p.hi)
      throw Error(Errc::invalid_interval,
                  "piece [" + std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]");
    if (!p.empty()) pieces.push_back(p);
  }
  std::sort(pieces.begin(), pieces.end(), [](const BorelPiece& x, const BorelPiece& y) {
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.lo_closed && !y.lo_closed;
  });

  std::vector<BorelPiece> out;
  for (const auto& p : pieces) {
    if (!out.empty()) {
      BorelPiece& cur = out.back();
      bool joins = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
      if (joins) {
        if (p.lo == cur.lo) cur.lo_closed = cur.lo_closed || p.lo_closed;
        if (p.hi > cur.hi) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        } else if (p.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  return BorelSet(std::move(out));
}

double DeltaMeasure::distribution_left(double x) const noexcept {
  return scale_.contains(x) ? x : scale_.sigma(x);
}

RealLineFunction distribution_function(const DeltaMeasure& m) {
  RealLineFunction g;
  g.eval = [m](double x) { return m.distribution_right(x); };
  g.limit = [m](double x, Side side) {
    return side == Side::left ? m.distribution_left(x) : m.distribution_right(x);
  };
  g.jumps = m.scale().right_scattered_in(-std::numeric_limits<double>::infinity(),
                                         std::numeric_limits<double>::infinity());
  return g;
}

double measure_interval(const DeltaMeasure& m, double a, double b, bool left_closed,
                        bool right_closed) {
  if (!std::isfinite(a) || !std::isfinite(b) || a > b)
    throw Error(Errc::invalid_interval, "[" + std::to_string(a) + ", " + std::to_string(b) + "]");
  if (a == b) {
    if (!(left_closed && right_closed)) return 0.0;
    return m.distribution_right(a) - m.distribution_left(a);
  }
  double lower = left_closed ? m.distribution_left(a) : m.distribution_right(a);
  double upper = right_closed ? m.distribution_right(b) : m.distribution_left(b);
  return upper - lower;
}

double measure_set(const DeltaMeasure& m, const BorelSet& set) {
  double total = 0.0;
  BorelSet norm = set.normalized();
  for (const auto& p : norm.pieces())
    total += measure_interval(m, p.lo, p.hi, p.lo_closed, p.hi_closed);
  return total;
}

double point_mass(const DeltaMeasure& m, double t) { return m.scale().mu(t); }

TimeScale support_check(const DeltaMeasure& m) { return m.scale().kappa(); }

}  // namespace tscale
