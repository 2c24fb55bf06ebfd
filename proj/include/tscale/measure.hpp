#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tscale/timescale.hpp"
#include "tscale/tolerances.hpp"

namespace tscale {

enum class Side { left, right };

// A function on R that is locally of bounded variation, so both one-sided
// limits exist everywhere. `limit`, when present, returns g_-(t) / g_+(t)
// exactly from known structure. Otherwise limits are computed numerically,
// except at points outside a declared jump set, where g is continuous and
// the limit is just g(t).
struct RealLineFunction {
  std::function<double(double)> eval;
  std::function<double(double, Side)> limit;
  std::optional<std::vector<double>> jumps;

  double operator()(double t) const { return eval(t); }
};

// g_-(t) or g_+(t). The numeric path samples g(t -/+ eps_k) with
// eps_k = eps0 * 2^-k, k <= max_steps, and stops at the first Cauchy gap
// below tol.limit. Throws Errc::no_convergence otherwise.
double one_sided_limit(const RealLineFunction& g, double t, Side side, const Tolerances& tol = {});

// One piece of a finite Borel set: an interval with independent endpoint
// inclusion flags. A closed piece with lo == hi is a singleton.
struct BorelPiece {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static BorelPiece point(double t) { return {t, t, true, true}; }
  bool empty() const noexcept { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool operator==(const BorelPiece&) const = default;
};

class BorelSet {
 public:
  BorelSet() = default;
  explicit BorelSet(std::vector<BorelPiece> pieces) : pieces_(std::move(pieces)) {}

  BorelSet& add(BorelPiece piece) {
    pieces_.push_back(piece);
    return *this;
  }
  const std::vector<BorelPiece>& pieces() const noexcept { return pieces_; }

  // Disjoint, sorted, non-touching pieces covering the same set.
  // Throws Errc::invalid_interval for a piece with lo > hi or NaN bounds.
  BorelSet normalized() const;

 private:
  std::vector<BorelPiece> pieces_;
};

// The Lebesgue-Stieltjes measure whose distribution function is sigma.
class DeltaMeasure {
 public:
  explicit DeltaMeasure(TimeScale scale) : scale_(std::move(scale)) {}

  const TimeScale& scale() const noexcept { return scale_; }

  // sigma_-(x): the smallest scale point >= x, or sup T past the maximum.
  double distribution_left(double x) const noexcept;
  // sigma_+(x) = sigma(x); sigma is right continuous.
  double distribution_right(double x) const noexcept { return scale_.sigma(x); }

 private:
  TimeScale scale_;
};

// The distribution function sigma as a RealLineFunction with exact
// one-sided limits and its jump set (the right-scattered points).
RealLineFunction distribution_function(const DeltaMeasure& m);

// Measure of an interval from the four-case distribution formula.
// Throws Errc::invalid_interval when a > b or a bound is not finite.
double measure_interval(const DeltaMeasure& m, double a, double b, bool left_closed,
                        bool right_closed);
// Sum of measure_interval over the normalized pieces.
double measure_set(const DeltaMeasure& m, const BorelSet& set);
// sigma({t}) = mu(t); throws Errc::not_in_scale off the scale.
double point_mass(const DeltaMeasure& m, double t);

// lambda(rho^{-1}(A)) with lambda restricted to (inf T, sup T]: the same
// measure computed as an image of Lebesgue measure under rho, without going
// through the distribution function.
double preimage_measure(const DeltaMeasure& m, const BorelSet& set);

// supp(sigma) = T^kappa.
TimeScale support_check(const DeltaMeasure& m);

}  // namespace tscale
