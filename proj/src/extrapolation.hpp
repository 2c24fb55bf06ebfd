#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tscale::detail {

// Polynomial extrapolation of q(h) to h = 0 from the most recent nodes
// (Neville's scheme), with a Cauchy test on successive estimates once
// at least three nodes are in.
//
// Each node may carry a bound on its rounding error. The Cauchy threshold is
// then max(tol, twice the bound propagated through the Neville weights), so a
// limit that has reached the rounding floor of its quotients is accepted
// instead of being chased into ever smaller, noisier steps.
class ZeroStepExtrapolator {
 public:
  explicit ZeroStepExtrapolator(double tol, std::size_t window = 4) : tol_(tol), window_(window) {}

  // Returns true once two consecutive estimates pass the Cauchy test.
  bool add(double h, double q, double noise = 0.0) {
    if (converged_) return true;
    if (!std::isfinite(q) || h == 0.0) return false;
    if (!h_.empty() && h == h_.back()) return false;
    h_.push_back(h);
    q_.push_back(q);
    noise_.push_back(std::isfinite(noise) ? noise : std::numeric_limits<double>::infinity());

    std::size_t m = std::min(window_, h_.size());
    std::size_t first = h_.size() - m;
    std::vector<double> p(q_.begin() + first, q_.end());
    for (std::size_t level = 1; level < m; ++level) {
      for (std::size_t i = 0; i + level < m; ++i) {
        double hi = h_[first + i];
        double hj = h_[first + i + level];
        p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
      }
    }
    // Lagrange weights at 0 bound how the node noise reaches the estimate.
    double spread = 0.0;
    for (std::size_t i = first; i < h_.size(); ++i) {
      double w = 1.0;
      for (std::size_t j = first; j < h_.size(); ++j)
        if (j != i) w *= h_[j] / (h_[j] - h_[i]);
      spread += std::abs(w) * noise_[i];
    }
    double next = p[0];
    if (h_.size() >= 3) {
      gap_ = std::abs(next - estimate_);
      threshold_ = std::max(tol_, 2.0 * (spread + last_spread_));
      converged_ = std::isfinite(gap_) && gap_ < threshold_;
      if (converged_ || gap_ < best_gap_) {
        best_gap_ = gap_;
        best_ = next;
      }
    }
    estimate_ = next;
    last_spread_ = spread;
    return converged_;
  }

  // The converged estimate, or the one with the smallest Cauchy gap so far.
  double estimate() const noexcept { return converged_ || !std::isfinite(best_gap_) ? estimate_ : best_; }
  double gap() const noexcept { return converged_ ? gap_ : best_gap_; }
  // Cauchy threshold in force at the last step.
  double threshold() const noexcept { return threshold_; }
  bool converged() const noexcept { return converged_; }
  int nodes() const noexcept { return static_cast<int>(h_.size()); }

 private:
  double tol_;
  std::size_t window_;
  std::vector<double> h_;
  std::vector<double> q_;
  std::vector<double> noise_;
  double estimate_ = 0.0;
  double best_ = 0.0;
  double gap_ = INFINITY;
  double best_gap_ = INFINITY;
  double threshold_ = 0.0;
  double last_spread_ = 0.0;
  bool converged_ = false;
};

}  // namespace tscale::detail
