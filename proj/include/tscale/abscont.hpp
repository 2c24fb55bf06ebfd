#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tscale/calculus.hpp"
#include "tscale/tolerances.hpp"

namespace tscale {

// Half-open subintervals [a_k, b_k) of the scale, a_k and b_k scale points.
using IntervalFamily = std::vector<std::pair<double, double>>;

double family_length(const IntervalFamily& family);
double family_variation(const ScaleFunction& f, const IntervalFamily& family);

struct DeltaTrial {
  double delta = 0.0;  // length budget: total length < delta
  IntervalFamily worst_family;
  double worst_sum = 0.0;
};

struct Witness {
  double epsilon = 0.0;
  double delta = 0.0;
  IntervalFamily family;
  double sum = 0.0;
};

enum class Verdict { consistent, violated };

// Outcome of the epsilon-delta search. `consistent` means no violation was
// found, which is evidence rather than proof; `violated` always carries a
// witness family that can be re-checked with family_variation.
struct ACReport {
  std::vector<DeltaTrial> epsilon_delta_trials;
  std::optional<double> ftc_max_residual;
  Verdict verdict = Verdict::consistent;
  std::optional<Witness> witness;
  std::vector<double> epsilons;
};

// Searches for families violating delta absolute continuity on [a, b]_T.
// Every length budget delta_j = (b - a) 10^-j, j = 1..10, gets `trials`
// random families plus the intervals produced by bisecting towards the
// steepest variation on a coarse scan. f is reported as violated at epsilon
// when every budget admits a family with variation >= epsilon.
ACReport check_delta_ac(const ScaleFunction& f, double a, double b, int trials,
                        std::uint64_t seed, const Tolerances& tol = {});

// x -> f_a + delta_integral(fdelta, a, x), defined for scale points x >= a.
ScaleFunction ftc_reconstruct(const ScaleFunction& fdelta, double a, double f_a,
                              const Tolerances& tol = {});

struct FtcResult {
  double max_residual = 0.0;
  std::vector<double> samples;
  // Dense breakpoints where the derivative limit failed; sigma-null.
  std::vector<double> skipped;
};

// Max over sample points x of |f(x) - f(a) - int_[a,x) f^Delta dsigma|.
// Samples are the right-scattered points, declared breakpoints and uniform
// draws from the dense blocks of [a, b), plus b. Left-scattered right-dense
// points are never used for derivative sampling. A failed derivative limit
// at a uniformly drawn dense point throws Errc::non_converged_derivative.
FtcResult verify_ftc(const ScaleFunction& f, double a, double b, int sample_count,
                     std::uint64_t seed = 0, const Tolerances& tol = {});

// (1/e) int_{x-e}^{x+e} |g(t) - g(x)| dt for each e in the ladder.
std::vector<double> lebesgue_point_average(const std::function<double(double)>& g, double x,
                                           const std::vector<double>& eps_ladder,
                                           std::span<const double> breakpoints = {},
                                           const Tolerances& tol = {});

struct EquivalenceReport {
  ACReport delta_side;
  bool delta_ac = false;
  bool left_continuous = true;
  std::vector<double> left_discontinuities;
  double measure_residual = 0.0;
  bool measure_ac = false;
  double max_derivative_gap = 0.0;
  bool agree = false;
};

struct EquivalenceOptions {
  int trials = 2000;
  std::uint64_t seed = 0;
  int samples = 48;
  double residual_tol = 1e-7;
  double continuity_tol = 1e-9;
};

// Both sides of the absolute-continuity equivalence: the epsilon-delta
// verdict against left continuity of f_bar plus
// f_bar_-(x) - f_bar_-(a) = int_[a,x) (d f_bar / d sigma) d sigma.
EquivalenceReport check_ac_equivalence(const ScaleFunction& f, double a, double b,
                                       const EquivalenceOptions& opts = {},
                                       const Tolerances& tol = {});

}  // namespace tscale
