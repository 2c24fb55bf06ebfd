#include "tscale/abscont.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tscale/error.hpp"
#include "tscale/quadrature.hpp"
#include "tscale/random.hpp"

namespace tscale {
namespace {

constexpr int kDeltaLevels = 10;
constexpr int kMaxFamilySize = 8;
constexpr int kZoomSeeds = 8;
constexpr int kScanPoints = 1024;

void check_window(const TimeScale& ts, double a, double b) {
  if (!ts.contains(a)) throw Error(Errc::not_in_scale, "a = " + std::to_string(a));
  if (!ts.contains(b)) throw Error(Errc::not_in_scale, "b = " + std::to_string(b));
  if (!(a < b))
    throw Error(Errc::invalid_interval, "[" + std::to_string(a) + ", " + std::to_string(b) + "]");
}

double dense_length(const std::vector<std::pair<double, double>>& blocks) {
  double total = 0.0;
  for (auto [lo, hi] : blocks) total += hi - lo;
  return total;
}

// Uniform draw from the union of dense blocks, weighted by length.
double draw_dense(std::mt19937_64& rng, const std::vector<std::pair<double, double>>& blocks,
                  double total) {
  double u = uniform(rng, 0.0, total);
  for (auto [lo, hi] : blocks) {
    if (u < hi - lo) return lo + u;
    u -= hi - lo;
  }
  return blocks.back().second;
}

// Component endpoints inside [a, b], plus a and b.
std::vector<double> discrete_anchors(const TimeScale& ts, double a, double b) {
  std::vector<double> out{a, b};
  for (const auto& c : ts.components()) {
    if (c.lo >= a && c.lo <= b) out.push_back(c.lo);
    if (c.hi >= a && c.hi <= b) out.push_back(c.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool left_scattered_right_dense(const TimeScale& ts, double t) {
  return ts.rho(t) < t && ts.sigma(t) == t && t < ts.sup();
}

// Points of [a, b) where derivatives are sampled: right-scattered points,
// declared breakpoints on the scale, and `draws` uniform dense points.
struct DerivativeSamples {
  std::vector<double> points;
  std::vector<bool> drawn;
};

DerivativeSamples derivative_samples(const ScaleFunction& f, double a, double b, int draws,
                                     std::mt19937_64& rng) {
  const TimeScale& ts = f.scale();
  DerivativeSamples s;
  for (double t : ts.right_scattered_in(a, b)) {
    s.points.push_back(t);
    s.drawn.push_back(false);
  }
  for (double t : f.breakpoints()) {
    if (t >= a && t < b && ts.contains(t)) {
      s.points.push_back(t);
      s.drawn.push_back(false);
    }
  }
  auto blocks = ts.dense_blocks_in(a, b);
  double total = dense_length(blocks);
  if (total > 0.0) {
    for (int i = 0; i < draws; ++i) {
      double t = draw_dense(rng, blocks, total);
      if (t >= b) continue;
      s.points.push_back(t);
      s.drawn.push_back(true);
    }
  }
  return s;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Scored {
  IntervalFamily family;
  double sum = 0.0;
};

// Bisects towards the half carrying more variation, starting from the
// steepest steps of a coarse scan of [a, b]_T. Each visited interval is a
// one-element candidate family.
std::vector<Scored> zoom_candidates(const ScaleFunction& f, double a, double b, double min_length) {
  const TimeScale& ts = f.scale();
  std::vector<double> grid = discrete_anchors(ts, a, b);
  for (double t : f.breakpoints())
    if (t >= a && t <= b && ts.contains(t)) grid.push_back(t);
  auto blocks = ts.dense_blocks_in(a, b);
  double total = dense_length(blocks);
  for (auto [lo, hi] : blocks) {
    int n = 2 + static_cast<int>(kScanPoints * (hi - lo) / total);
    for (int i = 0; i <= n; ++i) grid.push_back(lo + (hi - lo) * i / n);
  }
  grid = sorted_unique(std::move(grid));

  std::vector<std::pair<double, std::size_t>> steps;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    steps.emplace_back(std::abs(f(grid[i + 1]) - f(grid[i])), i);
  std::stable_sort(steps.begin(), steps.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  if (steps.size() > kZoomSeeds) steps.resize(kZoomSeeds);

  std::vector<Scored> out;
  for (auto [var, idx] : steps) {
    double u = grid[idx];
    double v = grid[idx + 1];
    double fu = f(u);
    double fv = f(v);
    for (int iter = 0; iter < 400; ++iter) {
      out.push_back({{{u, v}}, std::abs(fv - fu)});
      if (v - u < min_length) break;
      double m = 0.5 * (u + v);
      double mid = m;
      if (!ts.contains(m)) {
        double below = ts.rho(m);
        double above = ts.sigma(m);
        bool below_ok = below > u && below < v;
        bool above_ok = above > u && above < v;
        if (below_ok && above_ok) mid = (m - below <= above - m) ? below : above;
        else if (below_ok) mid = below;
        else if (above_ok) mid = above;
        else break;  // [u, v) spans a gap and cannot shrink further
      }
      if (!(mid > u && mid < v)) break;
      double fm = f(mid);
      if (std::abs(fm - fu) >= std::abs(fv - fm)) {
        v = mid;
        fv = fm;
      } else {
        u = mid;
        fu = fm;
      }
    }
  }
  return out;
}

}  // namespace

double family_length(const IntervalFamily& family) {
  double total = 0.0;
  for (auto [lo, hi] : family) total += hi - lo;
  return total;
}

double family_variation(const ScaleFunction& f, const IntervalFamily& family) {
  double total = 0.0;
  for (auto [lo, hi] : family) total += std::abs(f(hi) - f(lo));
  return total;
}

ACReport check_delta_ac(const ScaleFunction& f, double a, double b, int trials, std::uint64_t seed,
                        const Tolerances& tol) {
  const TimeScale& ts = f.scale();
  check_window(ts, a, b);
  if (trials < 0) throw Error(Errc::invalid_parameter, "trials must be >= 0");

  ACReport report;
  report.epsilons = {1.0, 0.1, 0.01};
  std::vector<double> deltas;
  for (int j = 1; j <= kDeltaLevels; ++j) deltas.push_back((b - a) * std::pow(10.0, -j));

  std::mt19937_64 rng(seed);
  auto blocks = ts.dense_blocks_in(a, b);
  double dense_total = dense_length(blocks);
  std::vector<double> anchors = discrete_anchors(ts, a, b);
  anchors.pop_back();  // b cannot start a half-open interval
  auto draw_start = [&]() {
    bool dense = dense_total > 0.0 && (anchors.empty() || uniform01(rng) < 0.5);
    return dense ? draw_dense(rng, blocks, dense_total) : anchors[uniform_index(rng, anchors.size())];
  };

  std::vector<Scored> worst(deltas.size());
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    for (int trial = 0; trial < trials; ++trial) {
      int n = 1 + static_cast<int>(uniform_index(rng, kMaxFamilySize));
      double budget = deltas[j] * uniform01(rng);
      std::vector<double> weights(n);
      for (auto& w : weights) w = uniform01(rng) + 1e-3;
      double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);

      IntervalFamily raw;
      for (int k = 0; k < n; ++k) {
        double start = draw_start();
        auto end = ts.floor_point(std::min(start + budget * weights[k] / wsum, b));
        if (end && *end > start) raw.emplace_back(start, *end);
      }
      std::sort(raw.begin(), raw.end());
      IntervalFamily family;
      for (auto iv : raw)
        if (family.empty() || iv.first >= family.back().second) family.push_back(iv);

      double sum = family_variation(f, family);
      if (sum > worst[j].sum) worst[j] = {std::move(family), sum};
    }
  }
  for (auto& cand : zoom_candidates(f, a, b, 0.5 * deltas.back())) {
    double len = family_length(cand.family);
    for (std::size_t j = 0; j < deltas.size(); ++j)
      if (len < deltas[j] && cand.sum > worst[j].sum) worst[j] = cand;
  }
  // A family admissible for a small budget is admissible for every larger one.
  for (std::size_t j = deltas.size() - 1; j-- > 0;)
    if (worst[j + 1].sum > worst[j].sum) worst[j] = worst[j + 1];

  for (std::size_t j = 0; j < deltas.size(); ++j)
    report.epsilon_delta_trials.push_back({deltas[j], worst[j].family, worst[j].sum});

  const Scored& tightest = worst.back();
  for (double eps : report.epsilons) {
    if (tightest.sum >= eps) {
      report.verdict = Verdict::violated;
      report.witness = Witness{eps, deltas.back(), tightest.family, tightest.sum};
      break;
    }
  }

  try {
    report.ftc_max_residual = verify_ftc(f, a, b, 64, seed, tol).max_residual;
  } catch (const Error&) {
    report.ftc_max_residual.reset();
  }
  return report;
}

ScaleFunction ftc_reconstruct(const ScaleFunction& fdelta, double a, double f_a, const Tolerances& tol) {
  const TimeScale& ts = fdelta.scale();
  if (!ts.contains(a)) throw Error(Errc::not_in_scale, "a = " + std::to_string(a));
  auto rule = [fdelta, a, f_a, tol](double x) {
    if (x < a)
      throw Error(Errc::invalid_interval, "reconstruction starts at " + std::to_string(a));
    return f_a + delta_integral(fdelta, a, x, tol);
  };
  return ScaleFunction(ts, rule, fdelta.breakpoints());
}

FtcResult verify_ftc(const ScaleFunction& f, double a, double b, int sample_count,
                     std::uint64_t seed, const Tolerances& tol) {
  const TimeScale& ts = f.scale();
  check_window(ts, a, b);

  std::mt19937_64 rng(seed);
  int fixed = static_cast<int>(ts.right_scattered_in(a, b).size());
  int draws = std::max(0, sample_count - fixed - 1);
  DerivativeSamples ds = derivative_samples(f, a, b, draws, rng);

  FtcResult result;
  std::vector<double> failed;
  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    double t = ds.points[i];
    if (!ts.in_kappa(t) || left_scattered_right_dense(ts, t)) continue;
    if (hilger_derivative(f, t, tol).converged) continue;
    if (!ds.drawn[i] && f.is_breakpoint(t)) result.skipped.push_back(t);
    else failed.push_back(t);
  }
  if (!failed.empty()) {
    std::string list;
    for (double t : failed) list += (list.empty() ? "" : ", ") + std::to_string(t);
    throw Error(Errc::non_converged_derivative, "at " + list);
  }
  result.skipped = sorted_unique(std::move(result.skipped));

  ScaleFunction derivative(
      ts, [f, tol](double t) { return hilger_derivative(f, t, tol).value; }, f.breakpoints());

  std::vector<double> xs = ds.points;
  xs.push_back(b);
  result.samples = sorted_unique(std::move(xs));
  double fa = f(a);
  double acc = 0.0;
  double prev = a;
  for (double x : result.samples) {
    acc += delta_integral(derivative, prev, x, tol);
    prev = x;
    result.max_residual = std::max(result.max_residual, std::abs(f(x) - fa - acc));
  }
  return result;
}

std::vector<double> lebesgue_point_average(const std::function<double(double)>& g, double x,
                                           const std::vector<double>& eps_ladder,
                                           std::span<const double> breakpoints, const Tolerances& tol) {
  double gx = g(x);
  auto deviation = [&](double t) { return std::abs(g(t) - gx); };
  std::vector<double> out;
  for (double eps : eps_ladder) {
    if (!(eps > 0.0)) throw Error(Errc::invalid_parameter, "ladder entries must be > 0");
    double left = integrate(deviation, x - eps, x, breakpoints, tol);
    double right = integrate(deviation, x, x + eps, breakpoints, tol);
    out.push_back((left + right) / eps);
  }
  return out;
}

EquivalenceReport check_ac_equivalence(const ScaleFunction& f, double a, double b,
                                       const EquivalenceOptions& opts, const Tolerances& tol) {
  const TimeScale& ts = f.scale();
  check_window(ts, a, b);

  EquivalenceReport rep;
  rep.delta_side = check_delta_ac(f, a, b, opts.trials, opts.seed, tol);
  rep.delta_ac = rep.delta_side.verdict == Verdict::consistent;

  RealLineFunction bar = extend(f);
  DeltaMeasure m(ts);
  std::mt19937_64 rng(mix_seed(opts.seed, 1));
  DerivativeSamples ds = derivative_samples(f, a, b, opts.samples, rng);

  std::vector<double> xs = ds.points;
  xs.push_back(b);
  for (double t : f.breakpoints())
    if (t > a && t <= b) xs.push_back(t);
  xs = sorted_unique(std::move(xs));

  for (double x : xs) {
    if (x <= a) continue;
    double gap = std::abs(one_sided_limit(bar, x, Side::left, tol) - bar(x));
    if (gap > opts.continuity_tol) rep.left_discontinuities.push_back(x);
  }
  rep.left_continuous = rep.left_discontinuities.empty();

  ScaleFunction density(
      ts, [bar, m, tol](double t) { return rn_derivative(bar, m, t, tol).value; }, f.kinks(),
      f.jumps());
  try {
    double base = one_sided_limit(bar, a, Side::left, tol);
    double acc = 0.0;
    double prev = a;
    for (double x : xs) {
      if (x <= a) continue;
      // Off the scale the integral over [a, x) equals the one over [a, sigma_-(x)).
      double xs_point = ts.contains(x) ? x : m.distribution_left(x);
      acc += delta_integral(density, prev, xs_point, tol);
      prev = xs_point;
      double lhs = one_sided_limit(bar, x, Side::left, tol) - base;
      rep.measure_residual = std::max(rep.measure_residual, std::abs(lhs - acc));
    }
  } catch (const Error& e) {
    if (e.code() != Errc::quadrature_failure && e.code() != Errc::no_convergence) throw;
    rep.measure_residual = INFINITY;
  }
  rep.measure_ac = rep.left_continuous && rep.measure_residual < opts.residual_tol;

  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    double t = ds.points[i];
    if (!ts.in_kappa(t) || left_scattered_right_dense(ts, t)) continue;
    LimitResult h = hilger_derivative(f, t, tol);
    LimitResult r = rn_derivative(bar, m, t, tol);
    if (h.converged && r.converged)
      rep.max_derivative_gap = std::max(rep.max_derivative_gap, std::abs(h.value - r.value));
  }
  rep.agree = rep.delta_ac == rep.measure_ac;
  return rep;
}

}  // namespace tscale
