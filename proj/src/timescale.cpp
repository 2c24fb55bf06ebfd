#include "tscale/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tscale/error.hpp"

namespace tscale {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::empty_scale: return "EmptyScale";
    case Errc::invalid_component: return "InvalidComponent";
    case Errc::not_in_scale: return "NotInScale";
    case Errc::not_in_kappa: return "NotInKappa";
    case Errc::invalid_interval: return "InvalidInterval";
    case Errc::invalid_parameter: return "InvalidParameter";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::non_converged_derivative: return "NonConvergedDerivative";
    case Errc::unknown_scale: return "UnknownScale";
    case Errc::unknown_function: return "UnknownFunction";
    case Errc::no_paired_function: return "NoPairedFunction";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Component Component::interval(double lo, double hi) {
  if (!(lo < hi))
    throw Error(Errc::invalid_component,
                "interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "] needs lo < hi");
  return {lo, hi};
}

TimeScale TimeScale::canonicalize(std::span<const Component> raw) {
  if (raw.empty()) throw Error(Errc::empty_scale, "a time scale needs at least one component");

  std::vector<Component> comps(raw.begin(), raw.end());
  for (const auto& c : comps) {
    if (std::isnan(c.lo) || std::isnan(c.hi))
      throw Error(Errc::invalid_component, "NaN endpoint");
    if (c.lo > c.hi)
      throw Error(Errc::invalid_component,
                  "interval [" + std::to_string(c.lo) + ", " + std::to_string(c.hi) + "] has lo > hi");
    if (c.is_point() && std::isinf(c.lo))
      throw Error(Errc::invalid_component, "isolated points must be finite");
  }
  std::sort(comps.begin(), comps.end(), [](const Component& x, const Component& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });

  // Overlapping or touching components collapse into one closed interval.
  std::vector<Component> merged;
  merged.reserve(comps.size());
  for (const auto& c : comps) {
    if (!merged.empty() && c.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, c.hi);
    } else {
      merged.push_back(c);
    }
  }
  return TimeScale(std::move(merged));
}

bool TimeScale::bounded_below() const noexcept { return std::isfinite(inf()); }
bool TimeScale::bounded_above() const noexcept { return std::isfinite(sup()); }

std::optional<std::size_t> TimeScale::component_index(double t) const noexcept {
  const auto& comps = *components_;
  auto it = std::lower_bound(comps.begin(), comps.end(), t,
                             [](const Component& c, double v) { return c.hi < v; });
  if (it == comps.end() || it->lo > t) return std::nullopt;
  return static_cast<std::size_t>(it - comps.begin());
}

bool TimeScale::contains(double t) const noexcept { return component_index(t).has_value(); }

double TimeScale::sigma(double t) const noexcept {
  if (t >= sup()) return sup();
  const auto& comps = *components_;
  // First component reaching strictly beyond t; it exists because t < sup.
  auto it = std::upper_bound(comps.begin(), comps.end(), t,
                             [](double v, const Component& c) { return v < c.hi; });
  return it->lo > t ? it->lo : t;
}

double TimeScale::rho(double t) const noexcept {
  if (t <= inf()) return inf();
  const auto& comps = *components_;
  // Last component starting strictly before t.
  auto it = std::lower_bound(comps.begin(), comps.end(), t,
                             [](const Component& c, double v) { return c.lo < v; });
  --it;
  return it->hi < t ? it->hi : t;
}

double TimeScale::mu(double t) const {
  if (!contains(t)) throw Error(Errc::not_in_scale, "mu(" + std::to_string(t) + ")");
  return sigma(t) - t;
}

PointClass TimeScale::classify(double t) const {
  if (!contains(t)) throw Error(Errc::not_in_scale, "classify(" + std::to_string(t) + ")");
  PointClass pc;
  pc.right = sigma(t) > t ? Density::scattered : Density::dense;
  pc.left = rho(t) < t ? Density::scattered : Density::dense;
  return pc;
}

TimeScale TimeScale::kappa() const {
  const auto& comps = *components_;
  if (!comps.back().is_point()) return *this;
  if (comps.size() == 1) throw Error(Errc::empty_scale, "T^kappa of a one-point scale is empty");
  return TimeScale(std::vector<Component>(comps.begin(), comps.end() - 1));
}

bool TimeScale::in_kappa(double t) const noexcept {
  if (!contains(t)) return false;
  return !(components_->back().is_point() && t == sup());
}

std::vector<double> TimeScale::right_scattered_in(double a, double b) const {
  std::vector<double> out;
  const auto& comps = *components_;
  auto it = std::lower_bound(comps.begin(), comps.end(), a,
                             [](const Component& c, double v) { return c.hi < v; });
  for (; it != comps.end() && it->hi < b; ++it) {
    if (it + 1 == comps.end()) break;  // sup is right-dense by convention
    out.push_back(it->hi);
  }
  return out;
}

std::vector<std::pair<double, double>> TimeScale::dense_blocks_in(double a, double b) const {
  std::vector<std::pair<double, double>> out;
  const auto& comps = *components_;
  auto it = std::lower_bound(comps.begin(), comps.end(), a,
                             [](const Component& c, double v) { return c.hi < v; });
  for (; it != comps.end() && it->lo < b; ++it) {
    if (it->is_point()) continue;
    double lo = std::max(it->lo, a);
    double hi = std::min(it->hi, b);
    if (lo < hi) out.emplace_back(lo, hi);
  }
  return out;
}

std::optional<double> TimeScale::floor_point(double x) const noexcept {
  if (contains(x)) return x;
  if (x < inf()) return std::nullopt;
  return rho(x);
}

std::optional<double> TimeScale::ceil_point(double x) const noexcept {
  if (contains(x)) return x;
  if (x > sup()) return std::nullopt;
  return sigma(x);
}

}  // namespace tscale
