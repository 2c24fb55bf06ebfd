#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tscale {

// A closed interval [lo, hi] or, when lo == hi, an isolated point.
// Only the outermost interval of a scale may have an infinite bound.
struct Component {
  double lo = 0.0;
  double hi = 0.0;

  // Throws Errc::invalid_component unless lo < hi.
  static Component interval(double lo, double hi);
  static Component point(double t) { return {t, t}; }

  bool is_point() const noexcept { return lo == hi; }
  bool operator==(const Component&) const = default;
};

enum class Density { scattered, dense };

struct PointClass {
  Density right = Density::dense;
  Density left = Density::dense;

  bool isolated() const noexcept { return right == Density::scattered && left == Density::scattered; }
  bool dense() const noexcept { return right == Density::dense && left == Density::dense; }
  bool operator==(const PointClass&) const = default;
};

// A nonempty closed subset of the real line described by finitely many
// components. Instances are immutable and always canonical: components are
// sorted, pairwise disjoint and never touch each other.
//
// Jump operators follow the usual conventions on all of R:
//   sigma(t) = inf{s in T : s > t} for t < sup T, and sup T otherwise;
//   rho(t)   = sup{s in T : s < t} for t > inf T, and inf T otherwise.
// In particular sup T is right-dense (mu(sup T) = 0).
class TimeScale {
 public:
  // Throws Errc::empty_scale for an empty list and Errc::invalid_component
  // for intervals with lo >= hi, NaNs or infinite isolated points.
  static TimeScale canonicalize(std::span<const Component> raw);
  static TimeScale canonicalize(std::initializer_list<Component> raw) {
    return canonicalize(std::span<const Component>(raw.begin(), raw.size()));
  }

  std::span<const Component> components() const noexcept { return *components_; }
  std::size_t size() const noexcept { return components_->size(); }

  double inf() const noexcept { return components_->front().lo; }
  double sup() const noexcept { return components_->back().hi; }
  bool bounded_below() const noexcept;
  bool bounded_above() const noexcept;

  bool contains(double t) const noexcept;
  // Index of the component holding t, if any.
  std::optional<std::size_t> component_index(double t) const noexcept;

  double sigma(double t) const noexcept;
  double rho(double t) const noexcept;
  // Throws Errc::not_in_scale when t is not a point of the scale.
  double mu(double t) const;
  PointClass classify(double t) const;

  // T^kappa: the scale without a left-scattered maximum.
  // Throws Errc::empty_scale when the scale is a single point.
  TimeScale kappa() const;
  bool in_kappa(double t) const noexcept;

  // Right-scattered points t with a <= t < b, ascending.
  std::vector<double> right_scattered_in(double a, double b) const;
  // Nondegenerate pieces [max(lo,a), min(hi,b)] of interval components.
  std::vector<std::pair<double, double>> dense_blocks_in(double a, double b) const;
  // Largest scale point <= x, and smallest scale point >= x.
  std::optional<double> floor_point(double x) const noexcept;
  std::optional<double> ceil_point(double x) const noexcept;

  bool operator==(const TimeScale& other) const { return *components_ == *other.components_; }

 private:
  explicit TimeScale(std::vector<Component> comps)
      : components_(std::make_shared<const std::vector<Component>>(std::move(comps))) {}

  std::shared_ptr<const std::vector<Component>> components_;
};

}  // namespace tscale
