#include "tscale/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "tscale/error.hpp"

namespace tscale {
namespace {

constexpr int kMaxFactorial = 18;
constexpr int kMaxCantor = 12;

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> table = {
      {"reals", "single closed interval [lo, hi]",
       {{"lo", 0.0, "finite, < hi"}, {"hi", 1.0, "finite, > lo"}}},
      {"h_integers", "lattice {k h} on the window [lo, hi]",
       {{"h", 1.0, "> 0"}, {"lo", 0.0, "<= hi"}, {"hi", 10.0, ">= lo"}}},
      {"q_scale", "{q^k : 0 <= k <= N}, plus the accumulation point 0 when zero != 0",
       {{"q", 0.5, "> 0, != 1"}, {"N", 10.0, "integer >= 1"}, {"zero", 1.0, "0 or 1"}}},
      {"mixed", "[0,1] u {2} u {3} u [4,5]", {}},
      {"cantor_approx", "n-th middle-thirds stage on [0,1]: 2^n intervals of length 3^-n",
       {{"n", 3.0, "integer in [0, 12]"}}},
      {"factorial", "{0} u {+-1/k! : 1 <= k <= N} with paired f(+-1/k!) = +-1/(k+1)!",
       {{"N", 12.0, "integer in [2, 18]"}}},
  };
  return table;
}

const FamilyInfo* find_family(std::string_view name) {
  for (const auto& f : family_table())
    if (f.name == name) return &f;
  return nullptr;
}

int integer_param(const NamedScale& s, std::string_view key, int lo, int hi) {
  double v = s.param(key);
  if (v != std::floor(v) || v < lo || v > hi)
    throw Error(Errc::invalid_parameter, std::string(key) + " = " + std::to_string(v) +
                                             " must be an integer in [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
  return static_cast<int>(v);
}

TimeScale lattice(double h, double lo, double hi) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(Errc::invalid_parameter, "h must be > 0");
  if (!(lo <= hi)) throw Error(Errc::invalid_parameter, "window needs lo <= hi");
  double first = std::ceil(lo / h);
  double last = std::floor(hi / h);
  if (last - first > 1e6) throw Error(Errc::invalid_parameter, "lattice window too large");
  std::vector<Component> comps;
  for (double k = first; k <= last; k += 1.0) {
    double t = k * h;
    if (t >= lo && t <= hi) comps.push_back(Component::point(t));
  }
  return TimeScale::canonicalize(comps);
}

TimeScale restrict_to(const TimeScale& ts, double lo, double hi) {
  if (!(lo <= hi)) throw Error(Errc::invalid_parameter, "window needs lo <= hi");
  std::vector<Component> comps;
  for (const auto& c : ts.components()) {
    double a = std::max(c.lo, lo);
    double b = std::min(c.hi, hi);
    if (a < b) comps.push_back(Component::interval(a, b));
    else if (a == b) comps.push_back(Component::point(a));
  }
  return TimeScale::canonicalize(comps);
}

double factorial_value(double t) {
  if (t == 0.0) return 0.0;
  std::vector<double> r = factorial_reciprocals(kMaxFactorial + 1);
  double mag = std::abs(t);
  for (int n = 1; n <= kMaxFactorial; ++n)
    if (r[n - 1] == mag) return std::copysign(r[n], t);
  throw Error(Errc::invalid_parameter,
              "example_factorial is only defined on 0 and +-1/n!, got " + std::to_string(t));
}

}  // namespace

double NamedScale::param(std::string_view key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw Error(Errc::invalid_parameter, "missing parameter " + std::string(key));
  return it->second;
}

TimeScale NamedScale::materialize() const {
  if (name_ == "reals") {
    double lo = param("lo");
    double hi = param("hi");
    return TimeScale::canonicalize({Component::interval(lo, hi)});
  }
  if (name_ == "h_integers") return lattice(param("h"), param("lo"), param("hi"));
  if (name_ == "q_scale") {
    double q = param("q");
    int count = integer_param(*this, "N", 1, 4096);
    if (!(q > 0.0) || q == 1.0 || !std::isfinite(q))
      throw Error(Errc::invalid_parameter, "q must be > 0 and != 1");
    std::vector<Component> comps;
    double p = 1.0;
    for (int k = 0; k <= count; ++k, p *= q) comps.push_back(Component::point(p));
    if (param("zero") != 0.0) comps.push_back(Component::point(0.0));
    return TimeScale::canonicalize(comps);
  }
  if (name_ == "mixed") {
    return TimeScale::canonicalize({Component::interval(0.0, 1.0), Component::point(2.0),
                                    Component::point(3.0), Component::interval(4.0, 5.0)});
  }
  if (name_ == "cantor_approx") {
    int n = integer_param(*this, "n", 0, kMaxCantor);
    // Endpoints as integers in units of 3^-n, divided once at the end.
    std::vector<std::pair<std::int64_t, std::int64_t>> pieces{{0, 1}};
    std::int64_t scale = 1;
    for (int k = 0; k < n; ++k) {
      scale *= 3;
      std::vector<std::pair<std::int64_t, std::int64_t>> next;
      for (auto [l, r] : pieces) {
        next.emplace_back(3 * l, 3 * l + (r - l));
        next.emplace_back(3 * r - (r - l), 3 * r);
      }
      pieces = std::move(next);
    }
    std::vector<Component> comps;
    double denom = static_cast<double>(scale);
    for (auto [l, r] : pieces)
      comps.push_back(Component::interval(static_cast<double>(l) / denom, static_cast<double>(r) / denom));
    return TimeScale::canonicalize(comps);
  }
  if (name_ == "factorial") {
    int n = integer_param(*this, "N", 2, kMaxFactorial);
    std::vector<Component> comps{Component::point(0.0)};
    for (double t : factorial_reciprocals(n)) {
      comps.push_back(Component::point(t));
      comps.push_back(Component::point(-t));
    }
    return TimeScale::canonicalize(comps);
  }
  throw Error(Errc::unknown_scale, name_);
}

TimeScale NamedScale::materialize(double lo, double hi) const {
  if (name_ == "reals") {
    if (!(lo < hi)) throw Error(Errc::invalid_parameter, "reals window needs lo < hi");
    return TimeScale::canonicalize({Component::interval(lo, hi)});
  }
  if (name_ == "h_integers") return lattice(param("h"), lo, hi);
  return restrict_to(materialize(), lo, hi);
}

NamedScale builtin(std::string_view name, const ParamMap& params) {
  const FamilyInfo* info = find_family(name);
  if (info == nullptr) throw Error(Errc::unknown_scale, std::string(name));
  ParamMap bound;
  for (const auto& spec : info->params) {
    auto it = params.find(spec.name);
    bound[spec.name] = it == params.end() ? spec.default_value : it->second;
  }
  NamedScale scale(std::string(name), std::move(bound));
  scale.materialize();  // validates the parameters
  return scale;
}

ScaleFunction paired_function(const NamedScale& family) {
  if (!family.has_paired_function())
    throw Error(Errc::no_paired_function, family.name() + " has no paired function");
  return make_function("example_factorial", family.materialize());
}

std::vector<double> factorial_reciprocals(int count) {
  std::vector<double> out;
  double t = 1.0;
  for (int n = 1; n <= count; ++n) {
    t /= n;
    out.push_back(t);
  }
  return out;
}

std::vector<FamilyInfo> families() { return family_table(); }

ScaleFunction make_function(std::string_view id, const TimeScale& scale, const ParamMap& params) {
  auto get = [&](std::string_view key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  double at = get("at", 0.5);
  if (id == "const") {
    double v = get("value", 1.0);
    return ScaleFunction(scale, [v](double) { return v; });
  }
  if (id == "identity") return ScaleFunction(scale, [](double t) { return t; });
  if (id == "square") return ScaleFunction(scale, [](double t) { return t * t; });
  if (id == "cube") return ScaleFunction(scale, [](double t) { return t * t * t; });
  if (id == "sqrt") {
    return ScaleFunction(
        scale,
        [](double t) {
          if (t < 0.0) throw Error(Errc::invalid_parameter, "sqrt of negative " + std::to_string(t));
          return std::sqrt(t);
        },
        {0.0});
  }
  if (id == "abs_shift")
    return ScaleFunction(scale, [at](double t) { return std::abs(t - at) + t; }, {at});
  if (id == "step")
    return ScaleFunction(scale, [at](double t) { return t >= at ? 1.0 : 0.0; }, {}, {at});
  if (id == "step_after")
    return ScaleFunction(scale, [at](double t) { return t > at ? 1.0 : 0.0; }, {}, {at});
  if (id == "example_factorial") return ScaleFunction(scale, factorial_value);
  throw Error(Errc::unknown_function, std::string(id));
}

std::vector<std::string> function_ids() {
  return {"const", "identity", "square", "cube", "sqrt", "abs_shift", "step", "step_after",
          "example_factorial"};
}

double dense_probe(const TimeScale& scale) {
  for (const auto& c : scale.components()) {
    if (c.is_point()) continue;
    if (std::isinf(c.lo) && std::isinf(c.hi)) return 0.0;
    if (std::isinf(c.lo)) return c.hi - 1.0;
    if (std::isinf(c.hi)) return c.lo + 1.0;
    return 0.5 * (c.lo + c.hi);
  }
  throw Error(Errc::invalid_parameter, "scale has no dense block");
}

}  // namespace tscale
