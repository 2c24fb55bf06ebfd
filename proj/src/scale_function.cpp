#include <algorithm>
#include <string>

#include "tscale/calculus.hpp"
#include "tscale/error.hpp"

namespace tscale {

ScaleFunction::ScaleFunction(TimeScale scale, std::function<double(double)> rule,
                             std::vector<double> kinks, std::vector<double> jumps)
    : scale_(std::move(scale)), rule_(std::move(rule)), kinks_(std::move(kinks)), jumps_(std::move(jumps)) {
  std::sort(kinks_.begin(), kinks_.end());
  std::sort(jumps_.begin(), jumps_.end());
}

std::vector<double> ScaleFunction::breakpoints() const {
  std::vector<double> all(kinks_);
  all.insert(all.end(), jumps_.begin(), jumps_.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

bool ScaleFunction::is_breakpoint(double t) const {
  return std::binary_search(kinks_.begin(), kinks_.end(), t) ||
         std::binary_search(jumps_.begin(), jumps_.end(), t);
}

double ScaleFunction::operator()(double t) const {
  if (!scale_.contains(t)) throw Error(Errc::not_in_scale, "f(" + std::to_string(t) + ")");
  return rule_(t);
}

RealLineFunction extend(const ScaleFunction& f) {
  RealLineFunction g;
  g.eval = [f](double x) {
    const TimeScale& ts = f.scale();
    return f.eval_unchecked(ts.contains(x) ? x : ts.sigma(x));
  };
  g.limit = [f, bar = RealLineFunction{g.eval, {}, {}}](double x, Side side) {
    const TimeScale& ts = f.scale();
    bool at_jump = std::binary_search(f.jumps().begin(), f.jumps().end(), x) && ts.contains(x);
    if (side == Side::left) {
      bool left_dense = ts.contains(x) && x > ts.inf() && ts.rho(x) == x;
      if (at_jump && left_dense) return one_sided_limit(bar, x, Side::left);
      return f.eval_unchecked(ts.contains(x) ? x : ts.sigma(x));
    }
    bool right_dense = ts.contains(x) && x < ts.sup() && ts.sigma(x) == x;
    if (at_jump && right_dense) return one_sided_limit(bar, x, Side::right);
    return f.eval_unchecked(ts.sigma(x));
  };
  return g;
}

}  // namespace tscale
