#include <algorithm>
#include <cmath>
#include <string>

#include "tscale/error.hpp"
#include "tscale/measure.hpp"

// The image-measure route deliberately avoids the distribution function:
// it walks the component list and adds up the Lebesgue length of the set of
// s in (inf T, sup T] with rho(s) in A.

namespace tscale {
namespace {

bool holds(const BorelPiece& p, double t) {
  bool above = t > p.lo || (t == p.lo && p.lo_closed);
  bool below = t < p.hi || (t == p.hi && p.hi_closed);
  return above && below;
}

}  // namespace

double preimage_measure(const DeltaMeasure& m, const BorelSet& set) {
  auto comps = m.scale().components();
  double total = 0.0;
  BorelSet norm = set.normalized();
  for (const auto& piece : norm.pieces()) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const Component& c = comps[i];
      // rho is the identity on (lo, hi]; the left endpoint is a null set.
      if (!c.is_point()) {
        double lo = std::max(c.lo, piece.lo);
        double hi = std::min(c.hi, piece.hi);
        if (lo < hi) total += hi - lo;
      }
      // The gap (hi, next.lo] is mapped onto hi by rho.
      if (i + 1 < comps.size() && holds(piece, c.hi)) total += comps[i + 1].lo - c.hi;
    }
  }
  return total;
}

}  // namespace tscale
