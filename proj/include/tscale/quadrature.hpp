#pragma once

#include <functional>
#include <span>

#include "tscale/tolerances.hpp"

namespace tscale {

// Adaptive 10-point Gauss-Legendre quadrature of f over [a, b].
//
// The interval is first split at every breakpoint strictly inside (a, b);
// each piece is then bisected until the two-panel estimate agrees with the
// one-panel estimate to within tol.quad scaled by the panel's share of
// [a, b]. Throws Errc::quadrature_failure past tol.max_depth bisections.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {}, const Tolerances& tol = {});

}  // namespace tscale
