#pragma once

namespace tscale {

// Numerical knobs shared by the limit and quadrature machinery.
struct Tolerances {
  double limit = 1e-9;      // Cauchy gap for one-sided and extrapolated limits
  double eps0 = 1e-2;       // first step of the geometric sequence eps_k = eps0 * 2^-k
  int max_steps = 40;       // k <= max_steps
  double quad = 1e-10;      // absolute tolerance of adaptive Gauss-Legendre
  int max_depth = 30;       // bisection depth cap for the quadrature
};

}  // namespace tscale
