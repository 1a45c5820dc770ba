#pragma once

// Closed-form reference values computed independently of the library.

#include <cmath>

namespace oracle {

/// Ballistic flight from height h with upward velocity v under gravity g.
inline double impact_time(double g, double h, double v) { return (v + std::sqrt(v * v + 2.0 * g * h)) / g; }
inline double impact_speed(double g, double h, double v) { return std::sqrt(v * v + 2.0 * g * h); }

/// Total flow time of the bouncing ball: first flight plus the geometric
/// series of later flights 2 u lambda^k / g, k >= 1.
inline double ball_zeno_time(double g, double lambda, double h, double v) {
  const double u = impact_speed(g, h, v);
  return impact_time(g, h, v) + 2.0 * u / g * lambda / (1.0 - lambda);
}

/// tau_0 + 2 upsilon_0 / (g (1 - lambda))
inline double ball_zeno_bound(double g, double lambda, double h, double v) {
  return impact_time(g, h, v) + 2.0 * impact_speed(g, h, v) / (g * (1.0 - lambda));
}

/// Per-period contraction of V = y^2 for a linear decay at rate c/epsilon
/// over one period T and jump scalings with product pi_kappa.
inline double res_contraction(double c, double epsilon, double T, double pi_kappa) {
  return std::exp(-(c / epsilon) * T) * pi_kappa;
}

}  // namespace oracle
