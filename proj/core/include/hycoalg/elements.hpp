#pragma once

// Generalized elements of an H-coalgebra that are checked against
// simulated behavior: forward invariant sets and hybrid periodic orbits.

#include <cstdint>
#include <optional>
#include <string>

#include "hycoalg/coalgebra.hpp"
#include "hycoalg/simulator.hpp"

namespace hycoalg {

struct InvarianceReport {
  bool pass = true;
  std::size_t trials = 0;
  /// Largest discrete semi-norm of a recorded point.
  double max_excursion = 0.0;
  std::optional<TaggedPoint> witness;
};

/// Simulates from points of z's image and tracks the distance of every
/// recorded point to the image.
InvarianceReport check_forward_invariance(const HCoalgebra& sys, const GeneralizedElement& z, std::size_t trials,
                                          double horizon, double tol_inv = 1e-6, SimConfig sim = {},
                                          std::uint64_t seed = 13);

/// One period of a hybrid periodic solution: K jumps over duration T.
struct PeriodicOrbitElement {
  std::size_t K = 0;
  double T = 0.0;
  HybridExecution orbit;

  /// Infimum of the distance to the dense samples of the orbit.
  [[nodiscard]] double distance(const Vec& x) const;
  /// Element whose image is the sampled orbit; the analytic distance is
  /// used when given.
  [[nodiscard]] GeneralizedElement as_element(std::function<double(const Vec&)> analytic = {}) const;
};

/// Simulates K jumps from `start` and keeps the intervals before the K-th
/// jump as the orbit.
PeriodicOrbitElement build_periodic_orbit(const HCoalgebra& sys, const TaggedPoint& start, std::size_t K,
                                          SimConfig sim = {});

struct OrbitValidation {
  bool pass = true;
  /// |psi_c(K, tau_K) - psi_c(0, tau_0)|
  double seam_error = 0.0;
  /// max_j |tau_{j+K} - tau_j - T|
  double period_error = 0.0;
  std::string failure;
};

/// Re-simulates two periods and checks the seam and tau_{j+K} = tau_j + T.
OrbitValidation validate_periodic_orbit(const HCoalgebra& sys, const PeriodicOrbitElement& orbit,
                                        double tol_seam = 1e-8, SimConfig sim = {});

}  // namespace hycoalg
