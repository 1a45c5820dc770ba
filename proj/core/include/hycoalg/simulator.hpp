#pragma once

// Event-driven execution engine.
//
// Flow is integrated with fixed-step classical RK4; every step carries a
// cubic Hermite interpolant built from the endpoint states and vector field
// values. Guard crossings are located by bisection on that interpolant.
// A run ends at the horizon, at max_jumps, or when three consecutive
// inter-jump durations fall below zeno_dt_min (Zeno truncation).

#include <optional>
#include <string>
#include <vector>

#include "hycoalg/coalgebra.hpp"
#include "hycoalg/execution.hpp"
#include "hycoalg/numeric.hpp"

namespace hycoalg {

struct SimConfig {
  double dt_max = 1e-3;
  /// |g(x(t*))| bound for a located crossing (state units).
  double event_tol = 1e-12;
  /// Bisection target width in time.
  double time_tol = 1e-10;
  double zeno_dt_min = 1e-6;
  std::size_t max_jumps = 1000;
  double horizon = 10.0;
  /// Consecutive short inter-jump durations that trigger the Zeno flag.
  std::size_t zeno_consecutive = 3;
  /// Number of trailing durations used for the geometric tail fit.
  std::size_t zeno_fit_window = 5;

  /// Throws ValidationError for non-positive entries.
  void validate() const;
};

struct ZenoReport {
  bool is_zeno_flagged = false;
  /// tau_0 + sum of observed durations + fitted geometric tail.
  double tau_infinity_estimate = 0.0;
  std::size_t jumps = 0;
  /// Trailing inter-jump durations, oldest first.
  std::vector<double> dt_tail;
  /// Fitted ratio of consecutive durations; nullopt if it could not be fit.
  std::optional<double> fitted_ratio;
};

struct SimulationResult {
  HybridExecution execution;
  ZenoReport zeno;
  std::vector<std::string> warnings;
};

enum class EventKind { none, crossing, grazing };

struct EventLocation {
  EventKind kind = EventKind::none;
  double t = 0.0;
  Vec x;
};

/// Locates the first point where guard.surface reaches zero from above on
/// a flow segment. A segment that touches the zero set without a sign
/// change reports `grazing`. The admissibility condition is evaluated by
/// the caller. Throws EventError when bisection cannot reach event_tol.
EventLocation locate_event(const numeric::HermiteSegment& seg, const Guard& guard, const SimConfig& cfg);

/// Simulates a coalgebra encoded from a classical hybrid system.
/// Errors: ValidationError for an initial point outside its domain or a
/// coalgebra without guard data, EscapeError when the trajectory leaves the
/// domain without reaching a guard, SimulationError for simultaneous
/// guards, EventError from localization.
SimulationResult simulate(const HCoalgebra& sys, const TaggedPoint& init, const SimConfig& cfg);

/// Switching signal: mode changes at the given increasing times.
struct SwitchingSignal {
  std::vector<double> times;
  std::vector<Mode> modes;
};

/// Simulates a switching system under an explicit signal. Jumps keep the
/// continuous state; each switch takes one element of f_d.
SimulationResult simulate_switching(const HCoalgebra& sys, const TaggedPoint& init, const SwitchingSignal& signal,
                                    const SimConfig& cfg);

/// One classical RK4 step.
Vec rk4_step(const std::function<Vec(const Vec&)>& f, const Vec& x, double h);

/// Geometric tail extrapolation of a sequence of inter-jump durations.
std::pair<double, std::optional<double>> geometric_tail(const std::vector<double>& dts, std::size_t window);

}  // namespace hycoalg
