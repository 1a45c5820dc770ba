#include "hycoalg/elements.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hycoalg {

InvarianceReport check_forward_invariance(const HCoalgebra& sys, const GeneralizedElement& z, std::size_t trials,
                                          double horizon, double tol_inv, SimConfig sim, std::uint64_t seed) {
  if (z.image.empty()) throw ValidationError("element '" + z.name + "' has an empty image");
  sim.horizon = horizon;
  InvarianceReport rep;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, z.image.size() - 1);
  for (std::size_t i = 0; i < trials; ++i) {
    const TaggedPoint& init = z.image[trials <= z.image.size() ? i : pick(rng)];
    const SimulationResult res = simulate(sys, init, sim);
    ++rep.trials;
    for (const auto& iv : res.execution.intervals) {
      for (const auto& s : iv.samples) {
        const double d = z.discrete_norm(iv.mode, s.x);
        if (d > rep.max_excursion) {
          rep.max_excursion = d;
          rep.witness = TaggedPoint{iv.mode, s.x};
        }
      }
    }
  }
  rep.pass = rep.max_excursion <= tol_inv;
  if (rep.pass) rep.witness.reset();
  return rep;
}

double PeriodicOrbitElement::distance(const Vec& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : orbit.intervals) {
    for (std::size_t k = 0; k < iv.samples.size(); ++k) {
      best = std::min(best, (x - iv.samples[k].x).norm());
      if (k + 1 < iv.samples.size()) {
        const auto seg = iv.segment(k);
        best = std::min(best, (x - seg.value(0.5 * (seg.t0 + seg.t1))).norm());
      }
    }
  }
  return best;
}

GeneralizedElement PeriodicOrbitElement::as_element(std::function<double(const Vec&)> analytic) const {
  GeneralizedElement z;
  z.name = "periodic orbit";
  for (const auto& iv : orbit.intervals) {
    for (const auto& s : iv.samples) z.image.push_back(TaggedPoint{iv.mode, s.x});
  }
  if (analytic) {
    z.analytic_distance = std::move(analytic);
  } else {
    auto self = *this;
    z.analytic_distance = [self](const Vec& x) { return self.distance(x); };
  }
  return z;
}

PeriodicOrbitElement build_periodic_orbit(const HCoalgebra& sys, const TaggedPoint& start, std::size_t K,
                                          SimConfig sim) {
  if (K == 0) throw ValidationError("a periodic orbit needs K >= 1 jumps per period");
  sim.max_jumps = K;
  SimulationResult res = simulate(sys, start, sim);
  if (res.execution.jumps() < K) {
    throw SimulationError("only " + std::to_string(res.execution.jumps()) + " jumps before the horizon", start,
                          res.execution.end_time());
  }
  PeriodicOrbitElement out;
  out.K = K;
  out.T = res.execution.intervals[K].begin() - res.execution.start_time();
  out.orbit.intervals.assign(res.execution.intervals.begin(), res.execution.intervals.begin() + K);
  out.orbit.truncation = Truncation::completed;
  return out;
}

OrbitValidation validate_periodic_orbit(const HCoalgebra& sys, const PeriodicOrbitElement& orbit, double tol_seam,
                                        SimConfig sim) {
  OrbitValidation v;
  const auto& first = orbit.orbit.intervals.front();
  const TaggedPoint start{first.mode, first.samples.front().x};
  sim.max_jumps = 2 * orbit.K;
  sim.horizon = std::max(sim.horizon, 3.0 * orbit.T);
  const SimulationResult res = simulate(sys, start, sim);
  const auto& iv = res.execution.intervals;
  if (iv.size() < 2 * orbit.K + 1) {
    v.pass = false;
    v.failure = "fewer than 2K jumps were observed";
    return v;
  }
  const auto& seam = iv[orbit.K];
  v.seam_error = (seam.samples.front().x - start.x).norm();
  if (seam.mode != start.mode) {
    v.pass = false;
    v.failure = "mode after K jumps is '" + seam.mode + "', expected '" + start.mode + "'";
  }
  for (std::size_t j = 0; j + orbit.K < iv.size(); ++j) {
    v.period_error = std::max(v.period_error, std::abs(iv[j + orbit.K].begin() - iv[j].begin() - orbit.T));
  }
  if (v.seam_error > tol_seam) {
    v.pass = false;
    if (v.failure.empty()) v.failure = "seam error " + std::to_string(v.seam_error);
  }
  if (v.period_error > 1e-8) {
    v.pass = false;
    if (v.failure.empty()) v.failure = "jump times are not T-periodic";
  }
  return v;
}

}  // namespace hycoalg
