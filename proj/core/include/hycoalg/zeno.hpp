#pragma once

// Zeno stability certificates and the summability bound on Zeno time.
//
// For a certificate (V_c, V_d) into the Zeno measurement object the
// function W = V_c + V_d / (1 - lambda) decreases at rate c during flow and
// does not increase at jumps, so the total flow time of an execution is at
// most V_c(x0)/c + V_d(x0)/(c(1 - lambda)).

#include <optional>
#include <string>
#include <vector>

#include "hycoalg/lyapunov.hpp"
#include "hycoalg/simulator.hpp"

namespace hycoalg {

/// Sets the candidate's target to the Zeno measurement object with (c,
/// lambda) and runs check_certificate. Parameters outside c > 0,
/// 0 < lambda < 1 are reported as failing checks, not thrown.
CertificateReport check_zeno_certificate(const HCoalgebra& sys, LyapunovCandidate cand, double c, double lambda,
                                         const CertificateConfig& cfg = {});

struct WSample {
  std::size_t j = 0;
  double t = 0.0;
  double W = 0.0;
};

struct ZenoBoundConfig {
  SimConfig sim{.dt_max = 1e-3, .max_jumps = 10000, .horizon = 100.0};
  CertificateConfig certificate;
  /// Verify grad V_d . f <= 0 before asserting the bound.
  bool also_check_Vd_flow = true;
  double tol = 1e-6;
};

struct ZenoBoundResult {
  double bound = 0.0;
  double c = 0.0;
  double lambda = 0.0;
  double vc0 = 0.0;
  double vd0 = 0.0;
  double tau0 = 0.0;
  /// Sum of recorded inter-jump durations.
  double observed_flow_time = 0.0;
  /// Observed flow time plus the fitted geometric tail.
  double observed = 0.0;
  bool zeno_flagged = false;
  /// "pass", "fail" or "inconclusive" (no Zeno truncation within budget).
  std::string verdict;
  bool pass = false;
  std::vector<WSample> W_trace;
  /// Largest W(post) - W(pre) over jumps.
  double max_jump_increase = 0.0;
  /// Largest difference quotient of W between consecutive flow samples.
  double max_flow_rate = 0.0;
  bool W_monotone = true;
  SimulationResult simulation;
  CertificateReport certificate;
};

/// Refuses with PrerequisiteError unless the Zeno certificate (and, when
/// requested, the V_d flow condition) passes. Then simulates from x0 and
/// compares the observed flow time with the bound.
ZenoBoundResult compute_zeno_bound(const HCoalgebra& sys, const LyapunovCandidate& cand, double c, double lambda,
                                   const TaggedPoint& x0, const ZenoBoundConfig& cfg = {});

/// W along an execution with dW/dt difference quotients and jump increments.
void trace_W(const LyapunovCandidate& cand, double lambda, const HybridExecution& exe, ZenoBoundResult& out);

}  // namespace hycoalg
