#pragma once

// Hybrid executions chi = (Lambda, I, rho, C) and the solution check.
//
// Trace convention: the jump instant tau_{j+1} belongs to both I_j and
// I_{j+1}. Interval j stores the pre-jump state as its last sample and
// interval j+1 stores the post-jump state as its first sample.

#include <optional>
#include <string>
#include <vector>

#include "hycoalg/coalgebra.hpp"
#include "hycoalg/numeric.hpp"

namespace hycoalg {

struct Sample {
  double t = 0.0;
  Vec x;
  /// f_c(x) at the sample; used for cubic Hermite dense output.
  Vec dx;
};

struct ExecutionInterval {
  Mode mode;
  std::vector<Sample> samples;
  /// Edge taken at the end of the interval; empty for the final interval.
  std::string edge;

  [[nodiscard]] double begin() const { return samples.front().t; }
  [[nodiscard]] double end() const { return samples.back().t; }
  [[nodiscard]] double duration() const { return end() - begin(); }

  /// Dense output on [begin, end].
  [[nodiscard]] Vec state_at(double t) const;
  [[nodiscard]] Vec derivative_at(double t) const;
  [[nodiscard]] numeric::HermiteSegment segment(std::size_t k) const;
};

enum class Truncation { completed, zeno, horizon, max_jumps };

std::string to_string(Truncation t);

struct HybridTimeDomain {
  /// tau_0 <= tau_1 <= ... ; interval j is [tau_j, tau_{j+1}].
  std::vector<double> tau;
  /// True when the underlying index set is N (Zeno truncation).
  bool unbounded = false;
  Truncation reason = Truncation::completed;

  [[nodiscard]] std::size_t intervals() const { return tau.empty() ? 0 : tau.size() - 1; }
  [[nodiscard]] double dt(std::size_t k) const { return tau[k + 1] - tau[k]; }
  [[nodiscard]] bool monotone() const;
};

struct HybridExecution {
  std::vector<ExecutionInterval> intervals;
  Truncation truncation = Truncation::completed;

  [[nodiscard]] HybridTimeDomain domain() const;
  [[nodiscard]] std::size_t jumps() const { return intervals.empty() ? 0 : intervals.size() - 1; }
  [[nodiscard]] double start_time() const { return intervals.front().begin(); }
  [[nodiscard]] double end_time() const { return intervals.back().end(); }
  /// rho(j).
  [[nodiscard]] const Mode& mode(std::size_t j) const { return intervals.at(j).mode; }
  /// psi_d(j, k, t), reconstructed as rho(j) for every (k, t).
  [[nodiscard]] const Mode& psi_d(std::size_t j, std::size_t /*k*/, double /*t*/) const { return mode(j); }
  /// Sum of inter-jump durations over the recorded intervals.
  [[nodiscard]] double flow_time() const;
};

struct VerifyConfig {
  double tol_flow_abs = 1e-6;
  double tol_flow_rel = 1e-4;
  double tol_reset = 1e-9;
  /// Interior samples closer than this to an interval end are not tested
  /// for guard membership.
  double edge_exclusion = 1e-9;
};

struct ConditionResult {
  std::string name;
  bool pass = true;
  double worst = 0.0;
  std::size_t evaluated = 0;
  std::optional<TaggedPoint> witness;
  double witness_time = 0.0;
  std::size_t witness_interval = 0;
  std::string detail;
};

struct SolutionVerdict {
  bool pass = true;
  ConditionResult flow;
  ConditionResult jump;
  ConditionResult no_missed_jump;
  ConditionResult domain;
};

/// Checks that a candidate execution solves the coalgebra:
///  - flow: ||c_j'(t) - f_c(c_j(t))|| small at midpoints between samples,
///  - jump: f_d at each pre-jump state is exactly {post-jump state},
///  - no_missed_jump: f_d is empty at interior samples,
///  - domain: every sample lies in the domain of its mode.
/// Throws ValidationError when the candidate names a mode outside S.
SolutionVerdict verify_solution(const HCoalgebra& sys, const HybridExecution& cand, const VerifyConfig& cfg = {});

}  // namespace hycoalg
