#pragma once

// Measurement objects sigma = (sigma_c, sigma_d) on a posetal object, the
// concrete instances used for Zeno and orbit stability, and a randomized
// tester for the comparison property.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hycoalg/order.hpp"

namespace hycoalg {

enum class SigmaKind { zeno, stability, asymptotic, res, custom };

std::string to_string(SigmaKind k);

struct MeasurementObject {
  std::string name;
  SigmaKind kind = SigmaKind::custom;
  PosetalObject posetal;
  /// Rate of the continuous measurement variable.
  std::function<double(const MeasureValue&)> sigma_c;
  /// Jump relation; `source` is the mode the plant jumps from (only RES
  /// uses it).
  std::function<HoareSet(const MeasureValue&, const Mode& source)> sigma_d;
  std::map<std::string, double> params;
  /// Dwell until sigma_d becomes available, for measurement systems whose
  /// jumps are forced by the state. Empty: jumps may happen at any time.
  std::function<double(const MeasureValue&)> forced_dwell;
  /// Source modes cycled through by the comparison tester.
  std::vector<Mode> jump_contexts{""};
  /// Bound on sup_t v(t) / v(0) for solutions, in the component that
  /// carries the lower class-K bound. nullopt when no bound is known.
  std::optional<double> growth;

  [[nodiscard]] HoareSet jump(const MeasureValue& a, const Mode& source = "") const { return sigma_d(a, source); }
};

/// sigma_c(r) = -c, sigma_d(a, r) = {(lambda a, a)} if r = 0 and empty
/// otherwise. Throws ParameterError unless c > 0 and 0 < lambda < 1; with
/// `validate` false the object is built anyway so that certificate checks
/// can report the violated parameter.
MeasurementObject make_zeno_sigma(double c, double lambda, bool validate = true);

/// sigma_c = 0, sigma_d(a) = {a}.
MeasurementObject make_stability_sigma();

struct AsymptoticParams {
  ClassK alpha3;
  std::function<double(double)> beta;
  /// Require beta(r) > 0 for r > 0.
  bool claim_convergence = false;
  double check_r_max = 10.0;
  std::size_t check_samples = 1000;
};

/// sigma_c(a) = -alpha3(a), sigma_d(a) = {a - beta(a)}. Throws
/// ParameterError when beta(r) < 0 or beta(r) > r at a sample.
MeasurementObject make_asymptotic_sigma(const AsymptoticParams& p);

struct ResParams {
  double c = 1.0;
  double epsilon = 0.1;
  /// Jump scaling kappa_e keyed by the source mode of edge e.
  std::map<Mode, double> kappa;
  /// Period length; used only for the growth bound.
  double period = 1.0;
};

/// sigma_c(a) = -(c/epsilon) a, sigma_d(a) = {kappa_e a}.
MeasurementObject make_res_sigma(const ResParams& p);

enum class OrbitSigmaKind { stability, asymptotic, res };

struct OrbitSigmaParams {
  AsymptoticParams asymptotic;
  ResParams res;
};

MeasurementObject make_orbit_sigma(OrbitSigmaKind kind, const OrbitSigmaParams& params = {});

/// mu = exp(-(c/epsilon) T) * Pi_kappa
double res_mu(double c, double epsilon, double period, double pi_kappa);
/// epsilon* = c T_min / ln Pi_kappa; +inf when Pi_kappa <= 1.
double res_epsilon_star(double c, double t_min, double pi_kappa);
/// (1/T_max)(c T_min / epsilon - ln Pi_kappa)
double res_rate_bound(double c, double epsilon, double t_min, double t_max, double pi_kappa);
/// max(1, max kappa_e)
double res_overshoot(const std::map<Mode, double>& kappa);

// ---------------------------------------------------------------------------

struct ComparisonConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 5;
  std::size_t jumps_per_trial = 6;
  std::size_t substeps = 40;
  double value_max = 5.0;
  /// Sub-solution initial value is psi(0) scaled componentwise by a factor
  /// drawn from [init_scale_lo, 1].
  double init_scale_lo = 0.5;
  /// Extra constant decay of the sub-solution, drawn from [0, max_extra_decay].
  double max_extra_decay = 0.5;
  /// Sub-solution post-jump value: an element of sigma_d scaled by a factor
  /// drawn from [sub_jump_lo, sub_jump_hi].
  double sub_jump_lo = 0.0;
  double sub_jump_hi = 1.0;
  /// Scale applied to the solution's post-jump value (1 for true solutions).
  double solution_jump_factor = 1.0;
  double min_dwell = 0.2;
  double max_dwell = 1.0;
  double tol = kTolOrd;
};

struct ComparisonReport {
  bool pass = true;
  std::size_t trials_run = 0;
  std::size_t discarded = 0;
  std::size_t comparisons = 0;
  /// min over compared times of min(psi.d - phi.d, psi.c - phi.c).
  double worst_margin = 0.0;
  std::optional<std::string> violation;
};

/// Draws solution / sub-solution pairs with phi(0) <= psi(0), evolves them
/// on a common hybrid time domain and compares them at every substep and
/// after every jump. Sub-solutions flow with extra decay and jump below
/// sigma_d; their continuous part may become negative.
ComparisonReport test_comparison_property(const MeasurementObject& m, const ComparisonConfig& cfg = {});

}  // namespace hycoalg
