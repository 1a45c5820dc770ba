#pragma once

// Lyapunov certificates for H-coalgebras.
//
// A candidate V = (V_d, V_c) maps the plant into a measurement object. The
// checker samples the state space and verifies positive definiteness
// against class-K bounds, the flow condition dV_c/dt . f_c <= sigma_c(V),
// and the jump condition V(f_d(s,x)) <= sigma_d(V(s,x)) in the Hoare order.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hycoalg/coalgebra.hpp"
#include "hycoalg/measurement.hpp"
#include "hycoalg/order.hpp"
#include "hycoalg/simulator.hpp"

namespace hycoalg {

struct LyapunovCandidate {
  std::string name;
  std::function<double(const Vec&)> V_c;
  /// Empty for measurement objects with a trivial discrete part.
  std::function<double(const Mode&, const Vec&)> V_d;
  /// Analytic gradients; central differences are used when empty.
  std::function<Vec(const Vec&)> grad_V_c;
  std::function<Vec(const Mode&, const Vec&)> grad_V_d;
  std::optional<ClassK> lower_c;
  std::optional<ClassK> upper_c;
  std::optional<ClassK2> lower_d;
  std::optional<ClassK2> upper_d;
  GeneralizedElement element;
  MeasurementObject target;

  [[nodiscard]] MeasureValue value(const Mode& s, const Vec& x) const;
  [[nodiscard]] double vd(const Mode& s, const Vec& x) const { return V_d ? V_d(s, x) : 0.0; }
  [[nodiscard]] Vec gradient_c(const Vec& x) const;
  [[nodiscard]] Vec gradient_d(const Mode& s, const Vec& x) const;
};

struct Tolerances {
  double abs = 1e-7;
  double rel = 1e-6;
  double guard = 1e-8;

  [[nodiscard]] double at(double scale) const;
};

/// Outcome of one sampled inequality. The margin is (right side - left
/// side); the check passes when every margin is >= -tolerance.
struct CheckResult {
  std::string name;
  bool pass = true;
  double worst_margin = 0.0;
  double max_margin = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  /// Point with the smallest margin.
  std::optional<TaggedPoint> witness;
  std::string detail;

  void record(double margin, double tol, const TaggedPoint& at, const std::string& what = {});
  void fail(const std::string& why, std::optional<TaggedPoint> at);
};

struct CheckSamples {
  std::vector<TaggedPoint> interior;
  std::vector<TaggedPoint> guard;
};

/// Checks lower_c(||x||^c) <= V_c(x) <= upper_c(||x||^c) and the analogous
/// two-argument bounds on V_d, for whichever bounds the candidate carries.
/// Names: pd:lower_c, pd:upper_c, pd:lower_d, pd:upper_d.
std::vector<CheckResult> check_positive_definite(const LyapunovCandidate& cand, const std::vector<TaggedPoint>& pts,
                                                 const Tolerances& tol = {});

/// grad V_c . f_c <= sigma_c(V) at interior samples. Name: flow.
CheckResult check_flow_condition(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                 const std::vector<TaggedPoint>& pts, const Tolerances& tol = {});

/// Hoare comparison of the jump image with sigma_d. Name: jump.
CheckResult check_jump_condition(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                 const std::vector<TaggedPoint>& guard_pts, const Tolerances& tol = {});

/// The Zeno specialization: flow:zeno_flow (grad V_c . f <= -c),
/// jump:zeno_guard (V_c = 0 on guards), jump:zeno_jump_Vd
/// (V_d after reset <= lambda V_d), jump:zeno_jump_Vc (V_c after reset <=
/// V_d) and, when requested, flow:zeno_flow_Vd (grad V_d . f <= 0).
std::vector<CheckResult> check_zeno_conditions(const HCoalgebra& sys, const LyapunovCandidate& cand, double c,
                                               double lambda, const CheckSamples& samples, bool also_check_Vd_flow,
                                               const Tolerances& tol = {});

struct CertificateConfig {
  /// Interior sample boxes per mode.
  std::map<Mode, Box> region;
  std::size_t interior_samples = 1000;
  std::size_t guard_samples = 100;
  /// Custom guard sampler; defaults to projection onto classical guards or
  /// rejection sampling where f_d is nonempty.
  std::function<std::vector<TaggedPoint>(Rng&, std::size_t)> guard_sampler;
  std::uint64_t seed = 1;
  Tolerances tol;
  bool also_check_Vd_flow = false;
  bool run_comparison = true;
  ComparisonConfig comparison;
  bool run_empirical = true;
  std::size_t empirical_trajectories = 50;
  /// Boxes for initial conditions of the empirical validation; defaults to
  /// `region`.
  std::map<Mode, Box> initial_region;
  SimConfig sim;
  double empirical_slack = 1e-6;
};

/// alpha(r) = lower^{-1}(growth * upper(r)) on one component.
struct DerivedAlpha {
  std::string component;
  std::string construction;
  double growth = 1.0;
  ClassK alpha;
  std::vector<std::pair<double, double>> table;
};

struct EmpiricalValidation {
  bool ran = false;
  bool pass = true;
  std::size_t trajectories = 0;
  std::size_t points = 0;
  /// max over recorded points of ||gamma(j,t)|| / (alpha(||gamma(0,0)||)(1+slack)).
  double worst_ratio = 0.0;
  std::optional<TaggedPoint> witness;
  std::string note;
};

struct CertificateReport {
  bool pass = true;
  std::vector<CheckResult> checks;
  std::optional<ComparisonReport> comparison;
  std::optional<DerivedAlpha> derived_alpha;
  EmpiricalValidation empirical;
  std::vector<std::string> notes;

  [[nodiscard]] const CheckResult* find(const std::string& name) const;
  [[nodiscard]] std::vector<std::string> failing() const;
};

CheckSamples draw_samples(const HCoalgebra& sys, const CertificateConfig& cfg);

/// Runs every applicable check. When all pass, reports the derived alpha
/// and validates it on simulated trajectories.
CertificateReport check_certificate(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                    const CertificateConfig& cfg = {});

/// Same as check_certificate on pre-drawn samples.
CertificateReport check_certificate(const HCoalgebra& sys, const LyapunovCandidate& cand, const CheckSamples& samples,
                                    const CertificateConfig& cfg);

std::optional<DerivedAlpha> derive_alpha(const LyapunovCandidate& cand);

/// Distance of a point to the candidate's element, in the component the
/// derived alpha is expressed in.
double element_distance(const LyapunovCandidate& cand, const Mode& s, const Vec& x, bool upper);

}  // namespace hycoalg
