#pragma once

// Built-in example systems with analytic Lyapunov data.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hycoalg/coalgebra.hpp"
#include "hycoalg/elements.hpp"
#include "hycoalg/lyapunov.hpp"
#include "hycoalg/transfer.hpp"
#include "hycoalg/zeno.hpp"

namespace hycoalg {

// ---------------------------------------------------------------------------
// Bouncing ball

/// Time to the next impact and impact speed of a ballistic state
/// (x1 height, x2 velocity) under gravity g. Negative radicands are
/// clamped to zero.
double ball_tau(double g, const Vec& x);
double ball_upsilon(double g, const Vec& x);

class BouncingBall {
 public:
  /// Throws ParameterError unless g > 0, c > 0 and 0 < lambda <= 1.
  /// lambda = 1 is accepted so that certificate checks can report it.
  BouncingBall(double g, double lambda, double c = 1.0);

  static constexpr const char* kMode = "ball";

  [[nodiscard]] double g() const { return g_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] const std::shared_ptr<const ClassicalHybridSystem>& hybrid() const { return hybrid_; }
  [[nodiscard]] const std::shared_ptr<const HCoalgebra>& coalgebra() const { return coalgebra_; }

  [[nodiscard]] double tau(const Vec& x) const { return ball_tau(g_, x); }
  [[nodiscard]] double upsilon(const Vec& x) const { return ball_upsilon(g_, x); }
  [[nodiscard]] double V_c(const Vec& x) const { return c_ * tau(x); }
  [[nodiscard]] double V_d(const Vec& x) const { return 2.0 * c_ / g_ * upsilon(x); }
  [[nodiscard]] Vec grad_V_c(const Vec& x) const;
  [[nodiscard]] Vec grad_V_d(const Vec& x) const;

  /// Zeno certificate (V_c, V_d) with class-K bounds valid on the ball of
  /// radius `radius` around the origin.
  [[nodiscard]] LyapunovCandidate certificate(double radius = 12.0) const;
  /// Check region x1 in [0,5], x2 in [-10,10]; initial conditions for the
  /// empirical validation from x1 in [0,1], x2 in [-2,2].
  [[nodiscard]] CertificateConfig certificate_config(std::uint64_t seed = 1) const;

  // Closed-form oracles.
  [[nodiscard]] double next_impact_time(const Vec& x) const { return tau(x); }
  [[nodiscard]] double impact_speed(const Vec& x) const { return upsilon(x); }
  /// tau_0 + (2 upsilon_0 / g) lambda / (1 - lambda)
  [[nodiscard]] double zeno_time(const Vec& x) const;
  /// tau_0 + 2 upsilon_0 / (g (1 - lambda))
  [[nodiscard]] double zeno_bound(const Vec& x) const;

 private:
  double g_, lambda_, c_;
  std::shared_ptr<const ClassicalHybridSystem> hybrid_;
  std::shared_ptr<const HCoalgebra> coalgebra_;
};

// ---------------------------------------------------------------------------
// Lagrangian systems with a unilateral constraint

struct LagrangianSpec {
  std::string name;
  std::size_t config_dim = 1;
  std::function<Mat(const Vec& theta)> mass;
  std::function<Vec(const Vec& theta, const Vec& theta_dot)> force;
  std::function<double(const Vec& theta)> h;
  std::function<Vec(const Vec& theta)> Dh;
  /// Hessian of h; central differences of Dh when empty.
  std::function<Mat(const Vec& theta)> D2h;
  double lambda = 0.5;
  /// Lower bound on -hddot on the validity box.
  double kappa = 1.0;
  /// Validity box U in (theta, theta_dot) coordinates.
  Box validity;
};

/// State x = (theta, theta_dot). Flow (theta_dot, M^-1 H), guard h = 0 with
/// hdot <= 0, reset by the Newtonian impact law
/// theta_dot+ = theta_dot - (1 + lambda) (Dh theta_dot)/(Dh M^-1 Dh^T) M^-1 Dh^T.
class LagrangianImpactSystem {
 public:
  explicit LagrangianImpactSystem(LagrangianSpec spec, double c = 1.0);

  static constexpr const char* kMode = "lagrangian";

  [[nodiscard]] const LagrangianSpec& spec() const { return spec_; }
  [[nodiscard]] std::size_t n() const { return spec_.config_dim; }
  [[nodiscard]] double kappa() const { return spec_.kappa; }
  [[nodiscard]] double lambda() const { return spec_.lambda; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] const std::shared_ptr<const ClassicalHybridSystem>& hybrid() const { return hybrid_; }
  [[nodiscard]] const std::shared_ptr<const HCoalgebra>& coalgebra() const { return coalgebra_; }

  [[nodiscard]] Vec theta(const Vec& x) const { return x.head(n()); }
  [[nodiscard]] Vec theta_dot(const Vec& x) const { return x.tail(n()); }
  [[nodiscard]] Vec field(const Vec& x) const;
  [[nodiscard]] Vec impact(const Vec& x) const;
  [[nodiscard]] double h(const Vec& x) const { return spec_.h(theta(x)); }
  [[nodiscard]] double hdot(const Vec& x) const { return spec_.Dh(theta(x)).dot(theta_dot(x)); }
  /// d^2 h / dt^2 along the flow.
  [[nodiscard]] double hddot(const Vec& x) const;

  /// Phi(theta, theta_dot) = (h, hdot) and its Jacobian.
  [[nodiscard]] Vec Phi(const Vec& x) const;
  [[nodiscard]] Mat Phi_jacobian(const Vec& x) const;

  /// The bouncing ball with gravity kappa that this system simulates.
  [[nodiscard]] BouncingBall target_ball() const { return BouncingBall(kappa(), lambda(), c_); }
  [[nodiscard]] SimulationMorphism to_ball(const BouncingBall& ball, double sign = 1.0) const;

  /// W = V_ball o Phi written out directly.
  [[nodiscard]] LyapunovCandidate direct_certificate() const;
  /// tau_{kappa,0} + 2 upsilon_{kappa,0} / (kappa (1 - lambda))
  [[nodiscard]] double zeno_bound(const Vec& x) const;

  /// Points on Z_h = {h = 0, hdot = 0}: theta on the constraint surface and
  /// theta_dot tangent to it, drawn from the validity box.
  [[nodiscard]] std::vector<Vec> sample_Zh(Rng& rng, std::size_t count) const;
  /// Guard points: theta on the surface with hdot <= 0.
  [[nodiscard]] std::vector<TaggedPoint> sample_guard(Rng& rng, std::size_t count) const;
  [[nodiscard]] CertificateConfig certificate_config(std::uint64_t seed = 1) const;

 private:
  /// Projects theta onto h = 0 by Newton steps along Dh.
  [[nodiscard]] std::optional<Vec> project(Vec theta) const;

  LagrangianSpec spec_;
  double c_;
  std::shared_ptr<const ClassicalHybridSystem> hybrid_;
  std::shared_ptr<const HCoalgebra> coalgebra_;
};

/// Unit-mass particle above the parabola theta2 = beta theta1^2 under
/// gravity g. hddot = -g - 2 beta theta1_dot^2, so kappa = g everywhere.
LagrangianImpactSystem make_bowl(double beta, double g, double lambda, double c = 1.0);

/// One-dimensional particle above the floor h(theta) = theta.
LagrangianImpactSystem make_lagrangian_particle(double g, double lambda, double c = 1.0);

// ---------------------------------------------------------------------------
// Switching pair

struct SwitchingPair {
  std::shared_ptr<const HCoalgebra> coalgebra;
  Mat A1, A2;
  /// V = x^T x into the stability measurement object.
  LyapunovCandidate certificate;
  CertificateConfig config;
};

SwitchingPair make_switching_pair();

// ---------------------------------------------------------------------------
// Synthetic periodic system

/// K modes m0..m{K-1} visited in a ring. State (clock, y): the clock runs at
/// unit rate and mode k jumps when it reaches dwell_k; y decays at rate
/// c/(2 epsilon) and is scaled by sqrt(kappa_k) at the jump, so
/// V = y^2 satisfies the RES conditions with equality. The orbit is y = 0.
class SyntheticPeriodic {
 public:
  SyntheticPeriodic(std::vector<double> dwells, std::vector<double> kappas, double c = 1.0, double epsilon = 0.1);

  [[nodiscard]] std::size_t K() const { return dwells_.size(); }
  [[nodiscard]] double period() const;
  [[nodiscard]] double t_min() const { return period(); }
  [[nodiscard]] double t_max() const { return period(); }
  [[nodiscard]] double pi_kappa() const;
  [[nodiscard]] double epsilon_star() const;
  [[nodiscard]] double mu() const;
  [[nodiscard]] double rate_bound() const;
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double epsilon() const { return epsilon_; }
  [[nodiscard]] static Mode mode(std::size_t k) { return "m" + std::to_string(k); }
  [[nodiscard]] const std::shared_ptr<const HCoalgebra>& coalgebra() const { return coalgebra_; }
  [[nodiscard]] const std::shared_ptr<const ClassicalHybridSystem>& hybrid() const { return hybrid_; }

  [[nodiscard]] LyapunovCandidate certificate() const;
  [[nodiscard]] CertificateConfig certificate_config(std::uint64_t seed = 1) const;
  [[nodiscard]] PeriodicOrbitElement orbit() const;

 private:
  std::vector<double> dwells_, kappas_;
  double c_, epsilon_;
  std::shared_ptr<const ClassicalHybridSystem> hybrid_;
  std::shared_ptr<const HCoalgebra> coalgebra_;
};

struct ResMeasurement {
  /// V at the start of each period divided by V at the start of the previous one.
  std::vector<double> per_period;
  double mean_factor = 0.0;
  /// -slope of a least-squares fit of ln V at period starts against time.
  double fitted_rate = 0.0;
};

ResMeasurement measure_res_decay(const SyntheticPeriodic& sys, double y0, std::size_t periods, SimConfig sim = {});

// ---------------------------------------------------------------------------
// Registry

struct ParamSpec {
  std::string name;
  std::optional<double> default_value;
  std::string description;
};

struct RegistryEntry {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  std::vector<double> default_init;
};

const std::vector<RegistryEntry>& registry();
nlohmann::json registry_schema();

/// A registry system with its parameters resolved.
struct BuiltSystem {
  std::string name;
  std::map<std::string, double> params;
  std::shared_ptr<const HCoalgebra> coalgebra;
  Mode default_mode;
  std::vector<double> default_init;
  std::optional<LyapunovCandidate> certificate;
  CertificateConfig certificate_config;
  std::optional<BouncingBall> ball;
  std::optional<LagrangianImpactSystem> lagrangian;
  std::optional<SyntheticPeriodic> periodic;
};

/// Resolves defaults, rejects unknown parameters and names missing
/// required ones (ValidationError).
std::map<std::string, double> resolve_params(const RegistryEntry& entry, const std::map<std::string, double>& given);
BuiltSystem build_system(const std::string& name, const std::map<std::string, double>& params);

}  // namespace hycoalg
