#include "hycoalg/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>

#include "hycoalg/numeric.hpp"

namespace hycoalg {

double ball_upsilon(double g, const Vec& x) { return std::sqrt(std::max(0.0, x[1] * x[1] + 2.0 * g * x[0])); }

double ball_tau(double g, const Vec& x) { return (x[1] + ball_upsilon(g, x)) / g; }

namespace {

Vec ball_grad_tau(double g, const Vec& x) {
  const double u = ball_upsilon(g, x);
  return make_vec({1.0 / u, (1.0 + x[1] / u) / g});
}

Vec ball_grad_upsilon(double g, const Vec& x) {
  const double u = ball_upsilon(g, x);
  return make_vec({g / u, x[1] / u});
}

/// Class-K bounds of the ball certificate in terms of r = |x| on the ball of
/// radius R:
///   upsilon >= min(r/sqrt2, sqrt(sqrt2 g r)) >= k min(r, r^2),
///   upsilon <= r + sqrt(2g) sqrt(r),  tau <= (2r + sqrt(2g r)) / g.
struct BallBounds {
  ClassK2 lower_d, upper_d;
  ClassK upper_c;
};

BallBounds ball_bounds(double g, double c, double radius) {
  const double s2 = std::sqrt(2.0);
  const double k = std::min({1.0 / s2, std::sqrt(s2 * g), std::sqrt(s2 * g / radius)});
  const double vd_scale = 2.0 * c / g;
  BallBounds b;
  b.lower_d = ClassK2::of_discrete(ClassK::min_linear_quadratic(vd_scale * k));
  b.upper_d = ClassK2::of_discrete(ClassK::linear_plus_sqrt(vd_scale * std::max(1.0, std::sqrt(2.0 * g))));
  b.upper_c = ClassK::linear_plus_sqrt(c * std::max(2.0, std::sqrt(2.0 * g)) / g);
  return b;
}

}  // namespace

BouncingBall::BouncingBall(double g, double lambda, double c) : g_(g), lambda_(lambda), c_(c) {
  if (!(g > 0.0)) throw ParameterError("bouncing ball needs g > 0, got g=" + std::to_string(g));
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ParameterError("bouncing ball needs 0 < lambda <= 1, got lambda=" + std::to_string(lambda));
  }
  if (!(c > 0.0)) throw ParameterError("bouncing ball needs c > 0, got c=" + std::to_string(c));

  Region domain{2, {[](const Vec& x) { return x[0]; }}};
  Vertex v{kMode, domain, [g](const Vec& x) { return make_vec({x[1], -g}); }};
  Guard guard{[](const Vec& x) { return x[0]; }, [](const Vec& x) { return x[1] <= 0.0; }};
  Edge e{"impact", kMode, kMode, guard, [lambda](const Vec& x) { return make_vec({0.0, -lambda * x[1]}); }};
  auto sys = std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{e});
  hybrid_ = sys;
  coalgebra_ = std::make_shared<HCoalgebra>(encode_hybrid(*sys));
}

Vec BouncingBall::grad_V_c(const Vec& x) const { return c_ * ball_grad_tau(g_, x); }

Vec BouncingBall::grad_V_d(const Vec& x) const { return 2.0 * c_ / g_ * ball_grad_upsilon(g_, x); }

LyapunovCandidate BouncingBall::certificate(double radius) const {
  LyapunovCandidate cand;
  cand.name = "ball zeno certificate";
  const double g = g_, c = c_;
  cand.V_c = [g, c](const Vec& x) { return c * ball_tau(g, x); };
  cand.V_d = [g, c](const Mode&, const Vec& x) { return 2.0 * c / g * ball_upsilon(g, x); };
  cand.grad_V_c = [g, c](const Vec& x) -> Vec { return c * ball_grad_tau(g, x); };
  cand.grad_V_d = [g, c](const Mode&, const Vec& x) -> Vec { return 2.0 * c / g * ball_grad_upsilon(g, x); };
  const BallBounds b = ball_bounds(g, c, radius);
  cand.lower_d = b.lower_d;
  cand.upper_d = b.upper_d;
  cand.upper_c = b.upper_c;
  cand.element = GeneralizedElement::point(TaggedPoint{kMode, Vec::Zero(2)}, "origin");
  cand.target = make_zeno_sigma(c_, lambda_, false);
  return cand;
}

CertificateConfig BouncingBall::certificate_config(std::uint64_t seed) const {
  CertificateConfig cfg;
  cfg.seed = seed;
  cfg.region = {{kMode, Box(make_vec({0.0, -10.0}), make_vec({5.0, 10.0}))}};
  cfg.initial_region = {{kMode, Box(make_vec({0.0, -2.0}), make_vec({1.0, 2.0}))}};
  cfg.sim.max_jumps = 10000;
  cfg.sim.horizon = 100.0;
  return cfg;
}

double BouncingBall::zeno_time(const Vec& x) const {
  if (lambda_ >= 1.0) return std::numeric_limits<double>::infinity();
  return tau(x) + 2.0 * upsilon(x) / g_ * lambda_ / (1.0 - lambda_);
}

double BouncingBall::zeno_bound(const Vec& x) const {
  if (lambda_ >= 1.0) return std::numeric_limits<double>::infinity();
  return tau(x) + 2.0 * upsilon(x) / (g_ * (1.0 - lambda_));
}

// ---------------------------------------------------------------------------

LagrangianImpactSystem::LagrangianImpactSystem(LagrangianSpec spec, double c) : spec_(std::move(spec)), c_(c) {
  if (!(spec_.lambda > 0.0 && spec_.lambda < 1.0)) throw ParameterError("restitution must lie in (0,1)");
  if (!(spec_.kappa > 0.0)) throw ParameterError("kappa must be positive");
  if (!(c > 0.0)) throw ParameterError("c must be positive");
  if (!spec_.mass || !spec_.force || !spec_.h || !spec_.Dh) throw ParameterError("Lagrangian spec is incomplete");
  const std::size_t n = spec_.config_dim;

  // The lambdas below capture a copy of the spec so the system stays valid
  // when this object is copied or moved.
  auto sp = std::make_shared<const LagrangianSpec>(spec_);
  auto field = [sp, n](const Vec& x) -> Vec {
    Vec out(2 * n);
    out.head(n) = x.tail(n);
    out.tail(n) = sp->mass(x.head(n)).ldlt().solve(sp->force(x.head(n), x.tail(n)));
    return out;
  };
  auto reset = [sp, n](const Vec& x) -> Vec {
    const Vec th = x.head(n);
    const Vec dth = x.tail(n);
    const Vec dh = sp->Dh(th);
    const Vec minv_dh = sp->mass(th).ldlt().solve(dh);
    Vec out = x;
    out.tail(n) = dth - (1.0 + sp->lambda) * dh.dot(dth) / dh.dot(minv_dh) * minv_dh;
    return out;
  };
  Region domain{2 * n, {[sp, n](const Vec& x) { return sp->h(x.head(n)); }}};
  Vertex v{kMode, domain, field};
  // hdot <= 0 up to rounding, so that points of Z_h count as arrivals.
  Guard guard{[sp, n](const Vec& x) { return sp->h(x.head(n)); },
              [sp, n](const Vec& x) { return sp->Dh(x.head(n)).dot(x.tail(n)) <= 1e-12; }};
  Edge e{"impact", kMode, kMode, guard, reset};
  auto sys = std::make_shared<ClassicalHybridSystem>(std::vector<Vertex>{v}, std::vector<Edge>{e});
  hybrid_ = sys;
  coalgebra_ = std::make_shared<HCoalgebra>(encode_hybrid(*sys));
}

Vec LagrangianImpactSystem::field(const Vec& x) const { return hybrid_->vertex(kMode).field(x); }

Vec LagrangianImpactSystem::impact(const Vec& x) const { return hybrid_->edges().front().reset(x); }

double LagrangianImpactSystem::hddot(const Vec& x) const {
  const Vec th = theta(x);
  const Vec dth = theta_dot(x);
  const Mat H2 = spec_.D2h ? spec_.D2h(th) : numeric::central_jacobian(spec_.Dh, th);
  const Vec acc = spec_.mass(th).ldlt().solve(spec_.force(th, dth));
  return dth.dot(H2 * dth) + spec_.Dh(th).dot(acc);
}

Vec LagrangianImpactSystem::Phi(const Vec& x) const { return make_vec({h(x), hdot(x)}); }

Mat LagrangianImpactSystem::Phi_jacobian(const Vec& x) const {
  const std::size_t n = this->n();
  const Vec th = theta(x);
  const Vec dh = spec_.Dh(th);
  const Mat H2 = spec_.D2h ? spec_.D2h(th) : numeric::central_jacobian(spec_.Dh, th);
  Mat J = Mat::Zero(2, 2 * n);
  J.block(0, 0, 1, n) = dh.transpose();
  J.block(1, 0, 1, n) = (H2 * theta_dot(x)).transpose();
  J.block(1, n, 1, n) = dh.transpose();
  return J;
}

SimulationMorphism LagrangianImpactSystem::to_ball(const BouncingBall& ball, double sign) const {
  SimulationMorphism phi;
  phi.name = sign > 0 ? "Phi" : "-Phi";
  phi.source = coalgebra_;
  phi.target = ball.coalgebra();
  auto self = std::make_shared<const LagrangianImpactSystem>(*this);
  phi.phi_c = [self, sign](const Vec& x) -> Vec { return sign * self->Phi(x); };
  phi.jacobian = [self, sign](const Vec& x) -> Mat { return sign * self->Phi_jacobian(x); };
  phi.phi_d = [](const Mode&, const Vec&) -> Mode { return BouncingBall::kMode; };
  return phi;
}

LyapunovCandidate LagrangianImpactSystem::direct_certificate() const {
  const BouncingBall ball = target_ball();
  LyapunovCandidate cand = ball.certificate();
  auto self = std::make_shared<const LagrangianImpactSystem>(*this);
  const double k = kappa(), c = c_;
  cand.name = "W = V o Phi";
  cand.V_c = [self, k, c](const Vec& x) { return c * ball_tau(k, self->Phi(x)); };
  cand.V_d = [self, k, c](const Mode&, const Vec& x) { return 2.0 * c / k * ball_upsilon(k, self->Phi(x)); };
  cand.grad_V_c = [self, k, c](const Vec& x) -> Vec {
    const Vec y = self->Phi(x);
    const double u = ball_upsilon(k, y);
    const Vec dtau = make_vec({1.0 / u, (1.0 + y[1] / u) / k});
    return c * self->Phi_jacobian(x).transpose() * dtau;
  };
  cand.grad_V_d = [self, k, c](const Mode&, const Vec& x) -> Vec {
    const Vec y = self->Phi(x);
    const double u = ball_upsilon(k, y);
    const Vec dups = make_vec({k / u, y[1] / u});
    return 2.0 * c / k * self->Phi_jacobian(x).transpose() * dups;
  };
  GeneralizedElement z;
  z.name = "Z_h";
  z.analytic_distance = [self](const Vec& x) { return self->Phi(x).norm(); };
  z.analytic_discrete = [self](const Mode&, const Vec& x) { return self->Phi(x).norm(); };
  Rng rng(29);
  for (const Vec& p : sample_Zh(rng, 16)) z.image.push_back(TaggedPoint{kMode, p});
  cand.element = std::move(z);
  return cand;
}

double LagrangianImpactSystem::zeno_bound(const Vec& x) const {
  const Vec y = Phi(x);
  return ball_tau(kappa(), y) + 2.0 * ball_upsilon(kappa(), y) / (kappa() * (1.0 - lambda()));
}

std::optional<Vec> LagrangianImpactSystem::project(Vec th) const {
  for (int it = 0; it < 50; ++it) {
    const double hv = spec_.h(th);
    if (std::abs(hv) <= 1e-15) return th;
    const Vec dh = spec_.Dh(th);
    const double n2 = dh.squaredNorm();
    if (n2 < 1e-24) return std::nullopt;
    th -= (hv / n2) * dh;
  }
  if (std::abs(spec_.h(th)) <= 1e-12) return th;
  return std::nullopt;
}

std::vector<Vec> LagrangianImpactSystem::sample_Zh(Rng& rng, std::size_t count) const {
  const std::size_t n = this->n();
  std::vector<Vec> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 100 * count + 100; ++attempt) {
    const Vec x = spec_.validity.sample(rng);
    auto th = project(x.head(n));
    if (!th) continue;
    const Vec dh = spec_.Dh(*th);
    Vec dth = x.tail(n);
    dth -= dh.dot(dth) / dh.squaredNorm() * dh;
    Vec p(2 * n);
    p << *th, dth;
    if (!spec_.validity.contains(p)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<TaggedPoint> LagrangianImpactSystem::sample_guard(Rng& rng, std::size_t count) const {
  const std::size_t n = this->n();
  std::vector<TaggedPoint> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 100 * count + 100; ++attempt) {
    const Vec x = spec_.validity.sample(rng);
    auto th = project(x.head(n));
    if (!th) continue;
    const Vec dh = spec_.Dh(*th);
    Vec dth = x.tail(n);
    const double hd = dh.dot(dth);
    if (hd > 0.0) dth -= 2.0 * hd / dh.squaredNorm() * dh;
    Vec p(2 * n);
    p << *th, dth;
    if (!coalgebra_->in_domain(kMode, p)) continue;
    out.push_back(TaggedPoint{kMode, std::move(p)});
  }
  return out;
}

CertificateConfig LagrangianImpactSystem::certificate_config(std::uint64_t seed) const {
  CertificateConfig cfg;
  cfg.seed = seed;
  cfg.region = {{kMode, spec_.validity}};
  auto self = std::make_shared<const LagrangianImpactSystem>(*this);
  cfg.guard_sampler = [self](Rng& rng, std::size_t count) { return self->sample_guard(rng, count); };
  cfg.sim.max_jumps = 10000;
  cfg.sim.horizon = 100.0;
  return cfg;
}

LagrangianImpactSystem make_bowl(double beta, double g, double lambda, double c) {
  if (!(beta >= 0.0)) throw ParameterError("bowl needs beta >= 0, got beta=" + std::to_string(beta));
  if (!(g > 0.0)) throw ParameterError("bowl needs g > 0, got g=" + std::to_string(g));
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ParameterError("bowl needs 0 < lambda < 1, got lambda=" + std::to_string(lambda));
  }
  LagrangianSpec s;
  s.name = "bowl";
  s.config_dim = 2;
  s.mass = [](const Vec&) -> Mat { return Mat::Identity(2, 2); };
  s.force = [g](const Vec&, const Vec&) { return make_vec({0.0, -g}); };
  s.h = [beta](const Vec& th) { return th[1] - beta * th[0] * th[0]; };
  s.Dh = [beta](const Vec& th) { return make_vec({-2.0 * beta * th[0], 1.0}); };
  s.D2h = [beta](const Vec&) -> Mat {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = -2.0 * beta;
    return m;
  };
  s.lambda = lambda;
  s.kappa = g;
  s.validity = Box(make_vec({-1.0, 0.0, -2.0, -2.0}), make_vec({1.0, 2.0, 2.0, 2.0}));
  return LagrangianImpactSystem(std::move(s), c);
}

LagrangianImpactSystem make_lagrangian_particle(double g, double lambda, double c) {
  if (!(g > 0.0)) throw ParameterError("particle needs g > 0");
  LagrangianSpec s;
  s.name = "particle";
  s.config_dim = 1;
  s.mass = [](const Vec&) -> Mat { return Mat::Identity(1, 1); };
  s.force = [g](const Vec&, const Vec&) { return make_vec({-g}); };
  s.h = [](const Vec& th) { return th[0]; };
  s.Dh = [](const Vec&) { return make_vec({1.0}); };
  s.D2h = [](const Vec&) -> Mat { return Mat::Zero(1, 1); };
  s.lambda = lambda;
  s.kappa = g;
  s.validity = Box(make_vec({0.0, -4.0}), make_vec({3.0, 4.0}));
  return LagrangianImpactSystem(std::move(s), c);
}

// ---------------------------------------------------------------------------

SwitchingPair make_switching_pair() {
  SwitchingPair p;
  p.A1 = Mat(2, 2);
  p.A1 << -1.0, 2.0, -2.0, -1.0;
  p.A2 = Mat(2, 2);
  p.A2 << -1.0, 3.0, -3.0, -2.0;
  const Mat A1 = p.A1, A2 = p.A2;
  p.coalgebra = std::make_shared<HCoalgebra>(encode_switching(
      2, {{"A1", [A1](const Vec& x) -> Vec { return A1 * x; }}, {"A2", [A2](const Vec& x) -> Vec { return A2 * x; }}},
      Region{2, {}}));

  LyapunovCandidate& V = p.certificate;
  V.name = "common quadratic V = x^T x";
  V.V_c = [](const Vec& x) { return x.squaredNorm(); };
  V.grad_V_c = [](const Vec& x) -> Vec { return 2.0 * x; };
  V.lower_c = ClassK::power(1.0, 2.0);
  V.upper_c = ClassK::power(1.0, 2.0);
  V.element = GeneralizedElement::point(TaggedPoint{"A1", Vec::Zero(2)}, "origin");
  V.element.image.push_back(TaggedPoint{"A2", Vec::Zero(2)});
  V.target = make_stability_sigma();

  const Box box(make_vec({-2.0, -2.0}), make_vec({2.0, 2.0}));
  p.config.region = {{"A1", box}, {"A2", box}};
  p.config.sim.horizon = 5.0;
  p.config.sim.dt_max = 1e-2;
  return p;
}

// ---------------------------------------------------------------------------

SyntheticPeriodic::SyntheticPeriodic(std::vector<double> dwells, std::vector<double> kappas, double c, double epsilon)
    : dwells_(std::move(dwells)), kappas_(std::move(kappas)), c_(c), epsilon_(epsilon) {
  if (dwells_.empty() || dwells_.size() != kappas_.size()) {
    throw ParameterError("synthetic periodic system needs K >= 1 dwell times and as many kappas");
  }
  for (std::size_t k = 0; k < dwells_.size(); ++k) {
    if (!(dwells_[k] > 0.0)) throw ParameterError("dwell" + std::to_string(k) + " must be positive");
    if (!(kappas_[k] > 0.0)) throw ParameterError("kappa" + std::to_string(k) + " must be positive");
  }
  if (!(c > 0.0) || !(epsilon > 0.0)) throw ParameterError("c and epsilon must be positive");

  const double rate = c / (2.0 * epsilon);
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  const std::size_t K = dwells_.size();
  for (std::size_t k = 0; k < K; ++k) {
    const double dwell = dwells_[k];
    const double scale = std::sqrt(kappas_[k]);
    vertices.push_back(Vertex{mode(k), Region{2, {[dwell](const Vec& x) { return dwell - x[0]; }}},
                              [rate](const Vec& x) { return make_vec({1.0, -rate * x[1]}); }});
    edges.push_back(Edge{"e" + std::to_string(k), mode(k), mode((k + 1) % K),
                         Guard{[dwell](const Vec& x) { return dwell - x[0]; }, {}},
                         [scale](const Vec& x) { return make_vec({0.0, scale * x[1]}); }});
  }
  auto sys = std::make_shared<ClassicalHybridSystem>(std::move(vertices), std::move(edges));
  hybrid_ = sys;
  coalgebra_ = std::make_shared<HCoalgebra>(encode_hybrid(*sys));
}

double SyntheticPeriodic::period() const { return std::accumulate(dwells_.begin(), dwells_.end(), 0.0); }

double SyntheticPeriodic::pi_kappa() const {
  return std::accumulate(kappas_.begin(), kappas_.end(), 1.0, std::multiplies<>());
}

double SyntheticPeriodic::epsilon_star() const { return res_epsilon_star(c_, t_min(), pi_kappa()); }

double SyntheticPeriodic::mu() const { return res_mu(c_, epsilon_, period(), pi_kappa()); }

double SyntheticPeriodic::rate_bound() const { return res_rate_bound(c_, epsilon_, t_min(), t_max(), pi_kappa()); }

LyapunovCandidate SyntheticPeriodic::certificate() const {
  LyapunovCandidate V;
  V.name = "V_eps = y^2";
  V.V_c = [](const Vec& x) { return x[1] * x[1]; };
  V.grad_V_c = [](const Vec& x) { return make_vec({0.0, 2.0 * x[1]}); };
  V.lower_c = ClassK::power(1.0, 2.0);
  V.upper_c = ClassK::power(1.0, 2.0);
  V.element = orbit().as_element([](const Vec& x) { return std::abs(x[1]); });
  ResParams rp;
  rp.c = c_;
  rp.epsilon = epsilon_;
  rp.period = period();
  for (std::size_t k = 0; k < K(); ++k) rp.kappa[mode(k)] = kappas_[k];
  V.target = make_res_sigma(rp);
  return V;
}

CertificateConfig SyntheticPeriodic::certificate_config(std::uint64_t seed) const {
  CertificateConfig cfg;
  cfg.seed = seed;
  for (std::size_t k = 0; k < K(); ++k) {
    cfg.region[mode(k)] = Box(make_vec({0.0, -2.0}), make_vec({dwells_[k], 2.0}));
  }
  cfg.sim.horizon = 3.0 * period();
  return cfg;
}

PeriodicOrbitElement SyntheticPeriodic::orbit() const {
  SimConfig sim;
  sim.dt_max = 1e-2;
  sim.horizon = 2.0 * period() + 1.0;
  return build_periodic_orbit(*coalgebra_, TaggedPoint{mode(0), Vec::Zero(2)}, K(), sim);
}

ResMeasurement measure_res_decay(const SyntheticPeriodic& sys, double y0, std::size_t periods, SimConfig sim) {
  if (periods == 0) throw ValidationError("need at least one period");
  sim.max_jumps = sys.K() * periods;
  sim.horizon = periods * sys.period() + 1.0;
  const SimulationResult res = simulate(*sys.coalgebra(), TaggedPoint{SyntheticPeriodic::mode(0), make_vec({0.0, y0})}, sim);
  const auto& iv = res.execution.intervals;
  if (iv.size() < sys.K() * periods + 1) throw SimulationError("fewer jumps than requested periods", std::nullopt, 0.0);

  ResMeasurement m;
  std::vector<double> ts, logs;
  for (std::size_t p = 0; p <= periods; ++p) {
    const Sample& s = iv[p * sys.K()].samples.front();
    ts.push_back(s.t);
    logs.push_back(std::log(s.x[1] * s.x[1]));
  }
  for (std::size_t p = 1; p <= periods; ++p) m.per_period.push_back(std::exp(logs[p] - logs[p - 1]));
  m.mean_factor = std::exp((logs.back() - logs.front()) / static_cast<double>(periods));
  const double n = static_cast<double>(ts.size());
  const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
  const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (logs[i] - ml);
    sxx += (ts[i] - mt) * (ts[i] - mt);
  }
  m.fitted_rate = -sxy / sxx;
  return m;
}

// ---------------------------------------------------------------------------

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"bouncing-ball",
       "Ball bouncing on the floor x1 = 0 with restitution lambda",
       {{"g", std::nullopt, "gravity (> 0)"},
        {"lambda", std::nullopt, "restitution in (0, 1]"},
        {"c", 1.0, "decay rate of the Zeno certificate (> 0)"}},
       {1.0, 0.0}},
      {"bowl",
       "Unit-mass particle above the parabola theta2 = beta theta1^2",
       {{"beta", std::nullopt, "curvature of the bowl (>= 0)"},
        {"g", 10.0, "gravity (> 0)"},
        {"lambda", 0.5, "restitution in (0, 1)"},
        {"c", 1.0, "decay rate of the transferred certificate (> 0)"}},
       {0.3, 0.5, 0.0, 0.0}},
      {"switching-pair", "Switching between A1 = [[-1,2],[-2,-1]] and A2 = [[-1,3],[-3,-2]]", {}, {1.0, 1.0}},
      {"synthetic-periodic",
       "Ring of K modes with a known hybrid periodic orbit y = 0",
       {{"K", 2.0, "number of modes / jumps per period"},
        {"c", 1.0, "contraction rate (> 0)"},
        {"epsilon", 0.1, "RES tuning parameter (> 0)"},
        {"dwell0", 0.4, "dwell time of mode m0; dwell<k> for k < K"},
        {"dwell1", 0.6, "dwell time of mode m1"},
        {"kappa0", 1.5, "jump scaling of V on leaving m0; kappa<k> for k < K"},
        {"kappa1", 4.0 / 3.0, "jump scaling of V on leaving m1"}},
       {0.0, 1.0}},
  };
  return entries;
}

nlohmann::json registry_schema() {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& e : registry()) {
    nlohmann::json props = nlohmann::json::object();
    nlohmann::json required = nlohmann::json::array();
    for (const auto& p : e.params) {
      nlohmann::json prop = {{"type", "number"}, {"description", p.description}};
      if (p.default_value) {
        prop["default"] = *p.default_value;
      } else {
        required.push_back(p.name);
      }
      props[p.name] = prop;
    }
    nlohmann::json schema = {{"type", "object"},
                             {"description", e.description},
                             {"properties", props},
                             {"required", required},
                             {"default_init", e.default_init}};
    if (e.name == "synthetic-periodic") {
      schema["patternProperties"] = {{"^(dwell|kappa)[0-9]+$", {{"type", "number"}}}};
    } else {
      schema["additionalProperties"] = false;
    }
    out[e.name] = schema;
  }
  return out;
}

std::map<std::string, double> resolve_params(const RegistryEntry& entry, const std::map<std::string, double>& given) {
  static const std::regex indexed("^(dwell|kappa)[0-9]+$");
  std::map<std::string, double> out;
  for (const auto& [name, value] : given) {
    const bool known = std::any_of(entry.params.begin(), entry.params.end(),
                                   [&](const ParamSpec& p) { return p.name == name; }) ||
                       (entry.name == "synthetic-periodic" && std::regex_match(name, indexed));
    if (!known) throw ValidationError("unknown parameter '" + name + "' for system '" + entry.name + "'");
    if (!std::isfinite(value)) throw ValidationError("parameter '" + name + "' must be finite");
    out[name] = value;
  }
  for (const auto& p : entry.params) {
    if (out.count(p.name)) continue;
    if (!p.default_value) throw ValidationError("missing required parameter '" + p.name + "' for system '" + entry.name + "'");
    out[p.name] = *p.default_value;
  }
  return out;
}

BuiltSystem build_system(const std::string& name, const std::map<std::string, double>& given) {
  const auto& entries = registry();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const RegistryEntry& e) { return e.name == name; });
  if (it == entries.end()) throw ValidationError("unknown system '" + name + "'");
  BuiltSystem out;
  out.name = name;
  out.params = resolve_params(*it, given);
  out.default_init = it->default_init;
  const auto& p = out.params;

  if (name == "bouncing-ball") {
    BouncingBall ball(p.at("g"), p.at("lambda"), p.at("c"));
    out.coalgebra = ball.coalgebra();
    out.default_mode = BouncingBall::kMode;
    out.certificate = ball.certificate();
    out.certificate_config = ball.certificate_config();
    out.ball = std::move(ball);
  } else if (name == "bowl") {
    LagrangianImpactSystem bowl = make_bowl(p.at("beta"), p.at("g"), p.at("lambda"), p.at("c"));
    out.coalgebra = bowl.coalgebra();
    out.default_mode = LagrangianImpactSystem::kMode;
    out.certificate = bowl.direct_certificate();
    out.certificate_config = bowl.certificate_config();
    out.lagrangian = std::move(bowl);
  } else if (name == "switching-pair") {
    SwitchingPair sp = make_switching_pair();
    out.coalgebra = sp.coalgebra;
    out.default_mode = "A1";
    out.certificate = sp.certificate;
    out.certificate_config = sp.config;
  } else {
    const double kd = p.at("K");
    if (kd < 1.0 || kd != std::floor(kd) || kd > 64.0) throw ValidationError("K must be an integer in [1, 64]");
    const auto K = static_cast<std::size_t>(kd);
    std::vector<double> dwells, kappas;
    for (std::size_t k = 0; k < K; ++k) {
      const std::string dn = "dwell" + std::to_string(k), kn = "kappa" + std::to_string(k);
      if (!p.count(dn)) throw ValidationError("missing required parameter '" + dn + "' for system '" + name + "'");
      if (!p.count(kn)) throw ValidationError("missing required parameter '" + kn + "' for system '" + name + "'");
      dwells.push_back(p.at(dn));
      kappas.push_back(p.at(kn));
    }
    for (const auto& [pn, v] : given) {
      std::smatch m;
      static const std::regex idx("^(dwell|kappa)([0-9]+)$");
      if (std::regex_match(pn, m, idx) && std::stoul(m[2].str()) >= K) {
        throw ValidationError("parameter '" + pn + "' exceeds K = " + std::to_string(K));
      }
    }
    SyntheticPeriodic sys(dwells, kappas, p.at("c"), p.at("epsilon"));
    out.coalgebra = sys.coalgebra();
    out.default_mode = SyntheticPeriodic::mode(0);
    out.certificate = sys.certificate();
    out.certificate_config = sys.certificate_config();
    out.periodic = std::move(sys);
  }
  return out;
}

}  // namespace hycoalg
