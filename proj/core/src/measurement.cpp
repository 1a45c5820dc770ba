#include "hycoalg/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hycoalg {

std::string to_string(SigmaKind k) {
  switch (k) {
    case SigmaKind::zeno: return "zeno";
    case SigmaKind::stability: return "stability";
    case SigmaKind::asymptotic: return "asymptotic";
    case SigmaKind::res: return "res";
    case SigmaKind::custom: return "custom";
  }
  return "custom";
}

MeasurementObject make_zeno_sigma(double c, double lambda, bool validate) {
  if (validate && !(c > 0.0)) throw ParameterError("zeno sigma needs c > 0, got " + std::to_string(c));
  if (validate && !(lambda > 0.0 && lambda < 1.0)) {
    throw ParameterError("zeno sigma needs 0 < lambda < 1, got lambda=" + std::to_string(lambda));
  }
  MeasurementObject m;
  m.name = "zeno";
  m.kind = SigmaKind::zeno;
  m.posetal = PosetalObject::paired();
  m.sigma_c = [c](const MeasureValue&) { return -c; };
  m.sigma_d = [lambda](const MeasureValue& v, const Mode&) -> HoareSet {
    if (v.c > 0.0) return {};
    return {MeasureValue{lambda * v.d, v.d}};
  };
  m.forced_dwell = [c](const MeasureValue& v) { return c > 0.0 ? std::max(v.c, 0.0) / c : 0.0; };
  m.params = {{"c", c}, {"lambda", lambda}};
  m.growth = 1.0;
  return m;
}

MeasurementObject make_stability_sigma() {
  MeasurementObject m;
  m.name = "stability";
  m.kind = SigmaKind::stability;
  m.posetal = PosetalObject::trivial();
  m.sigma_c = [](const MeasureValue&) { return 0.0; };
  m.sigma_d = [](const MeasureValue& v, const Mode&) -> HoareSet { return {MeasureValue{0.0, v.c}}; };
  m.growth = 1.0;
  return m;
}

MeasurementObject make_asymptotic_sigma(const AsymptoticParams& p) {
  if (!p.alpha3 || !p.beta) throw ParameterError("asymptotic sigma needs alpha3 and beta");
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, p.check_r_max);
  for (std::size_t i = 0; i < p.check_samples; ++i) {
    const double r = u(rng);
    const double b = p.beta(r);
    if (b < 0.0 || b > r) {
      throw ParameterError("beta(" + std::to_string(r) + ") = " + std::to_string(b) + " violates 0 <= beta(r) <= r");
    }
    if (p.claim_convergence && r > 0.0 && !(b > 0.0)) {
      throw ParameterError("beta(" + std::to_string(r) + ") = 0; convergence needs beta(r) > 0 for r > 0");
    }
  }
  MeasurementObject m;
  m.name = "asymptotic";
  m.kind = SigmaKind::asymptotic;
  m.posetal = PosetalObject::trivial();
  auto alpha3 = p.alpha3;
  auto beta = p.beta;
  m.sigma_c = [alpha3](const MeasureValue& v) { return -alpha3(std::max(v.c, 0.0)); };
  m.sigma_d = [beta](const MeasureValue& v, const Mode&) -> HoareSet { return {MeasureValue{0.0, v.c - beta(v.c)}}; };
  m.growth = 1.0;
  return m;
}

double res_mu(double c, double epsilon, double period, double pi_kappa) {
  return std::exp(-(c / epsilon) * period) * pi_kappa;
}

double res_epsilon_star(double c, double t_min, double pi_kappa) {
  if (pi_kappa <= 1.0) return std::numeric_limits<double>::infinity();
  return c * t_min / std::log(pi_kappa);
}

double res_rate_bound(double c, double epsilon, double t_min, double t_max, double pi_kappa) {
  return (c * t_min / epsilon - std::log(pi_kappa)) / t_max;
}

double res_overshoot(const std::map<Mode, double>& kappa) {
  double out = 1.0;
  for (const auto& [mode, k] : kappa) out = std::max(out, k);
  return out;
}

MeasurementObject make_res_sigma(const ResParams& p) {
  if (!(p.c > 0.0) || !(p.epsilon > 0.0)) throw ParameterError("RES sigma needs c > 0 and epsilon > 0");
  if (p.kappa.empty()) throw ParameterError("RES sigma needs at least one kappa_e");
  double pi = 1.0;
  for (const auto& [mode, k] : p.kappa) {
    if (!(k > 0.0)) throw ParameterError("kappa for '" + mode + "' must be positive");
    pi *= k;
  }
  MeasurementObject m;
  m.name = "res";
  m.kind = SigmaKind::res;
  m.posetal = PosetalObject::trivial();
  const double rate = p.c / p.epsilon;
  m.sigma_c = [rate](const MeasureValue& v) { return -rate * v.c; };
  auto kappa = p.kappa;
  m.sigma_d = [kappa](const MeasureValue& v, const Mode& source) -> HoareSet {
    auto it = kappa.find(source);
    if (it == kappa.end()) return {};
    return {MeasureValue{0.0, it->second * v.c}};
  };
  m.params = {{"c", p.c}, {"epsilon", p.epsilon}, {"pi_kappa", pi}, {"period", p.period}};
  m.jump_contexts.clear();
  for (const auto& [mode, k] : p.kappa) m.jump_contexts.push_back(mode);
  if (res_mu(p.c, p.epsilon, p.period, pi) < 1.0) m.growth = res_overshoot(p.kappa);
  return m;
}

MeasurementObject make_orbit_sigma(OrbitSigmaKind kind, const OrbitSigmaParams& params) {
  switch (kind) {
    case OrbitSigmaKind::stability: return make_stability_sigma();
    case OrbitSigmaKind::asymptotic: return make_asymptotic_sigma(params.asymptotic);
    case OrbitSigmaKind::res: return make_res_sigma(params.res);
  }
  throw ParameterError("unknown orbit sigma kind");
}

// ---------------------------------------------------------------------------

namespace {

MeasureValue clamp(MeasureValue v) {
  v.c = std::max(v.c, 0.0);
  v.d = std::max(v.d, 0.0);
  return v;
}

MeasureValue largest(const HoareSet& s) {
  return *std::max_element(s.begin(), s.end(),
                           [](const MeasureValue& a, const MeasureValue& b) { return a.d + a.c < b.d + b.c; });
}

}  // namespace

ComparisonReport test_comparison_property(const MeasurementObject& m, const ComparisonConfig& cfg) {
  ComparisonReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const bool trivial = m.posetal.kind == PosetKind::trivial_discrete;
  const std::vector<Mode> contexts = m.jump_contexts.empty() ? std::vector<Mode>{""} : m.jump_contexts;

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    MeasureValue psi{trivial ? 0.0 : uniform(0.0, cfg.value_max), uniform(0.0, cfg.value_max)};
    MeasureValue phi{psi.d * uniform(cfg.init_scale_lo, 1.0), psi.c * uniform(cfg.init_scale_lo, 1.0)};
    const double delta = uniform(0.0, cfg.max_extra_decay);
    bool discarded = false;
    std::optional<std::string> violation;

    auto compare = [&](double t, std::size_t j) {
      ++rep.comparisons;
      rep.worst_margin = std::min(rep.worst_margin, std::min(psi.d - phi.d, psi.c - phi.c));
      if (!violation && !value_leq(phi, psi, cfg.tol)) {
        violation = "trial " + std::to_string(trial) + " at (j=" + std::to_string(j) + ", t=" + std::to_string(t) +
                    "): phi=" + to_string(phi) + " exceeds psi=" + to_string(psi);
      }
    };

    double t = 0.0;
    compare(t, 0);
    for (std::size_t j = 0; j < cfg.jumps_per_trial && !violation; ++j) {
      const double dwell = m.forced_dwell ? m.forced_dwell(psi) : uniform(cfg.min_dwell, cfg.max_dwell);
      const double h = dwell / static_cast<double>(cfg.substeps);
      auto psi_rate = [&](double c) { return m.sigma_c(MeasureValue{psi.d, c}); };
      auto phi_rate = [&](double c) { return m.sigma_c(clamp(MeasureValue{phi.d, c})) - delta; };
      for (std::size_t k = 0; k < cfg.substeps && h > 0.0; ++k) {
        auto rk4 = [h](auto&& f, double y) {
          const double k1 = f(y), k2 = f(y + 0.5 * h * k1), k3 = f(y + 0.5 * h * k2), k4 = f(y + h * k3);
          return y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        };
        psi.c = rk4(psi_rate, psi.c);
        phi.c = rk4(phi_rate, phi.c);
        t += h;
        compare(t, j);
      }
      if (m.forced_dwell) psi.c = 0.0;

      const Mode& source = contexts[j % contexts.size()];
      const HoareSet next_psi = m.sigma_d(psi, source);
      if (next_psi.empty()) break;
      const HoareSet next_phi = m.sigma_d(clamp(phi), source);
      if (next_phi.empty()) {
        discarded = true;
        break;
      }
      MeasureValue p = largest(next_psi);
      p.d *= cfg.solution_jump_factor;
      p.c *= cfg.solution_jump_factor;
      const MeasureValue& q = next_phi[static_cast<std::size_t>(unit(rng) * next_phi.size()) % next_phi.size()];
      const double s = uniform(cfg.sub_jump_lo, cfg.sub_jump_hi);
      psi = p;
      phi = MeasureValue{q.d * s, q.c * s};
      compare(t, j + 1);
    }
    if (violation && !rep.violation) rep.violation = violation;
    if (discarded && !violation) {
      ++rep.discarded;
      continue;
    }
    ++rep.trials_run;
  }
  rep.pass = !rep.violation.has_value();
  if (rep.comparisons == 0) rep.worst_margin = 0.0;
  return rep;
}

}  // namespace hycoalg
