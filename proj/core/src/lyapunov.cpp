#include "hycoalg/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hycoalg/numeric.hpp"

namespace hycoalg {

MeasureValue LyapunovCandidate::value(const Mode& s, const Vec& x) const { return MeasureValue{vd(s, x), V_c(x)}; }

Vec LyapunovCandidate::gradient_c(const Vec& x) const {
  if (grad_V_c) return grad_V_c(x);
  return numeric::central_gradient(V_c, x);
}

Vec LyapunovCandidate::gradient_d(const Mode& s, const Vec& x) const {
  if (grad_V_d) return grad_V_d(s, x);
  if (!V_d) return Vec::Zero(x.size());
  return numeric::central_gradient([&](const Vec& y) { return V_d(s, y); }, x);
}

double Tolerances::at(double scale) const { return abs + rel * std::abs(scale); }

void CheckResult::record(double margin, double tol, const TaggedPoint& at, const std::string& what) {
  if (evaluated == 0 || margin < worst_margin) {
    worst_margin = margin;
    witness = at;
    if (!what.empty()) detail = what;
  }
  if (evaluated == 0 || margin > max_margin) max_margin = margin;
  ++evaluated;
  if (margin < -tol || std::isnan(margin)) pass = false;
}

void CheckResult::fail(const std::string& why, std::optional<TaggedPoint> at) {
  pass = false;
  detail = why;
  if (at) witness = std::move(at);
}

const CheckResult* CertificateReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> CertificateReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  if (comparison && !comparison->pass) out.push_back("comparison");
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_positive_definite(const LyapunovCandidate& cand, const std::vector<TaggedPoint>& pts,
                                                 const Tolerances& tol) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, auto&& margin_of) {
    CheckResult r;
    r.name = name;
    for (const auto& p : pts) {
      const auto [margin, scale] = margin_of(p);
      r.record(margin, tol.at(scale), p);
    }
    if (!r.pass) r.detail = "bound violated by " + std::to_string(-r.worst_margin);
    out.push_back(std::move(r));
  };
  if (cand.lower_c) {
    run("pd:lower_c", [&](const TaggedPoint& p) {
      const double bound = (*cand.lower_c)(cand.element.continuous_norm(p.x));
      return std::pair{cand.V_c(p.x) - bound, bound};
    });
  }
  if (cand.upper_c) {
    run("pd:upper_c", [&](const TaggedPoint& p) {
      const double bound = (*cand.upper_c)(cand.element.continuous_norm(p.x));
      return std::pair{bound - cand.V_c(p.x), bound};
    });
  }
  if (cand.lower_d) {
    run("pd:lower_d", [&](const TaggedPoint& p) {
      const double bound =
          (*cand.lower_d)(cand.element.discrete_norm(p.mode, p.x), cand.element.continuous_norm(p.x));
      return std::pair{cand.vd(p.mode, p.x) - bound, bound};
    });
  }
  if (cand.upper_d) {
    run("pd:upper_d", [&](const TaggedPoint& p) {
      const double bound =
          (*cand.upper_d)(cand.element.discrete_norm(p.mode, p.x), cand.element.continuous_norm(p.x));
      return std::pair{bound - cand.vd(p.mode, p.x), bound};
    });
  }
  return out;
}

CheckResult check_flow_condition(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                 const std::vector<TaggedPoint>& pts, const Tolerances& tol) {
  CheckResult r;
  r.name = "flow";
  for (const auto& p : pts) {
    double lhs = 0.0;
    try {
      lhs = cand.gradient_c(p.x).dot(sys.flow(p.mode, p.x));
    } catch (const EvaluationError&) {
      ++r.skipped;
      continue;
    }
    const double rhs = cand.target.sigma_c(cand.value(p.mode, p.x));
    r.record(rhs - lhs, tol.at(rhs), p);
  }
  if (!r.pass) r.detail = "dV_c/dt exceeds sigma_c(V) by " + std::to_string(-r.worst_margin);
  return r;
}

CheckResult check_jump_condition(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                 const std::vector<TaggedPoint>& guard_pts, const Tolerances& tol) {
  CheckResult r;
  r.name = "jump";
  for (const auto& p : guard_pts) {
    const PointSet image = sys.jump(p.mode, p.x);
    if (image.empty()) {
      ++r.skipped;
      continue;
    }
    HoareSet lhs;
    for (const auto& q : image) lhs.push_back(cand.value(q.mode, q.x));
    const MeasureValue v = cand.value(p.mode, p.x);
    const HoareSet rhs = cand.target.sigma_d(v, p.mode);
    if (rhs.empty()) {
      r.record(-std::numeric_limits<double>::infinity(), 0.0, p);
      r.fail("sigma_d(" + to_string(v) + ") is empty while the jump image is not", p);
      break;
    }
    double scale = 0.0;
    for (const auto& b : rhs) scale = std::max({scale, std::abs(b.d), std::abs(b.c)});
    r.record(hoare_margin(lhs, rhs), tol.at(scale), p,
             "image " + to_string(lhs) + " vs sigma_d " + to_string(rhs));
  }
  if (r.pass) r.detail.clear();
  return r;
}

std::vector<CheckResult> check_zeno_conditions(const HCoalgebra& sys, const LyapunovCandidate& cand, double c,
                                               double lambda, const CheckSamples& samples, bool also_check_Vd_flow,
                                               const Tolerances& tol) {
  CheckResult flow, guard, jump_vd, jump_vc, flow_vd;
  flow.name = "flow:zeno_flow";
  guard.name = "jump:zeno_guard";
  jump_vd.name = "jump:zeno_jump_Vd";
  jump_vc.name = "jump:zeno_jump_Vc";
  flow_vd.name = "flow:zeno_flow_Vd";

  for (const auto& p : samples.interior) {
    const Vec f = sys.flow(p.mode, p.x);
    try {
      flow.record(-c - cand.gradient_c(p.x).dot(f), tol.at(c), p);
      if (also_check_Vd_flow) flow_vd.record(-cand.gradient_d(p.mode, p.x).dot(f), tol.at(0.0), p);
    } catch (const EvaluationError&) {
      ++flow.skipped;
    }
  }
  if (!flow.pass) flow.detail = "dV_c/dt . f exceeds -c by " + std::to_string(-flow.worst_margin);
  if (!flow_vd.pass) flow_vd.detail = "V_d increases along the flow";

  for (const auto& p : samples.guard) {
    const PointSet image = sys.jump(p.mode, p.x);
    if (image.empty()) {
      ++guard.skipped;
      continue;
    }
    const double vc = cand.V_c(p.x);
    const double vd = cand.vd(p.mode, p.x);
    guard.record(-std::abs(vc), tol.guard, p);
    for (const auto& q : image) {
      jump_vd.record(lambda * vd - cand.vd(q.mode, q.x), tol.at(lambda * vd), p);
      jump_vc.record(vd - cand.V_c(q.x), tol.at(vd), p);
    }
  }
  if (!guard.pass) guard.detail = "V_c = " + std::to_string(-guard.worst_margin) + " on the guard";
  if (!jump_vd.pass) jump_vd.detail = "V_d after reset exceeds lambda V_d by " + std::to_string(-jump_vd.worst_margin);
  if (!jump_vc.pass) jump_vc.detail = "V_c after reset exceeds V_d by " + std::to_string(-jump_vc.worst_margin);
  if (!(lambda > 0.0 && lambda < 1.0)) {
    std::optional<TaggedPoint> at = samples.guard.empty() ? std::nullopt : std::optional(samples.guard.front());
    jump_vd.fail("lambda = " + std::to_string(lambda) + " does not contract V_d (needs 0 < lambda < 1)", at);
  }
  if (!(c > 0.0)) flow.fail("c = " + std::to_string(c) + " must be positive", flow.witness);

  std::vector<CheckResult> out{flow, guard, jump_vd, jump_vc};
  if (also_check_Vd_flow) out.push_back(flow_vd);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<TaggedPoint> draw_interior(const HCoalgebra& sys, const std::map<Mode, Box>& region, std::size_t count,
                                       Rng& rng) {
  std::vector<TaggedPoint> out;
  if (region.empty()) return out;
  const std::size_t per_mode = (count + region.size() - 1) / region.size();
  for (const auto& [mode, box] : region) {
    if (!sys.state().has_mode(mode)) throw ValidationError("sample region names unknown mode '" + mode + "'");
    std::size_t got = 0;
    for (std::size_t attempt = 0; got < per_mode && attempt < 100 * per_mode + 100; ++attempt) {
      Vec x = box.sample(rng);
      if (!sys.in_domain(mode, x)) continue;
      out.push_back(TaggedPoint{mode, std::move(x)});
      ++got;
    }
  }
  if (out.size() > count) out.resize(count);
  return out;
}

}  // namespace

CheckSamples draw_samples(const HCoalgebra& sys, const CertificateConfig& cfg) {
  CheckSamples s;
  Rng rng(cfg.seed);
  s.interior = draw_interior(sys, cfg.region, cfg.interior_samples, rng);
  if (cfg.guard_sampler) {
    s.guard = cfg.guard_sampler(rng, cfg.guard_samples);
  } else if (const ClassicalHybridSystem* cls = sys.classical()) {
    const auto& edges = cls->edges();
    if (!edges.empty()) {
      const std::size_t per_edge = (cfg.guard_samples + edges.size() - 1) / edges.size();
      for (const auto& e : edges) {
        auto box = cfg.region.find(e.source);
        if (box == cfg.region.end()) continue;
        for (Vec& x : sample_guard(*cls, e, box->second, per_edge, rng)) s.guard.push_back(TaggedPoint{e.source, x});
      }
    }
  } else {
    for (const auto& p : draw_interior(sys, cfg.region, 20 * cfg.guard_samples, rng)) {
      if (s.guard.size() >= cfg.guard_samples) break;
      if (!sys.jump(p.mode, p.x).empty()) s.guard.push_back(p);
    }
  }
  if (s.guard.size() > cfg.guard_samples) s.guard.resize(cfg.guard_samples);
  return s;
}

std::optional<DerivedAlpha> derive_alpha(const LyapunovCandidate& cand) {
  if (!cand.target.growth) return std::nullopt;
  DerivedAlpha out;
  out.growth = *cand.target.growth;
  const double growth = out.growth;
  ClassK lower, upper;
  if (cand.lower_c && cand.upper_c) {
    out.component = "continuous";
    lower = *cand.lower_c;
    upper = *cand.upper_c;
  } else if (cand.lower_d && cand.upper_d) {
    out.component = "discrete";
    lower = cand.lower_d->diagonal();
    upper = cand.upper_d->diagonal();
  } else {
    return std::nullopt;
  }
  out.construction = "alpha(r) = lower^-1(" + std::to_string(growth) + " * upper(r)) with lower = " + lower.name() +
                     ", upper = " + upper.name();
  out.alpha = ClassK("derived", [lower, upper, growth](double r) { return lower.inverse(growth * upper(r)); });
  for (double r : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) out.table.emplace_back(r, out.alpha(r));
  return out;
}

double element_distance(const LyapunovCandidate& cand, const Mode& s, const Vec& x, bool upper) {
  const double rc = cand.element.continuous_norm(x);
  if (cand.lower_c && cand.upper_c) return rc;
  const double rd = cand.element.discrete_norm(s, x);
  return upper ? std::max(rd, rc) : std::min(rd, rc);
}

namespace {

SimulationResult run_trajectory(const HCoalgebra& sys, const TaggedPoint& init, const SimConfig& sim, Rng& rng) {
  if (sys.classical()) return simulate(sys, init, sim);
  SwitchingSignal signal;
  std::uniform_real_distribution<double> dwell(0.1, 1.0);
  const auto& modes = sys.state().modes();
  std::uniform_int_distribution<std::size_t> pick(0, modes.size() - 1);
  for (double t = dwell(rng); t < sim.horizon; t += dwell(rng)) {
    signal.times.push_back(t);
    signal.modes.push_back(modes[pick(rng)]);
  }
  return simulate_switching(sys, init, signal, sim);
}

EmpiricalValidation validate_empirically(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                         const DerivedAlpha& alpha, const CertificateConfig& cfg) {
  EmpiricalValidation ev;
  ev.ran = true;
  Rng rng(cfg.seed + 1000);
  const auto& boxes = cfg.initial_region.empty() ? cfg.region : cfg.initial_region;
  const auto inits = draw_interior(sys, boxes, cfg.empirical_trajectories, rng);
  for (const auto& init : inits) {
    SimulationResult res;
    try {
      res = run_trajectory(sys, init, cfg.sim, rng);
    } catch (const SimulationError& e) {
      ev.pass = false;
      ev.note = std::string("simulation failed: ") + e.what();
      ev.witness = init;
      return ev;
    }
    ++ev.trajectories;
    const double bound = alpha.alpha(element_distance(cand, init.mode, init.x, true)) * (1.0 + cfg.empirical_slack);
    for (const auto& iv : res.execution.intervals) {
      for (const auto& s : iv.samples) {
        ++ev.points;
        const double r = element_distance(cand, iv.mode, s.x, false);
        const double ratio = bound > 0.0 ? r / bound : (r <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity());
        if (ratio > ev.worst_ratio) {
          ev.worst_ratio = ratio;
          if (ratio > 1.0) ev.witness = TaggedPoint{iv.mode, s.x};
        }
      }
    }
  }
  ev.pass = ev.worst_ratio <= 1.0;
  ev.note = "||gamma(j,t)|| <= alpha(||gamma(0,0)||) checked on " + std::to_string(ev.trajectories) + " trajectories";
  return ev;
}

}  // namespace

CertificateReport check_certificate(const HCoalgebra& sys, const LyapunovCandidate& cand, const CheckSamples& samples,
                                    const CertificateConfig& cfg) {
  CertificateReport rep;
  for (auto& r : check_positive_definite(cand, samples.interior, cfg.tol)) rep.checks.push_back(std::move(r));
  if (cand.target.kind == SigmaKind::zeno) {
    const double c = cand.target.params.at("c");
    const double lambda = cand.target.params.at("lambda");
    for (auto& r : check_zeno_conditions(sys, cand, c, lambda, samples, cfg.also_check_Vd_flow, cfg.tol)) {
      rep.checks.push_back(std::move(r));
    }
  } else {
    rep.checks.push_back(check_flow_condition(sys, cand, samples.interior, cfg.tol));
    rep.checks.push_back(check_jump_condition(sys, cand, samples.guard, cfg.tol));
  }
  if (samples.guard.empty()) rep.notes.push_back("no guard samples were drawn; jump checks are vacuous");

  if (cfg.run_comparison) {
    ComparisonConfig cc = cfg.comparison;
    cc.seed = cfg.seed + 7;
    rep.comparison = test_comparison_property(cand.target, cc);
  }
  rep.pass = rep.failing().empty();
  if (!rep.pass) return rep;

  rep.derived_alpha = derive_alpha(cand);
  if (!rep.derived_alpha) {
    rep.empirical.note = "no derived alpha: the measurement object has no solution growth bound or the candidate "
                         "lacks a matching pair of class-K bounds";
    return rep;
  }
  if (cfg.run_empirical) {
    rep.empirical = validate_empirically(sys, cand, *rep.derived_alpha, cfg);
  }
  return rep;
}

CertificateReport check_certificate(const HCoalgebra& sys, const LyapunovCandidate& cand,
                                    const CertificateConfig& cfg) {
  return check_certificate(sys, cand, draw_samples(sys, cfg), cfg);
}

}  // namespace hycoalg
