#include "hycoalg/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hycoalg/numeric.hpp"

namespace hycoalg {

Mat SimulationMorphism::jacobian_at(const Vec& x) const {
  if (jacobian) return jacobian(x);
  return numeric::central_jacobian(phi_c, x);
}

ChartMorphism SimulationMorphism::as_chart() const {
  ChartMorphism m{source->state(), target->state(), phi_c, phi_d, std::nullopt};
  if (jacobian) m.jacobian_fn = jacobian;
  return m;
}

MorphismCheck check_simulation_morphism(const SimulationMorphism& phi, const CheckSamples& samples,
                                        const Tolerances& tol) {
  if (!phi.source || !phi.target) throw ValidationError("simulation morphism needs source and target systems");
  MorphismCheck out;
  out.region.name = "morphism:region";
  out.flow.name = "morphism:flow";
  out.jump.name = "morphism:jump";
  const HCoalgebra& E = *phi.source;
  const HCoalgebra& Y = *phi.target;

  for (const auto& p : samples.interior) {
    const TaggedPoint q = phi(p.mode, p.x);
    if (!Y.state().has_mode(q.mode) || !Y.in_domain(q.mode, q.x)) {
      out.region.record(-1.0, 0.0, p);
      if (out.region.detail.empty()) out.region.detail = "Phi(x) = " + to_string(q) + " lies outside the target domain";
      continue;
    }
    out.region.record(0.0, 0.0, p);
    const Vec pushed = phi.jacobian_at(p.x) * E.flow(p.mode, p.x);
    const Vec fy = Y.flow(q.mode, q.x);
    const double margin = (fy - pushed).minCoeff();
    out.flow.record(margin, tol.at(fy.cwiseAbs().maxCoeff()), p);
  }
  if (!out.flow.pass) out.flow.detail = "D Phi . f exceeds the target field by " + std::to_string(-out.flow.worst_margin);

  for (const auto& p : samples.guard) {
    const PointSet image = E.jump(p.mode, p.x);
    if (image.empty()) {
      ++out.jump.skipped;
      continue;
    }
    const TaggedPoint q = phi(p.mode, p.x);
    const PointSet target_jumps = Y.state().has_mode(q.mode) ? Y.jump(q.mode, q.x) : PointSet{};
    double worst = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (const auto& e : image) {
      const TaggedPoint pe = phi(e.mode, e.x);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& t : target_jumps) {
        if (t.mode != pe.mode) continue;
        best = std::max(best, (t.x - pe.x).minCoeff());
        scale = std::max(scale, t.x.cwiseAbs().maxCoeff());
      }
      worst = std::min(worst, best);
    }
    out.jump.record(worst, tol.at(scale), p);
    if (target_jumps.empty() && out.jump.detail.empty()) {
      out.jump.detail = "the target has no jump at Phi(x) = " + to_string(q);
    }
  }
  if (!out.jump.pass && out.jump.detail.empty()) {
    out.jump.detail = "jump image exceeds the target jump by " + std::to_string(-out.jump.worst_margin);
  }
  if (out.region.pass) out.region.detail.clear();
  if (out.jump.pass) out.jump.detail.clear();
  out.pass = out.region.pass && out.flow.pass && out.jump.pass;
  return out;
}

TransferReport transfer_certificate(const SimulationMorphism& phi, const LyapunovCandidate& V,
                                    const MorphismCheck& morphism_check, const CertificateReport& target_report,
                                    const std::vector<TaggedPoint>& rank_samples) {
  if (!morphism_check.pass) throw PrerequisiteError("Phi is not a verified simulation morphism");
  if (!target_report.pass) throw PrerequisiteError("the certificate on the target system is not verified");

  TransferReport out;
  LyapunovCandidate& W = out.pulled;
  W.name = V.name + " o " + phi.name;
  W.target = V.target;
  W.lower_c = V.lower_c;
  W.upper_c = V.upper_c;
  W.lower_d = V.lower_d;
  W.upper_d = V.upper_d;

  auto pc = phi.phi_c;
  auto pd = phi.phi_d;
  auto vc = V.V_c;
  W.V_c = [pc, vc](const Vec& x) { return vc(pc(x)); };
  if (V.V_d) {
    auto vd = V.V_d;
    W.V_d = [pc, pd, vd](const Mode& s, const Vec& x) { return vd(pd(s, x), pc(x)); };
  }
  // Chain rule: grad (V o Phi)(x) = D Phi(x)^T grad V(Phi(x)).
  W.grad_V_c = [phi, V](const Vec& x) -> Vec { return phi.jacobian_at(x).transpose() * V.gradient_c(phi.phi_c(x)); };
  if (V.V_d) {
    W.grad_V_d = [phi, V](const Mode& s, const Vec& x) -> Vec {
      return phi.jacobian_at(x).transpose() * V.gradient_d(phi.phi_d(s, x), phi.phi_c(x));
    };
  }

  // Pullback semi-norm.
  const GeneralizedElement y = V.element;
  W.element.name = "pullback of " + y.name;
  W.element.analytic_distance = [pc, y](const Vec& x) { return y.continuous_norm(pc(x)); };
  W.element.analytic_discrete = [pc, pd, y](const Mode& s, const Vec& x) { return y.discrete_norm(pd(s, x), pc(x)); };

  std::size_t n = phi.source->state().dim();
  std::size_t max_rank = 0;
  for (const auto& p : rank_samples) {
    Eigen::FullPivLU<Mat> lu(phi.jacobian_at(p.x));
    lu.setThreshold(1e-9);
    max_rank = std::max<std::size_t>(max_rank, static_cast<std::size_t>(lu.rank()));
  }
  if (rank_samples.empty()) max_rank = std::min(n, phi.target->state().dim());
  out.kernel_dimension = n - std::min(n, max_rank);
  out.injective_on_samples = out.kernel_dimension == 0;
  out.set_stability = !out.injective_on_samples;
  out.stability_set = out.set_stability
                          ? "Phi_c^-1(y*(Z_c)): the pullback semi-norm vanishes on a set of dimension " +
                                std::to_string(out.kernel_dimension) + "; stability is certified for that set"
                          : "Phi_c is injective on the samples; stability is certified for the preimage point";
  return out;
}

}  // namespace hycoalg
