#pragma once

// Simulation morphisms and transference of Lyapunov certificates.
//
// A simulation morphism Phi: E -> Y is a chart whose continuous part maps
// flows of E below flows of Y and whose discrete part maps jumps of E below
// jumps of Y. A certificate V on Y then pulls back to W = V o Phi on E,
// certifying stability of E with respect to the pullback semi-norm.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hycoalg/chart.hpp"
#include "hycoalg/coalgebra.hpp"
#include "hycoalg/lyapunov.hpp"

namespace hycoalg {

struct SimulationMorphism {
  std::string name;
  std::shared_ptr<const HCoalgebra> source;
  std::shared_ptr<const HCoalgebra> target;
  std::function<Vec(const Vec&)> phi_c;
  /// Analytic Jacobian of phi_c; central differences when empty.
  std::function<Mat(const Vec&)> jacobian;
  std::function<Mode(const Mode&, const Vec&)> phi_d;

  [[nodiscard]] Mat jacobian_at(const Vec& x) const;
  [[nodiscard]] TaggedPoint operator()(const Mode& s, const Vec& x) const { return {phi_d(s, x), phi_c(x)}; }
  [[nodiscard]] ChartMorphism as_chart() const;
};

struct MorphismCheck {
  bool pass = true;
  /// Phi maps domain samples into the target domain.
  CheckResult region;
  /// D Phi_c . f_c(x) <= f_c^Y(Phi(x)) componentwise.
  CheckResult flow;
  /// Images of jumps are dominated by jumps of the image.
  CheckResult jump;
};

/// Samples as in check_certificate: interior samples for the region and
/// flow conditions, guard samples for the discrete condition.
MorphismCheck check_simulation_morphism(const SimulationMorphism& phi, const CheckSamples& samples,
                                        const Tolerances& tol = {});

struct TransferReport {
  LyapunovCandidate pulled;
  /// n - max rank of D Phi_c over the samples.
  std::size_t kernel_dimension = 0;
  bool injective_on_samples = true;
  /// True when the pullback semi-norm has a kernel larger than the
  /// diagonal, so stability holds for a set rather than a point.
  bool set_stability = false;
  std::string stability_set;
};

/// W_c = V_c o Phi_c, W_d(s,x) = V_d(Phi_d(s,x), Phi_c(x)), with bounds
/// expressed against ||(s,x)||_Phi = ||Phi(s,x)||_{y*}. Throws
/// PrerequisiteError unless both the morphism check and the certificate
/// on the target passed.
TransferReport transfer_certificate(const SimulationMorphism& phi, const LyapunovCandidate& V,
                                    const MorphismCheck& morphism_check, const CertificateReport& target_report,
                                    const std::vector<TaggedPoint>& rank_samples);

}  // namespace hycoalg
