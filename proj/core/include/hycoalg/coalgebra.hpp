#pragma once

// Hybrid systems as H-coalgebras.
//
// A ClassicalHybridSystem is the usual graph-based tuple (graph, domains,
// guards, resets, vector fields). encode_hybrid() turns it into an
// HCoalgebra on (S, M) with S the vertex set and M the disjoint union of
// the domains, represented as (mode tag, vector) pairs. encode_switching()
// builds the coalgebra of a switching system, where a jump to any mode is
// available everywhere and leaves the continuous state unchanged.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hycoalg/chart.hpp"
#include "hycoalg/common.hpp"

namespace hycoalg {

using VectorField = std::function<Vec(const Vec&)>;
using ScalarField = std::function<double(const Vec&)>;

/// Region { x : c_i(x) >= 0 for all i } of R^n.
struct Region {
  std::size_t dim = 0;
  std::vector<ScalarField> constraints;
  double tol = 1e-9;

  [[nodiscard]] bool contains(const Vec& x) const;
  /// Smallest constraint value (>= 0 inside); +inf without constraints.
  [[nodiscard]] double slack(const Vec& x) const;
};

/// Guard set { x : surface(x) <= tol and admissible(x) }.
///
/// The domain lies on the side surface >= 0; a trajectory reaches the guard
/// when surface changes sign from positive to non-positive. `admissible`
/// encodes the arrival condition (for the bouncing ball, x2 <= 0).
struct Guard {
  ScalarField surface;
  std::function<bool(const Vec&)> admissible;
  double tol = 1e-12;

  [[nodiscard]] bool contains(const Vec& x) const;
  [[nodiscard]] bool is_admissible(const Vec& x) const { return !admissible || admissible(x); }
};

struct Vertex {
  Mode name;
  Region domain;
  VectorField field;
};

struct Edge {
  std::string name;
  Mode source;
  Mode target;
  Guard guard;
  VectorField reset;
};

class ClassicalHybridSystem {
 public:
  ClassicalHybridSystem(std::vector<Vertex> vertices, std::vector<Edge> edges);

  [[nodiscard]] const std::vector<Vertex>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const Vertex& vertex(const Mode& name) const;
  [[nodiscard]] bool has_vertex(const Mode& name) const;
  [[nodiscard]] std::vector<const Edge*> outgoing(const Mode& v) const;
  [[nodiscard]] const Edge* edge(const std::string& name) const;
  /// Common continuous dimension of all domains.
  [[nodiscard]] std::size_t dim() const { return dim_; }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::size_t dim_ = 0;
};

enum class CoalgebraKind { classical, switching, custom };

class HCoalgebra {
 public:
  using Flow = std::function<Vec(const Mode&, const Vec&)>;
  using Jump = std::function<PointSet(const Mode&, const Vec&)>;
  using DomainTest = std::function<bool(const Mode&, const Vec&)>;

  HCoalgebra(ChartObject state, DomainTest in_domain, Flow flow, Jump jump, CoalgebraKind kind,
             std::shared_ptr<const ClassicalHybridSystem> classical = nullptr);

  [[nodiscard]] const ChartObject& state() const { return state_; }
  [[nodiscard]] CoalgebraKind kind() const { return kind_; }
  [[nodiscard]] bool in_domain(const Mode& m, const Vec& x) const { return in_domain_(m, x); }
  /// f_c at a tagged point.
  [[nodiscard]] Vec flow(const Mode& m, const Vec& x) const;
  /// f_d at a tagged point, canonicalized.
  [[nodiscard]] PointSet jump(const Mode& m, const Vec& x) const;
  /// The graph-based system this coalgebra was encoded from, if any.
  [[nodiscard]] const ClassicalHybridSystem* classical() const { return classical_.get(); }
  [[nodiscard]] std::shared_ptr<const ClassicalHybridSystem> classical_ptr() const { return classical_; }

 private:
  ChartObject state_;
  DomainTest in_domain_;
  Flow flow_;
  Jump jump_;
  CoalgebraKind kind_;
  std::shared_ptr<const ClassicalHybridSystem> classical_;
};

struct EncodeOptions {
  /// Box per vertex used to sample guard points for the disjointness
  /// check. Vertices without a box are not sampled.
  std::map<Mode, Box> sample_boxes;
  std::size_t samples_per_edge = 200;
  std::uint64_t seed = 11;
};

/// Throws EncodingError when two outgoing guards of a vertex share a
/// sampled point. f_d also throws EncodingError if it meets such a point
/// during evaluation.
HCoalgebra encode_hybrid(const ClassicalHybridSystem& h, const EncodeOptions& opts = {});

struct SwitchingMode {
  Mode name;
  VectorField field;
};

HCoalgebra encode_switching(std::size_t dim, std::vector<SwitchingMode> modes, Region region = {});

/// Projects x onto guard.surface == 0 with Newton steps along the numeric
/// gradient. Returns nullopt if the iteration does not converge.
std::optional<Vec> project_to_surface(const Guard& guard, Vec x, int max_iter = 30);

/// Samples points on an edge's guard: box samples projected onto the
/// surface, kept when admissible and inside the source domain.
std::vector<Vec> sample_guard(const ClassicalHybridSystem& h, const Edge& e, const Box& box, std::size_t count,
                              Rng& rng);

// ---------------------------------------------------------------------------
// Generalized elements

/// The image of a generalized element z*: (Z_d, Z_c) -> (S, M), kept as a
/// finite sample cloud with an optional analytic continuous distance.
struct GeneralizedElement {
  std::string name;
  PointSet image;
  /// Analytic ||x||^c; the infimum over the sample cloud is used when empty.
  std::function<double(const Vec&)> analytic_distance;
  /// Analytic ||(s,x)||^d; overrides the distance-plus-mode-weight rule.
  std::function<double(const Mode&, const Vec&)> analytic_discrete;
  /// Weight of the 0/1 mode-mismatch term in the discrete semi-norm.
  double mode_weight = 1.0;

  [[nodiscard]] double continuous_norm(const Vec& x) const;
  [[nodiscard]] double discrete_norm(const Mode& s, const Vec& x) const;

  static GeneralizedElement point(TaggedPoint p, std::string name = "point");
};

struct ZenoEquilibriumVerdict {
  bool pass = true;
  bool non_equilibrium = true;
  bool jump_invariance = true;
  std::vector<std::string> failures;
};

/// Checks a per-vertex collection {z_v}: f_v(z_v) != 0 and, for every edge
/// e, z_{s(e)} in G_e with R_e(z_{s(e)}) = z_{t(e)}.
ZenoEquilibriumVerdict validate_zeno_equilibrium(const ClassicalHybridSystem& h, const std::map<Mode, Vec>& z,
                                                 double tol_ne = 1e-9, double tol = 1e-9);

}  // namespace hycoalg
