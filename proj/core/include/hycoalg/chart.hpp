#pragma once

// The category Chart, computationally.
//
// An object is a pair (S, M): a finite set of mode labels and a region of
// R^n given by a membership predicate. A morphism (f_d, f_c) pairs a map on
// continuous points with a discrete map that also sees the continuous
// point. Composition threads the continuous input into the discrete part:
//
//   (g . f)_c = g_c . f_c
//   (g . f)_d(s, x) = g_d(f_d(s, x), f_c(x))
//
// The endofunctor H sends (S, M) to (P(S x M), TM); on morphisms it acts by
// the tangent map on (x, v) and by image on finite sets.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hycoalg/common.hpp"

namespace hycoalg {

using Membership = std::function<bool(const Vec&)>;

class ChartObject {
 public:
  ChartObject(std::size_t continuous_dim, std::vector<Mode> modes, Membership member = {});

  /// The terminal object: one mode "*" and a zero-dimensional point.
  static ChartObject terminal();

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<Mode>& modes() const { return modes_; }
  [[nodiscard]] bool has_mode(const Mode& m) const;
  [[nodiscard]] bool contains(const Vec& x) const;

  /// Same dimension and same mode set. Region predicates are not compared.
  [[nodiscard]] bool same_shape(const ChartObject& other) const;

 private:
  std::size_t dim_;
  std::vector<Mode> modes_;
  Membership member_;
};

struct ChartMorphism {
  using ContinuousMap = std::function<Vec(const Vec&)>;
  using DiscreteMap = std::function<Mode(const Mode&, const Vec&)>;
  using JacobianMap = std::function<Mat(const Vec&)>;

  ChartObject source;
  ChartObject target;
  ContinuousMap fc;
  DiscreteMap fd;
  /// Analytic Jacobian of fc; central differences are used when absent.
  std::optional<JacobianMap> jacobian_fn;

  [[nodiscard]] Vec continuous(const Vec& x) const;
  [[nodiscard]] Mode discrete(const Mode& s, const Vec& x) const;
  [[nodiscard]] TaggedPoint operator()(const TaggedPoint& p) const;
  [[nodiscard]] Mat jacobian(const Vec& x) const;

  static ChartMorphism identity(const ChartObject& obj);
};

/// g . f. Throws ChartError when f.target and g.source differ in shape.
ChartMorphism compose(const ChartMorphism& g, const ChartMorphism& f);

struct ProductChart {
  ChartObject object;
  ChartMorphism first;
  ChartMorphism second;
};

/// Product label for a pair of modes, "(p,u)".
Mode product_mode(const Mode& a, const Mode& b);

ProductChart product(const ChartObject& a, const ChartObject& b);

/// The universal arrow <f, g> : X -> A x B.
ChartMorphism pairing(const ChartMorphism& f, const ChartMorphism& g, const ProductChart& prod);

// ---------------------------------------------------------------------------
// H

struct TangentPair {
  Vec x;
  Vec v;
};

/// H(S, M) = (P(S x M), TM) over a base object.
class HObject {
 public:
  explicit HObject(ChartObject base) : base_(std::move(base)) {}
  [[nodiscard]] const ChartObject& base() const { return base_; }
  /// Every point of a discrete element must lie in the base region.
  [[nodiscard]] bool valid_discrete(const PointSet& set) const;

 private:
  ChartObject base_;
};

struct HMorphism {
  HObject source;
  HObject target;
  std::function<TangentPair(const TangentPair&)> continuous;
  std::function<PointSet(const PointSet&, const TangentPair&)> discrete;
};

/// H(f): (x, v) -> (f_c(x), J f_c(x) v) and A -> {(f_d(s,x), f_c(x)) : (s,x) in A}.
/// The tangent argument of the discrete action is ignored.
HMorphism apply_H(const ChartMorphism& f);

HMorphism compose(const HMorphism& g, const HMorphism& f);

// ---------------------------------------------------------------------------
// Sampling-based law checks

struct LawConfig {
  std::size_t samples = 100;
  std::uint64_t seed = 7;
  /// Relative tolerance on continuous components.
  double rel_tol = 1e-10;
};

struct LawReport {
  bool pass = true;
  std::size_t samples = 0;
  double max_continuous_deviation = 0.0;
  std::size_t discrete_mismatches = 0;
  std::optional<TaggedPoint> witness;
};

/// Draws (mode, point) samples from a chart object: uniform mode, uniform
/// point in the box, rejected until it satisfies the object's predicate.
class ChartSampler {
 public:
  ChartSampler(ChartObject obj, Box box) : obj_(std::move(obj)), box_(std::move(box)) {}
  [[nodiscard]] TaggedPoint draw(Rng& rng) const;
  [[nodiscard]] PointSet draw_set(Rng& rng, std::size_t max_size) const;
  [[nodiscard]] const Box& box() const { return box_; }

 private:
  ChartObject obj_;
  Box box_;
};

/// Pointwise comparison of two parallel morphisms on sampled points.
LawReport compare_morphisms(const ChartMorphism& a, const ChartMorphism& b, const ChartSampler& sampler,
                            const LawConfig& cfg);

/// compose(f, id) and compose(id, f) agree with f.
LawReport check_identity_laws(const ChartMorphism& f, const ChartSampler& sampler, const LawConfig& cfg);

LawReport check_associativity(const ChartMorphism& h, const ChartMorphism& g, const ChartMorphism& f,
                              const ChartSampler& sampler, const LawConfig& cfg);

/// H(g . f) against H(g) . H(f) on random tangent pairs and random finite sets.
/// Also checks that the discrete action does not depend on the velocity.
LawReport check_functoriality(const ChartMorphism& g, const ChartMorphism& f, const ChartSampler& sampler,
                              const LawConfig& cfg);

/// H(id) acts as the identity.
LawReport check_H_identity(const ChartObject& obj, const ChartSampler& sampler, const LawConfig& cfg);

/// Projections after pairing recover the original morphisms.
LawReport check_product_universal(const ChartMorphism& f, const ChartMorphism& g, const ChartSampler& sampler,
                                  const LawConfig& cfg);

/// f_c maps sampled source points into the target region and f_d lands in
/// target modes.
LawReport check_well_formed(const ChartMorphism& f, const ChartSampler& sampler, const LawConfig& cfg);

}  // namespace hycoalg
