#pragma once

#include <functional>

#include "hycoalg/common.hpp"

namespace hycoalg::numeric {

using VectorMap = std::function<Vec(const Vec&)>;
using ScalarMap = std::function<double(const Vec&)>;

/// Central-difference step for coordinate value `xi`: 1e-6 * (1 + |xi|).
double fd_step(double xi);

/// Jacobian of `f` at `x` by central differences. Throws EvaluationError
/// with `x` as witness if any evaluation is non-finite.
Mat central_jacobian(const VectorMap& f, const Vec& x);

/// Gradient of a scalar map by central differences.
Vec central_gradient(const ScalarMap& f, const Vec& x);

/// max_i |a_i - b_i| / max(1, |b_i|)
double relative_deviation(const Vec& a, const Vec& b);

bool all_finite(const Vec& x);

/// Cubic Hermite interpolation on [t0, t1] with endpoint values and slopes.
struct HermiteSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  Vec x0, x1;
  Vec d0, d1;

  [[nodiscard]] Vec value(double t) const;
  [[nodiscard]] Vec derivative(double t) const;
};

}  // namespace hycoalg::numeric
