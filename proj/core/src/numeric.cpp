#include "hycoalg/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hycoalg::numeric {

double fd_step(double xi) { return 1e-6 * (1.0 + std::abs(xi)); }

bool all_finite(const Vec& x) { return x.allFinite(); }

Mat central_jacobian(const VectorMap& f, const Vec& x) {
  const Vec fx = f(x);
  if (!all_finite(fx)) throw EvaluationError("map is not finite", x);
  Mat jac(fx.size(), x.size());
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = fd_step(x[i]);
    probe[i] = x[i] + h;
    const Vec fp = f(probe);
    probe[i] = x[i] - h;
    const Vec fm = f(probe);
    probe[i] = x[i];
    if (!all_finite(fp) || !all_finite(fm) || fp.size() != fx.size() || fm.size() != fx.size()) {
      throw EvaluationError("Jacobian evaluation failed", x);
    }
    jac.col(i) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

Vec central_gradient(const ScalarMap& f, const Vec& x) {
  Vec grad(x.size());
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = fd_step(x[i]);
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm)) throw EvaluationError("gradient evaluation failed", x);
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double relative_deviation(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return worst;
}

Vec HermiteSegment::value(double t) const {
  const double h = t1 - t0;
  if (h <= 0.0) return x0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * x0 + h10 * h * d0 + h01 * x1 + h11 * h * d1;
}

Vec HermiteSegment::derivative(double t) const {
  const double h = t1 - t0;
  if (h <= 0.0) return d0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double dh00 = (6 * s2 - 6 * s) / h;
  const double dh10 = 3 * s2 - 4 * s + 1;
  const double dh01 = (-6 * s2 + 6 * s) / h;
  const double dh11 = 3 * s2 - 2 * s;
  return dh00 * x0 + dh10 * d0 + dh01 * x1 + dh11 * d1;
}

}  // namespace hycoalg::numeric
