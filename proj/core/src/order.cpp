#include "hycoalg/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hycoalg {

bool PosetalObject::leq(const MeasureValue& a, const MeasureValue& b, double tol) const {
  if (kind == PosetKind::trivial_discrete) return a.c <= b.c + tol;
  return value_leq(a, b, tol);
}

bool PosetalObject::is_member(const MeasureValue& a) const {
  if (!(a.c >= 0.0) || !std::isfinite(a.c)) return false;
  if (kind == PosetKind::trivial_discrete) return a.d == 0.0;
  return a.d >= 0.0 && std::isfinite(a.d);
}

std::string PosetalObject::name() const { return kind == PosetKind::trivial_discrete ? "(1,R>=0)" : "(R>=0,R>=0)"; }

bool value_leq(const MeasureValue& a, const MeasureValue& b, double tol) {
  return a.d <= b.d + tol && a.c <= b.c + tol;
}

bool hoare_leq(const HoareSet& A, const HoareSet& B, double tol) {
  return std::all_of(A.begin(), A.end(), [&](const MeasureValue& a) {
    return std::any_of(B.begin(), B.end(), [&](const MeasureValue& b) { return value_leq(a, b, tol); });
  });
}

double hoare_margin(const HoareSet& A, const HoareSet& B) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& a : A) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& b : B) best = std::max(best, std::min(b.d - a.d, b.c - a.c));
    worst = std::min(worst, best);
  }
  return worst;
}

std::string to_string(const MeasureValue& v) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << v.d << ", " << v.c << ")";
  return os.str();
}

std::string to_string(const HoareSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + to_string(s[i]);
  return out + "}";
}

// ---------------------------------------------------------------------------

ClassK::ClassK(std::string name, std::function<double(double)> f, std::function<double(double)> inverse)
    : name_(std::move(name)), f_(std::move(f)), inv_(std::move(inverse)) {}

double ClassK::inverse(double v) const {
  if (inv_) return inv_(v);
  if (v <= 0.0) return 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && f_(hi) < v; ++i) hi *= 2.0;
  if (f_(hi) < v) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f_(mid) < v ? lo : hi) = mid;
  }
  return hi;
}

ClassK ClassK::linear(double k) {
  return ClassK("linear(" + std::to_string(k) + ")", [k](double r) { return k * r; }, [k](double v) { return v / k; });
}

ClassK ClassK::power(double k, double p) {
  return ClassK(
      "power(" + std::to_string(k) + "," + std::to_string(p) + ")", [k, p](double r) { return k * std::pow(r, p); },
      [k, p](double v) { return std::pow(std::max(v, 0.0) / k, 1.0 / p); });
}

ClassK ClassK::min_linear_quadratic(double k) {
  return ClassK(
      "min_linear_quadratic(" + std::to_string(k) + ")", [k](double r) { return k * std::min(r, r * r); },
      [k](double v) {
        const double u = std::max(v, 0.0) / k;
        return u <= 1.0 ? std::sqrt(u) : u;
      });
}

ClassK ClassK::linear_plus_sqrt(double k) {
  // k (r + sqrt r) = v  <=>  s^2 + s - v/k = 0 with s = sqrt r.
  return ClassK(
      "linear_plus_sqrt(" + std::to_string(k) + ")", [k](double r) { return k * (r + std::sqrt(r)); },
      [k](double v) {
        const double s = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * std::max(v, 0.0) / k));
        return s * s;
      });
}

ClassK2::ClassK2(std::string name, std::function<double(double, double)> f) : name_(std::move(name)), f_(std::move(f)) {}

ClassK2 ClassK2::of_discrete(const ClassK& k) {
  return ClassK2(k.name(), [k](double rd, double) { return k(rd); });
}

ClassK ClassK2::diagonal() const {
  auto f = f_;
  return ClassK(name_ + " diagonal", [f](double r) { return f(r, r); });
}

// ---------------------------------------------------------------------------

ClassKValidation validate_class_k(const ClassK& k, double r_max, std::size_t samples, std::uint64_t seed) {
  ClassKValidation out;
  auto fail = [&](const std::string& why) {
    out.pass = false;
    if (out.failure.empty()) out.failure = why;
  };
  if (std::abs(k(0.0)) > 1e-12) fail("alpha(0) = " + std::to_string(k(0.0)));
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, r_max);
  std::vector<double> rs(samples);
  for (auto& r : rs) r = u(rng);
  std::sort(rs.begin(), rs.end());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = rs[i];
    const double v = k(r);
    if (!std::isfinite(v) || v < 0.0) fail("alpha not finite/nonnegative at r=" + std::to_string(r));
    if (i > 0 && rs[i] > rs[i - 1] && !(v > k(rs[i - 1]))) fail("alpha not increasing near r=" + std::to_string(r));
    if (std::abs(k.inverse(v) - r) > 1e-8 * std::max(1.0, r)) fail("inverse round trip fails at r=" + std::to_string(r));
  }
  return out;
}

ClassKValidation validate_class_k2(const ClassK2& k, double r_max, std::size_t samples, std::uint64_t seed) {
  ClassKValidation out;
  if (std::abs(k(0.0, 0.0)) > 1e-12) {
    out.pass = false;
    out.failure = "alpha(0,0) = " + std::to_string(k(0.0, 0.0));
    return out;
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, r_max);
  for (std::size_t i = 0; i < samples; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const double lo_d = std::min(a, b), hi_d = std::max(a, b), lo_c = std::min(c, d), hi_c = std::max(c, d);
    if (k(lo_d, lo_c) > k(hi_d, hi_c) + 1e-12) {
      out.pass = false;
      out.failure = "not order preserving at (" + std::to_string(hi_d) + "," + std::to_string(hi_c) + ")";
      return out;
    }
  }
  return out;
}

}  // namespace hycoalg
