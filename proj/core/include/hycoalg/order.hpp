#pragma once

// Ordered measurement values: posetal objects, the Hoare order on finite
// sets of values, and class-K comparison functions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hycoalg/common.hpp"

namespace hycoalg {

/// Element of R = (R_d, R_c).
struct MeasureValue {
  double d = 0.0;
  double c = 0.0;
};

/// Finite subset of R_d x R_c.
using HoareSet = std::vector<MeasureValue>;

inline constexpr double kTolOrd = 1e-9;

enum class PosetKind {
  /// (1, R>=0): the discrete part is a single point.
  trivial_discrete,
  /// (R>=0, R>=0).
  paired,
};

struct PosetalObject {
  PosetKind kind = PosetKind::paired;

  static PosetalObject trivial() { return {PosetKind::trivial_discrete}; }
  static PosetalObject paired() { return {PosetKind::paired}; }

  [[nodiscard]] MeasureValue base_point() const { return {0.0, 0.0}; }
  [[nodiscard]] bool leq(const MeasureValue& a, const MeasureValue& b, double tol = kTolOrd) const;
  /// Nonnegative components; d == 0 for the trivial discrete part.
  [[nodiscard]] bool is_member(const MeasureValue& a) const;
  [[nodiscard]] std::string name() const;
};

/// Componentwise order with tolerance.
bool value_leq(const MeasureValue& a, const MeasureValue& b, double tol = kTolOrd);

/// A <= B iff every a in A is dominated by some b in B.
bool hoare_leq(const HoareSet& A, const HoareSet& B, double tol = kTolOrd);

/// min over a in A of max over b in B of min(b.d - a.d, b.c - a.c).
/// Nonnegative iff A <= B (without tolerance). +inf for empty A, -inf for
/// nonempty A and empty B.
double hoare_margin(const HoareSet& A, const HoareSet& B);

std::string to_string(const MeasureValue& v);
std::string to_string(const HoareSet& s);

/// Class-K function r -> alpha(r) on R>=0.
class ClassK {
 public:
  ClassK() = default;
  ClassK(std::string name, std::function<double(double)> f, std::function<double(double)> inverse = {});

  [[nodiscard]] double operator()(double r) const { return f_(r); }
  /// Closed-form inverse when supplied, bisection otherwise.
  [[nodiscard]] double inverse(double v) const;
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] explicit operator bool() const { return static_cast<bool>(f_); }

  static ClassK linear(double k);
  static ClassK power(double k, double p);
  /// k * min(r, r^2)
  static ClassK min_linear_quadratic(double k);
  /// k * (r + sqrt(r))
  static ClassK linear_plus_sqrt(double k);

 private:
  std::string name_;
  std::function<double(double)> f_;
  std::function<double(double)> inv_;
};

/// Two-argument class-K bound alpha(r_d, r_c). Inversion uses the
/// diagonal r -> alpha(r, r).
class ClassK2 {
 public:
  ClassK2() = default;
  ClassK2(std::string name, std::function<double(double, double)> f);

  /// Bound depending only on the first argument.
  static ClassK2 of_discrete(const ClassK& k);

  [[nodiscard]] double operator()(double rd, double rc) const { return f_(rd, rc); }
  [[nodiscard]] ClassK diagonal() const;
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(double, double)> f_;
};

struct ClassKValidation {
  bool pass = true;
  std::string failure;
};

/// Samples [0, r_max]: alpha(0) within 1e-12, strict monotonicity, and
/// inverse round trip within 1e-8 (relative to max(1, r)).
ClassKValidation validate_class_k(const ClassK& k, double r_max = 10.0, std::size_t samples = 1000,
                                  std::uint64_t seed = 3);

/// Zero at (0,0) and monotone in each argument on sampled pairs.
ClassKValidation validate_class_k2(const ClassK2& k, double r_max = 10.0, std::size_t samples = 1000,
                                   std::uint64_t seed = 3);

}  // namespace hycoalg
