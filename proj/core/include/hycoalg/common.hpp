#pragma once

// Shared vocabulary for the hycoalg library: state vectors, mode labels,
// tagged points of S x M, finite point sets, sampling boxes and the error
// hierarchy every module throws from.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hycoalg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Discrete mode label (an element of the mode set S).
using Mode = std::string;

/// Deterministic engine used by every sampler in the library.
using Rng = std::mt19937_64;

/// A point of S x M: a mode together with a continuous state.
struct TaggedPoint {
  Mode mode;
  Vec x;
};

bool operator==(const TaggedPoint& a, const TaggedPoint& b);
bool operator<(const TaggedPoint& a, const TaggedPoint& b);

/// Finite subset of S x M. Stored sorted and without duplicates once passed
/// through canonical().
using PointSet = std::vector<TaggedPoint>;

PointSet canonical(PointSet set);

/// Exact set equality after canonicalization.
bool same_set(const PointSet& a, const PointSet& b);

std::string to_string(const Vec& x);
std::string to_string(const TaggedPoint& p);

Vec make_vec(std::initializer_list<double> values);

/// Axis-aligned box used to draw uniform samples.
struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(Vec lo_, Vec hi_);

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(lo.size()); }
  [[nodiscard]] bool contains(const Vec& x) const;
  [[nodiscard]] Vec sample(Rng& rng) const;
  [[nodiscard]] Vec center() const { return 0.5 * (lo + hi); }
};

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched source/target objects when composing charts.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// A map could not be evaluated (non-finite output, failed Jacobian).
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, Vec witness);
  [[nodiscard]] const Vec& witness() const { return witness_; }

 private:
  Vec witness_;
};

/// Classical hybrid system could not be encoded (e.g. overlapping guards).
class EncodingError : public Error {
 public:
  EncodingError(const std::string& what, std::optional<TaggedPoint> witness = std::nullopt);
  [[nodiscard]] const std::optional<TaggedPoint>& witness() const { return witness_; }

 private:
  std::optional<TaggedPoint> witness_;
};

/// Malformed input data (unknown mode, dimension mismatch, bad parameter).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Simulation failure; carries the offending state.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, std::optional<TaggedPoint> witness, double t);
  [[nodiscard]] const std::optional<TaggedPoint>& witness() const { return witness_; }
  [[nodiscard]] double time() const { return t_; }

 private:
  std::optional<TaggedPoint> witness_;
  double t_;
};

/// Trajectory left its domain without reaching a guard.
class EscapeError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Guard crossing could not be localized to tolerance.
class EventError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// An operation refused to run because a prerequisite check did not pass.
class PrerequisiteError : public Error {
 public:
  using Error::Error;
};

}  // namespace hycoalg
