#include "hycoalg/common.hpp"

#include <algorithm>
#include <sstream>

namespace hycoalg {

bool operator==(const TaggedPoint& a, const TaggedPoint& b) {
  return a.mode == b.mode && a.x.size() == b.x.size() && a.x == b.x;
}

bool operator<(const TaggedPoint& a, const TaggedPoint& b) {
  if (a.mode != b.mode) return a.mode < b.mode;
  if (a.x.size() != b.x.size()) return a.x.size() < b.x.size();
  for (Eigen::Index i = 0; i < a.x.size(); ++i) {
    if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
  }
  return false;
}

PointSet canonical(PointSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

bool same_set(const PointSet& a, const PointSet& b) {
  const auto ca = canonical(a);
  const auto cb = canonical(b);
  return ca.size() == cb.size() && std::equal(ca.begin(), ca.end(), cb.begin());
}

std::string to_string(const Vec& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const TaggedPoint& p) { return p.mode + ":" + to_string(p.x); }

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double d : values) v[i++] = d;
  return v;
}

Box::Box(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size()) throw ValidationError("box bounds have different dimensions");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw ValidationError("box lower bound exceeds upper bound");
  }
}

bool Box::contains(const Vec& x) const {
  if (x.size() != lo.size()) return false;
  return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
}

Vec Box::sample(Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec x(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) x[i] = lo[i] + u(rng) * (hi[i] - lo[i]);
  return x;
}

EvaluationError::EvaluationError(const std::string& what, Vec witness)
    : Error(what + " at " + to_string(witness)), witness_(std::move(witness)) {}

EncodingError::EncodingError(const std::string& what, std::optional<TaggedPoint> witness)
    : Error(witness ? what + " at " + to_string(*witness) : what), witness_(std::move(witness)) {}

SimulationError::SimulationError(const std::string& what, std::optional<TaggedPoint> witness, double t)
    : Error(witness ? what + " at " + to_string(*witness) : what), witness_(std::move(witness)), t_(t) {}

}  // namespace hycoalg
