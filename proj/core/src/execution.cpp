#include "hycoalg/execution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hycoalg {

numeric::HermiteSegment ExecutionInterval::segment(std::size_t k) const {
  const Sample& a = samples.at(k);
  const Sample& b = samples.at(k + 1);
  return numeric::HermiteSegment{a.t, b.t, a.x, b.x, a.dx, b.dx};
}

namespace {

std::size_t locate(const std::vector<Sample>& s, double t) {
  auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const Sample& smp) { return v < smp.t; });
  if (it == s.begin()) return 0;
  std::size_t k = static_cast<std::size_t>(it - s.begin()) - 1;
  return std::min(k, s.size() - 2);
}

}  // namespace

Vec ExecutionInterval::state_at(double t) const {
  if (samples.size() == 1) return samples.front().x;
  return segment(locate(samples, t)).value(t);
}

Vec ExecutionInterval::derivative_at(double t) const {
  if (samples.size() == 1) return samples.front().dx;
  return segment(locate(samples, t)).derivative(t);
}

std::string to_string(Truncation t) {
  switch (t) {
    case Truncation::completed: return "completed";
    case Truncation::zeno: return "zeno-truncated";
    case Truncation::horizon: return "horizon-truncated";
    case Truncation::max_jumps: return "max-jumps-truncated";
  }
  return "unknown";
}

bool HybridTimeDomain::monotone() const { return std::is_sorted(tau.begin(), tau.end()); }

HybridTimeDomain HybridExecution::domain() const {
  HybridTimeDomain d;
  d.reason = truncation;
  d.unbounded = truncation == Truncation::zeno;
  for (const auto& iv : intervals) d.tau.push_back(iv.begin());
  if (!intervals.empty()) d.tau.push_back(intervals.back().end());
  return d;
}

double HybridExecution::flow_time() const {
  double total = 0.0;
  for (const auto& iv : intervals) total += iv.duration();
  return total;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kFirstOnly = std::numeric_limits<double>::infinity();

void fail_at(ConditionResult& r, double score, double worst_score, const Mode& m, const Vec& x, double t,
             std::size_t j, const std::string& detail) {
  if (score > worst_score || !r.witness) {
    r.witness = TaggedPoint{m, x};
    r.witness_time = t;
    r.witness_interval = j;
    r.detail = detail;
  }
  r.pass = false;
}

}  // namespace

SolutionVerdict verify_solution(const HCoalgebra& sys, const HybridExecution& cand, const VerifyConfig& cfg) {
  SolutionVerdict v;
  v.flow.name = "flow";
  v.jump.name = "jump";
  v.no_missed_jump.name = "no_missed_jump";
  v.domain.name = "domain";

  if (cand.intervals.empty()) throw ValidationError("candidate execution has no intervals");
  for (std::size_t j = 0; j < cand.intervals.size(); ++j) {
    const auto& iv = cand.intervals[j];
    if (!sys.state().has_mode(iv.mode)) {
      throw ValidationError("interval " + std::to_string(j) + " uses mode '" + iv.mode + "' which is not in S");
    }
    if (iv.samples.empty()) throw ValidationError("interval " + std::to_string(j) + " has no samples");
    for (const auto& s : iv.samples) {
      if (static_cast<std::size_t>(s.x.size()) != sys.state().dim()) {
        throw ValidationError("sample dimension does not match the state space");
      }
    }
  }
  if (!cand.domain().monotone()) throw ValidationError("jump times are not monotone");

  double worst_flow_excess = -1.0;
  for (std::size_t j = 0; j < cand.intervals.size(); ++j) {
    const auto& iv = cand.intervals[j];

    // Domain membership at every sample.
    for (const auto& s : iv.samples) {
      ++v.domain.evaluated;
      if (!sys.in_domain(iv.mode, s.x)) fail_at(v.domain, 1.0, kFirstOnly, iv.mode, s.x, s.t, j, "outside domain");
    }

    // Flow residual at midpoints of the dense output.
    for (std::size_t k = 0; k + 1 < iv.samples.size(); ++k) {
      const auto seg = iv.segment(k);
      if (seg.t1 <= seg.t0) continue;
      const double tm = 0.5 * (seg.t0 + seg.t1);
      const Vec xm = seg.value(tm);
      const Vec f = sys.flow(iv.mode, xm);
      const double residual = (seg.derivative(tm) - f).norm();
      const double tol = cfg.tol_flow_abs + cfg.tol_flow_rel * f.norm();
      ++v.flow.evaluated;
      v.flow.worst = std::max(v.flow.worst, residual);
      if (residual > tol) {
        const double excess = residual - tol;
        fail_at(v.flow, excess, worst_flow_excess, iv.mode, xm, tm, j, "flow residual " + std::to_string(residual));
        worst_flow_excess = std::max(worst_flow_excess, excess);
      }
    }

    // f_d must be empty away from the interval ends.
    const double t_begin = iv.begin();
    const double t_end = iv.end();
    for (std::size_t k = 1; k + 1 < iv.samples.size(); ++k) {
      const auto& s = iv.samples[k];
      if (s.t - t_begin < cfg.edge_exclusion || t_end - s.t < cfg.edge_exclusion) continue;
      ++v.no_missed_jump.evaluated;
      if (!sys.jump(iv.mode, s.x).empty()) {
        fail_at(v.no_missed_jump, 1.0, kFirstOnly, iv.mode, s.x, s.t, j, "jump available at a non-jump time");
        break;
      }
    }

    // Jump: f_d(pre) == {post}.
    if (j + 1 < cand.intervals.size()) {
      const auto& next = cand.intervals[j + 1];
      const Sample& pre = iv.samples.back();
      const Sample& post = next.samples.front();
      ++v.jump.evaluated;
      const PointSet image = sys.jump(iv.mode, pre.x);
      if (image.size() != 1) {
        fail_at(v.jump, 1.0, kFirstOnly, iv.mode, pre.x, pre.t, j,
                image.empty() ? "no jump available at jump time" : "jump image is not a singleton");
        continue;
      }
      const TaggedPoint& target = image.front();
      const double err = (target.x - post.x).norm() / std::max(1.0, target.x.norm());
      v.jump.worst = std::max(v.jump.worst, err);
      if (target.mode != next.mode || err > cfg.tol_reset || std::abs(post.t - pre.t) > 0.0) {
        fail_at(v.jump, err, kFirstOnly, iv.mode, pre.x, pre.t, j,
                "post-jump state " + to_string(TaggedPoint{next.mode, post.x}) + " differs from reset image " +
                    to_string(target));
      }
    }
  }
  v.pass = v.flow.pass && v.jump.pass && v.no_missed_jump.pass && v.domain.pass;
  return v;
}

}  // namespace hycoalg
