#include "hycoalg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hycoalg {

void SimConfig::validate() const {
  if (!(dt_max > 0) || !(event_tol > 0) || !(time_tol > 0) || !(zeno_dt_min > 0) || !(horizon > 0) ||
      max_jumps == 0 || zeno_consecutive == 0 || zeno_fit_window < 2) {
    throw ValidationError("simulation config entries must be positive");
  }
}

Vec rk4_step(const std::function<Vec(const Vec&)>& f, const Vec& x, double h) {
  const Vec k1 = f(x);
  const Vec k2 = f(x + 0.5 * h * k1);
  const Vec k3 = f(x + 0.5 * h * k2);
  const Vec k4 = f(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::pair<double, std::optional<double>> geometric_tail(const std::vector<double>& dts, std::size_t window) {
  if (dts.size() < 2) return {0.0, std::nullopt};
  const std::size_t n = std::min(window, dts.size());
  const auto first = dts.end() - static_cast<std::ptrdiff_t>(n);
  if (std::any_of(first, dts.end(), [](double d) { return !(d > 0.0); })) return {0.0, std::nullopt};
  double log_sum = 0.0;
  for (auto it = first; it + 1 != dts.end(); ++it) log_sum += std::log(*(it + 1) / *it);
  const double ratio = std::exp(log_sum / static_cast<double>(n - 1));
  if (ratio >= 1.0) return {0.0, ratio};
  return {dts.back() * ratio / (1.0 - ratio), ratio};
}

// ---------------------------------------------------------------------------

namespace {

double bisect(const std::function<double(double)>& g, double lo, double hi, const SimConfig& cfg) {
  for (int iter = 0; iter < 400; ++iter) {
    if (hi - lo <= cfg.time_tol && std::abs(g(hi)) <= cfg.event_tol) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

EventLocation locate_event(const numeric::HermiteSegment& seg, const Guard& guard, const SimConfig& cfg) {
  auto g = [&](double t) { return guard.surface(seg.value(t)); };
  const double t0 = seg.t0;
  const double t1 = seg.t1;
  const double g0 = guard.surface(seg.x0);
  const double g1 = guard.surface(seg.x1);
  constexpr int kScan = 16;

  auto finish = [&](double lo, double hi) {
    const double ts = bisect(g, lo, hi, cfg);
    Vec xs = seg.value(ts);
    if (std::abs(guard.surface(xs)) > cfg.event_tol) {
      throw EventError("event localization did not reach tolerance", TaggedPoint{"", xs}, ts);
    }
    return EventLocation{EventKind::crossing, ts, std::move(xs)};
  };

  // Earliest point with g <= 0 after the start.
  double first_nonpos = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i < kScan; ++i) {
    const double t = t0 + (t1 - t0) * i / kScan;
    if (g(t) <= 0.0) {
      first_nonpos = t;
      break;
    }
  }
  if (std::isnan(first_nonpos) && g1 <= 0.0) first_nonpos = t1;

  if (!std::isnan(first_nonpos)) {
    if (g0 > 0.0) {
      // A touch of the zero set that is positive again on the rest of the
      // grid is tangential, not a crossing.
      if (first_nonpos < t1 && g(first_nonpos) >= -cfg.event_tol) {
        bool returns = true;
        for (int i = 1; i <= kScan && returns; ++i) {
          const double t = t0 + (t1 - t0) * i / kScan;
          if (t > first_nonpos && g(t) <= 0.0) returns = false;
        }
        if (returns) return EventLocation{EventKind::grazing, first_nonpos, seg.value(first_nonpos)};
      }
      return finish(t0, first_nonpos);
    }
    // The segment starts on (or just below) the zero set. Look for the
    // part where the trajectory is strictly inside the domain, first by
    // approaching t0 geometrically, then on the uniform grid.
    double lo = std::numeric_limits<double>::quiet_NaN();
    for (int k = 1; k < 80; ++k) {
      const double t = t0 + (first_nonpos - t0) * std::ldexp(1.0, -k);
      if (t <= t0) break;
      if (g(t) > 0.0) {
        lo = t;
        break;
      }
    }
    if (std::isnan(lo)) return EventLocation{EventKind::none, t1, seg.x1};
    // Move lo forward to the last positive grid point before first_nonpos.
    for (int i = 1; i < kScan; ++i) {
      const double t = t0 + (t1 - t0) * i / kScan;
      if (t >= first_nonpos) break;
      if (t > lo && g(t) > 0.0) lo = t;
    }
    return finish(lo, first_nonpos);
  }

  // No sign change on the grid: check for a tangential touch.
  double a = t0;
  double b = t1;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  for (int iter = 0; iter < 100 && (b - a) > cfg.time_tol; ++iter) {
    if (g(c) < g(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  const double tm = 0.5 * (a + b);
  const double gm = g(tm);
  if (gm <= 0.0 && g0 > 0.0) return finish(t0, tm);
  if (gm <= cfg.event_tol) return EventLocation{EventKind::grazing, tm, seg.value(tm)};
  return EventLocation{EventKind::none, t1, seg.x1};
}

// ---------------------------------------------------------------------------

namespace {

class Engine {
 public:
  Engine(const HCoalgebra& sys, const SimConfig& cfg) : sys_(sys), cfg_(cfg) {}

  void start(const TaggedPoint& init) {
    if (!sys_.state().has_mode(init.mode)) throw ValidationError("initial mode '" + init.mode + "' is not in S");
    if (static_cast<std::size_t>(init.x.size()) != sys_.state().dim()) {
      throw ValidationError("initial state has dimension " + std::to_string(init.x.size()) + ", expected " +
                            std::to_string(sys_.state().dim()));
    }
    if (!sys_.in_domain(init.mode, init.x)) throw ValidationError("initial state " + to_string(init) + " is outside its domain");
    current_ = ExecutionInterval{init.mode, {sample(init.mode, 0.0, init.x)}, ""};
  }

  Sample sample(const Mode& m, double t, const Vec& x) const { return Sample{t, x, sys_.flow(m, x)}; }

  /// Closes the current interval and opens the next one. Returns false when
  /// the run must stop.
  bool jump(const std::string& edge_name, const TaggedPoint& post) {
    current_.edge = edge_name;
    const double t = current_.end();
    const double dt = current_.duration();
    result_.execution.intervals.push_back(std::move(current_));
    current_ = ExecutionInterval{post.mode, {sample(post.mode, t, post.x)}, ""};
    durations_.push_back(dt);
    streak_ = dt < cfg_.zeno_dt_min ? streak_ + 1 : 0;
    if (streak_ >= cfg_.zeno_consecutive) {
      result_.execution.truncation = Truncation::zeno;
      result_.zeno.is_zeno_flagged = true;
      return false;
    }
    if (durations_.size() >= cfg_.max_jumps) {
      result_.execution.truncation = Truncation::max_jumps;
      return false;
    }
    return true;
  }

  SimulationResult finish() {
    result_.execution.intervals.push_back(std::move(current_));
    ZenoReport& z = result_.zeno;
    z.jumps = durations_.size();
    const std::size_t n = std::min(cfg_.zeno_fit_window, durations_.size());
    z.dt_tail.assign(durations_.end() - static_cast<std::ptrdiff_t>(n), durations_.end());
    z.tau_infinity_estimate = result_.execution.end_time();
    if (z.is_zeno_flagged) {
      auto [tail, ratio] = geometric_tail(durations_, cfg_.zeno_fit_window);
      z.tau_infinity_estimate += tail;
      z.fitted_ratio = ratio;
    }
    return std::move(result_);
  }

  ExecutionInterval& current() { return current_; }
  SimulationResult& result() { return result_; }

 private:
  const HCoalgebra& sys_;
  const SimConfig& cfg_;
  ExecutionInterval current_;
  SimulationResult result_;
  std::vector<double> durations_;
  std::size_t streak_ = 0;
};

}  // namespace

SimulationResult simulate(const HCoalgebra& sys, const TaggedPoint& init, const SimConfig& cfg) {
  cfg.validate();
  const ClassicalHybridSystem* cls = sys.classical();
  if (!cls) throw ValidationError("simulate() needs a coalgebra encoded from a classical hybrid system");

  Engine engine(sys, cfg);
  engine.start(init);
  Mode mode = init.mode;
  Vec x = init.x;
  double t = 0.0;

  auto active_edge = [&](const Mode& m, const Vec& state) -> const Edge* {
    const Edge* hit = nullptr;
    for (const Edge* e : cls->outgoing(m)) {
      if (!e->guard.contains(state)) continue;
      if (hit) {
        throw SimulationError("state lies in the guards of '" + hit->name + "' and '" + e->name + "'",
                              TaggedPoint{m, state}, t);
      }
      hit = e;
    }
    return hit;
  };

  auto take = [&](const Edge& e, const Vec& pre) {
    Vec post = e.reset(pre);
    if (!post.allFinite()) throw SimulationError("reset of '" + e.name + "' is not finite", TaggedPoint{mode, pre}, t);
    if (!sys.in_domain(e.target, post)) {
      throw EscapeError("reset of '" + e.name + "' leaves the target domain", TaggedPoint{e.target, post}, t);
    }
    mode = e.target;
    x = std::move(post);
    return engine.jump(e.name, TaggedPoint{mode, x});
  };

  while (true) {
    if (const Edge* e = active_edge(mode, x)) {
      if (!take(*e, x)) break;
      continue;
    }
    if (t >= cfg.horizon) {
      engine.result().execution.truncation = Truncation::horizon;
      break;
    }
    const double h = std::min(cfg.dt_max, cfg.horizon - t);
    auto field = [&](const Vec& s) { return sys.flow(mode, s); };
    const Vec x1 = rk4_step(field, x, h);
    if (!x1.allFinite()) throw SimulationError("integration produced a non-finite state", TaggedPoint{mode, x}, t);
    const numeric::HermiteSegment seg{t, t + h, x, x1, engine.current().samples.back().dx, sys.flow(mode, x1)};

    const Edge* hit = nullptr;
    EventLocation first;
    for (const Edge* e : cls->outgoing(mode)) {
      const EventLocation loc = locate_event(seg, e->guard, cfg);
      if (loc.kind == EventKind::grazing) {
        engine.result().warnings.push_back("grazing contact with guard of '" + e->name + "' at t=" +
                                           std::to_string(loc.t) + "; no reset applied");
        continue;
      }
      if (loc.kind != EventKind::crossing) continue;
      if (hit && std::abs(loc.t - first.t) <= cfg.time_tol) {
        throw SimulationError("simultaneous crossings of '" + hit->name + "' and '" + e->name + "'",
                              TaggedPoint{mode, loc.x}, loc.t);
      }
      if (!hit || loc.t < first.t) {
        hit = e;
        first = loc;
      }
    }

    if (hit) {
      if (!hit->guard.is_admissible(first.x)) {
        throw EscapeError("trajectory reaches the guard surface of '" + hit->name + "' outside its admissible set",
                          TaggedPoint{mode, first.x}, first.t);
      }
      t = first.t;
      engine.current().samples.push_back(engine.sample(mode, t, first.x));
      if (!take(*hit, first.x)) break;
      continue;
    }

    if (!sys.in_domain(mode, x1)) {
      throw EscapeError("trajectory left the domain without reaching a guard", TaggedPoint{mode, x1}, t + h);
    }
    t += h;
    x = x1;
    engine.current().samples.push_back(Sample{t, x, seg.d1});
  }
  return engine.finish();
}

SimulationResult simulate_switching(const HCoalgebra& sys, const TaggedPoint& init, const SwitchingSignal& signal,
                                    const SimConfig& cfg) {
  cfg.validate();
  if (signal.times.size() != signal.modes.size()) throw ValidationError("switching signal times and modes differ in length");
  if (!std::is_sorted(signal.times.begin(), signal.times.end())) throw ValidationError("switching times must increase");

  Engine engine(sys, cfg);
  engine.start(init);
  Mode mode = init.mode;
  Vec x = init.x;
  double t = 0.0;
  std::size_t next = 0;
  while (true) {
    const double stop = next < signal.times.size() ? std::min(signal.times[next], cfg.horizon) : cfg.horizon;
    while (t < stop) {
      const double h = std::min(cfg.dt_max, stop - t);
      auto field = [&](const Vec& s) { return sys.flow(mode, s); };
      x = rk4_step(field, x, h);
      t = (stop - t <= cfg.dt_max) ? stop : t + h;
      if (!sys.in_domain(mode, x)) throw EscapeError("trajectory left the switching region", TaggedPoint{mode, x}, t);
      engine.current().samples.push_back(engine.sample(mode, t, x));
    }
    if (next >= signal.times.size() || signal.times[next] > cfg.horizon) {
      engine.result().execution.truncation = Truncation::horizon;
      break;
    }
    const TaggedPoint post{signal.modes[next], x};
    const PointSet available = sys.jump(mode, x);
    if (std::find(available.begin(), available.end(), post) == available.end()) {
      throw SimulationError("switch to '" + post.mode + "' is not in f_d", TaggedPoint{mode, x}, t);
    }
    mode = post.mode;
    ++next;
    if (!engine.jump("switch", post)) break;
  }
  return engine.finish();
}

}  // namespace hycoalg
