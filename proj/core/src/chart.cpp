#include "hycoalg/chart.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hycoalg/numeric.hpp"

namespace hycoalg {

ChartObject::ChartObject(std::size_t continuous_dim, std::vector<Mode> modes, Membership member)
    : dim_(continuous_dim), modes_(std::move(modes)), member_(std::move(member)) {
  if (modes_.empty()) throw ValidationError("chart object needs at least one mode");
  std::set<Mode> seen;
  for (const auto& m : modes_) {
    if (!seen.insert(m).second) throw ValidationError("duplicate mode label '" + m + "'");
  }
}

ChartObject ChartObject::terminal() { return ChartObject(0, {"*"}); }

bool ChartObject::has_mode(const Mode& m) const {
  return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

bool ChartObject::contains(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != dim_) return false;
  return !member_ || member_(x);
}

bool ChartObject::same_shape(const ChartObject& other) const {
  if (dim_ != other.dim_ || modes_.size() != other.modes_.size()) return false;
  return std::all_of(modes_.begin(), modes_.end(), [&](const Mode& m) { return other.has_mode(m); });
}

Vec ChartMorphism::continuous(const Vec& x) const { return fc(x); }

Mode ChartMorphism::discrete(const Mode& s, const Vec& x) const { return fd(s, x); }

TaggedPoint ChartMorphism::operator()(const TaggedPoint& p) const { return {fd(p.mode, p.x), fc(p.x)}; }

Mat ChartMorphism::jacobian(const Vec& x) const {
  if (jacobian_fn) {
    Mat j = (*jacobian_fn)(x);
    if (!j.allFinite()) throw EvaluationError("analytic Jacobian is not finite", x);
    return j;
  }
  return numeric::central_jacobian(fc, x);
}

ChartMorphism ChartMorphism::identity(const ChartObject& obj) {
  const auto n = static_cast<Eigen::Index>(obj.dim());
  return ChartMorphism{
      obj,
      obj,
      [](const Vec& x) { return x; },
      [](const Mode& s, const Vec&) { return s; },
      [n](const Vec&) -> Mat { return Mat::Identity(n, n); },
  };
}

ChartMorphism compose(const ChartMorphism& g, const ChartMorphism& f) {
  if (!f.target.same_shape(g.source)) {
    throw ChartError("cannot compose: target of first morphism (dim " + std::to_string(f.target.dim()) +
                     ") does not match source of second (dim " + std::to_string(g.source.dim()) + ")");
  }
  ChartMorphism out{
      f.source,
      g.target,
      [gc = g.fc, fc = f.fc](const Vec& x) { return gc(fc(x)); },
      // g_d receives f_c(x), not g_c(f_c(x)).
      [gd = g.fd, fd = f.fd, fc = f.fc](const Mode& s, const Vec& x) { return gd(fd(s, x), fc(x)); },
      std::nullopt,
  };
  if (f.jacobian_fn && g.jacobian_fn) {
    out.jacobian_fn = [gj = *g.jacobian_fn, fj = *f.jacobian_fn, fc = f.fc](const Vec& x) -> Mat {
      return gj(fc(x)) * fj(x);
    };
  }
  return out;
}

Mode product_mode(const Mode& a, const Mode& b) { return "(" + a + "," + b + ")"; }

ProductChart product(const ChartObject& a, const ChartObject& b) {
  std::vector<Mode> modes;
  auto split = std::make_shared<std::map<Mode, std::pair<Mode, Mode>>>();
  for (const auto& ma : a.modes()) {
    for (const auto& mb : b.modes()) {
      const Mode m = product_mode(ma, mb);
      modes.push_back(m);
      (*split)[m] = {ma, mb};
    }
  }
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  ChartObject obj(a.dim() + b.dim(), modes, [a, b, na, nb](const Vec& x) {
    return a.contains(x.head(na)) && b.contains(x.segment(na, nb));
  });

  auto lookup = [split](const Mode& m) -> const std::pair<Mode, Mode>& {
    auto it = split->find(m);
    if (it == split->end()) throw ValidationError("mode '" + m + "' is not a product mode");
    return it->second;
  };

  ChartMorphism first{
      obj,
      a,
      [na](const Vec& x) -> Vec { return x.head(na); },
      [lookup](const Mode& s, const Vec&) { return lookup(s).first; },
      [na, nb](const Vec&) -> Mat {
        Mat j = Mat::Zero(na, na + nb);
        j.leftCols(na).setIdentity();
        return j;
      },
  };
  ChartMorphism second{
      obj,
      b,
      [na, nb](const Vec& x) -> Vec { return x.segment(na, nb); },
      [lookup](const Mode& s, const Vec&) { return lookup(s).second; },
      [na, nb](const Vec&) -> Mat {
        Mat j = Mat::Zero(nb, na + nb);
        j.rightCols(nb).setIdentity();
        return j;
      },
  };
  return ProductChart{std::move(obj), std::move(first), std::move(second)};
}

ChartMorphism pairing(const ChartMorphism& f, const ChartMorphism& g, const ProductChart& prod) {
  if (!f.source.same_shape(g.source)) throw ChartError("pairing needs morphisms with a common source");
  if (!f.target.same_shape(prod.first.target) || !g.target.same_shape(prod.second.target)) {
    throw ChartError("pairing targets do not match the product factors");
  }
  return ChartMorphism{
      f.source,
      prod.object,
      [fc = f.fc, gc = g.fc](const Vec& x) -> Vec {
        const Vec a = fc(x);
        const Vec b = gc(x);
        Vec out(a.size() + b.size());
        out << a, b;
        return out;
      },
      [fd = f.fd, gd = g.fd](const Mode& s, const Vec& x) { return product_mode(fd(s, x), gd(s, x)); },
      std::nullopt,
  };
}

// ---------------------------------------------------------------------------

bool HObject::valid_discrete(const PointSet& set) const {
  return std::all_of(set.begin(), set.end(),
                     [&](const TaggedPoint& p) { return base_.has_mode(p.mode) && base_.contains(p.x); });
}

HMorphism apply_H(const ChartMorphism& f) {
  return HMorphism{
      HObject(f.source),
      HObject(f.target),
      [f](const TangentPair& tp) {
        return TangentPair{f.continuous(tp.x), f.jacobian(tp.x) * tp.v};
      },
      [f](const PointSet& set, const TangentPair&) {
        PointSet out;
        out.reserve(set.size());
        for (const auto& p : set) out.push_back(f(p));
        return canonical(std::move(out));
      },
  };
}

HMorphism compose(const HMorphism& g, const HMorphism& f) {
  if (!f.target.base().same_shape(g.source.base())) throw ChartError("cannot compose H-morphisms: shape mismatch");
  return HMorphism{
      f.source,
      g.target,
      [gc = g.continuous, fc = f.continuous](const TangentPair& tp) { return gc(fc(tp)); },
      [gd = g.discrete, fd = f.discrete, fc = f.continuous](const PointSet& a, const TangentPair& tp) {
        return gd(fd(a, tp), fc(tp));
      },
  };
}

// ---------------------------------------------------------------------------

TaggedPoint ChartSampler::draw(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, obj_.modes().size() - 1);
  const Mode m = obj_.modes()[pick(rng)];
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Vec x = box_.sample(rng);
    if (obj_.contains(x)) return {m, std::move(x)};
  }
  throw ValidationError("sampler box does not intersect the chart object's region");
}

PointSet ChartSampler::draw_set(Rng& rng, std::size_t max_size) const {
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  PointSet out;
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw(rng));
  return canonical(std::move(out));
}

namespace {

void record(LawReport& report, double deviation, bool discrete_ok, const TaggedPoint& p, double tol) {
  ++report.samples;
  report.max_continuous_deviation = std::max(report.max_continuous_deviation, deviation);
  if (!discrete_ok) ++report.discrete_mismatches;
  if ((deviation > tol || !discrete_ok) && report.pass) {
    report.pass = false;
    report.witness = p;
  }
}

/// Continuous deviation of two point sets that agree in modes; infinity if
/// the modes or cardinalities differ.
std::pair<double, bool> compare_sets(const PointSet& a, const PointSet& b) {
  if (a.size() != b.size()) return {0.0, false};
  double dev = 0.0;
  // Sets are canonical, but tiny floating differences may reorder points
  // that share a mode. Match greedily within each mode.
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i] || b[i].mode != p.mode) continue;
      const double d = numeric::relative_deviation(p.x, b[i].x);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    if (best_i == b.size()) return {0.0, false};
    used[best_i] = true;
    dev = std::max(dev, best);
  }
  return {dev, true};
}

}  // namespace

LawReport compare_morphisms(const ChartMorphism& a, const ChartMorphism& b, const ChartSampler& sampler,
                            const LawConfig& cfg) {
  Rng rng(cfg.seed);
  LawReport report;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const TaggedPoint p = sampler.draw(rng);
    const TaggedPoint pa = a(p);
    const TaggedPoint pb = b(p);
    record(report, numeric::relative_deviation(pa.x, pb.x), pa.mode == pb.mode, p, cfg.rel_tol);
  }
  return report;
}

LawReport check_identity_laws(const ChartMorphism& f, const ChartSampler& sampler, const LawConfig& cfg) {
  const auto left = compose(ChartMorphism::identity(f.target), f);
  const auto right = compose(f, ChartMorphism::identity(f.source));
  LawReport r1 = compare_morphisms(left, f, sampler, cfg);
  LawReport r2 = compare_morphisms(right, f, sampler, cfg);
  LawReport out;
  out.samples = r1.samples + r2.samples;
  out.max_continuous_deviation = std::max(r1.max_continuous_deviation, r2.max_continuous_deviation);
  out.discrete_mismatches = r1.discrete_mismatches + r2.discrete_mismatches;
  out.pass = r1.pass && r2.pass;
  out.witness = r1.witness ? r1.witness : r2.witness;
  return out;
}

LawReport check_associativity(const ChartMorphism& h, const ChartMorphism& g, const ChartMorphism& f,
                              const ChartSampler& sampler, const LawConfig& cfg) {
  return compare_morphisms(compose(h, compose(g, f)), compose(compose(h, g), f), sampler, cfg);
}

LawReport check_functoriality(const ChartMorphism& g, const ChartMorphism& f, const ChartSampler& sampler,
                              const LawConfig& cfg) {
  const HMorphism whole = apply_H(compose(g, f));
  const HMorphism parts = compose(apply_H(g), apply_H(f));
  Rng rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  LawReport report;
  const auto n = static_cast<Eigen::Index>(f.source.dim());
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const TaggedPoint p = sampler.draw(rng);
    Vec v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = gauss(rng);
    const TangentPair tp{p.x, v};
    const TangentPair a = whole.continuous(tp);
    const TangentPair b = parts.continuous(tp);
    const double dev = std::max(numeric::relative_deviation(a.x, b.x), numeric::relative_deviation(a.v, b.v));

    const PointSet set = sampler.draw_set(rng, 4);
    const PointSet da = whole.discrete(set, tp);
    const PointSet db = parts.discrete(set, tp);
    auto [set_dev, set_ok] = compare_sets(da, db);

    // Same set with a different velocity must give the identical image.
    Vec w(n);
    for (Eigen::Index k = 0; k < n; ++k) w[k] = gauss(rng);
    const PointSet dw = whole.discrete(set, TangentPair{p.x, w});
    const bool velocity_free = same_set(da, dw);

    record(report, std::max(dev, set_dev), set_ok && velocity_free, p, cfg.rel_tol);
  }
  return report;
}

LawReport check_H_identity(const ChartObject& obj, const ChartSampler& sampler, const LawConfig& cfg) {
  const HMorphism id = apply_H(ChartMorphism::identity(obj));
  Rng rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  LawReport report;
  const auto n = static_cast<Eigen::Index>(obj.dim());
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const TaggedPoint p = sampler.draw(rng);
    Vec v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = gauss(rng);
    const TangentPair out = id.continuous({p.x, v});
    const double dev = std::max(numeric::relative_deviation(out.x, p.x), numeric::relative_deviation(out.v, v));
    const PointSet set = sampler.draw_set(rng, 4);
    record(report, dev, same_set(id.discrete(set, {p.x, v}), set), p, cfg.rel_tol);
  }
  return report;
}

LawReport check_product_universal(const ChartMorphism& f, const ChartMorphism& g, const ChartSampler& sampler,
                                  const LawConfig& cfg) {
  const ProductChart prod = product(f.target, g.target);
  const ChartMorphism fg = pairing(f, g, prod);
  LawReport r1 = compare_morphisms(compose(prod.first, fg), f, sampler, cfg);
  LawReport r2 = compare_morphisms(compose(prod.second, fg), g, sampler, cfg);
  LawReport out;
  out.samples = r1.samples + r2.samples;
  out.max_continuous_deviation = std::max(r1.max_continuous_deviation, r2.max_continuous_deviation);
  out.discrete_mismatches = r1.discrete_mismatches + r2.discrete_mismatches;
  out.pass = r1.pass && r2.pass;
  out.witness = r1.witness ? r1.witness : r2.witness;
  return out;
}

LawReport check_well_formed(const ChartMorphism& f, const ChartSampler& sampler, const LawConfig& cfg) {
  Rng rng(cfg.seed);
  LawReport report;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const TaggedPoint p = sampler.draw(rng);
    const TaggedPoint q = f(p);
    const bool ok = f.target.contains(q.x) && f.target.has_mode(q.mode);
    record(report, 0.0, ok, p, cfg.rel_tol);
  }
  return report;
}

}  // namespace hycoalg
