#include "hycoalg/coalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hycoalg/numeric.hpp"

namespace hycoalg {

bool Region::contains(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != dim) return false;
  return slack(x) >= -tol;
}

double Region::slack(const Vec& x) const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& c : constraints) s = std::min(s, c(x));
  return s;
}

bool Guard::contains(const Vec& x) const { return surface(x) <= tol && is_admissible(x); }

// ---------------------------------------------------------------------------

ClassicalHybridSystem::ClassicalHybridSystem(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw ValidationError("hybrid system needs at least one vertex");
  dim_ = vertices_.front().domain.dim;
  std::set<Mode> names;
  for (const auto& v : vertices_) {
    if (!names.insert(v.name).second) throw ValidationError("duplicate vertex '" + v.name + "'");
    if (v.domain.dim != dim_) {
      throw ValidationError("vertex '" + v.name + "' has dimension " + std::to_string(v.domain.dim) +
                            ", expected " + std::to_string(dim_));
    }
    if (!v.field) throw ValidationError("vertex '" + v.name + "' has no vector field");
  }
  std::set<std::string> edge_names;
  for (const auto& e : edges_) {
    if (!names.count(e.source) || !names.count(e.target)) {
      throw ValidationError("edge '" + e.name + "' references an unknown vertex");
    }
    if (!edge_names.insert(e.name).second) throw ValidationError("duplicate edge '" + e.name + "'");
    if (!e.guard.surface || !e.reset) throw ValidationError("edge '" + e.name + "' is missing guard or reset");
  }
}

const Vertex& ClassicalHybridSystem::vertex(const Mode& name) const {
  for (const auto& v : vertices_) {
    if (v.name == name) return v;
  }
  throw ValidationError("unknown mode '" + name + "'");
}

bool ClassicalHybridSystem::has_vertex(const Mode& name) const {
  return std::any_of(vertices_.begin(), vertices_.end(), [&](const Vertex& v) { return v.name == name; });
}

std::vector<const Edge*> ClassicalHybridSystem::outgoing(const Mode& v) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_) {
    if (e.source == v) out.push_back(&e);
  }
  return out;
}

const Edge* ClassicalHybridSystem::edge(const std::string& name) const {
  for (const auto& e : edges_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

HCoalgebra::HCoalgebra(ChartObject state, DomainTest in_domain, Flow flow, Jump jump, CoalgebraKind kind,
                       std::shared_ptr<const ClassicalHybridSystem> classical)
    : state_(std::move(state)),
      in_domain_(std::move(in_domain)),
      flow_(std::move(flow)),
      jump_(std::move(jump)),
      kind_(kind),
      classical_(std::move(classical)) {}

Vec HCoalgebra::flow(const Mode& m, const Vec& x) const {
  if (!state_.has_mode(m)) throw ValidationError("mode '" + m + "' is not in S");
  Vec v = flow_(m, x);
  if (!v.allFinite()) throw EvaluationError("vector field is not finite", x);
  return v;
}

PointSet HCoalgebra::jump(const Mode& m, const Vec& x) const {
  if (!state_.has_mode(m)) throw ValidationError("mode '" + m + "' is not in S");
  return canonical(jump_(m, x));
}

HCoalgebra encode_hybrid(const ClassicalHybridSystem& h, const EncodeOptions& opts) {
  auto sys = std::make_shared<const ClassicalHybridSystem>(h);

  // Sampled guard disjointness per source vertex.
  Rng rng(opts.seed);
  for (const auto& v : sys->vertices()) {
    auto box_it = opts.sample_boxes.find(v.name);
    if (box_it == opts.sample_boxes.end()) continue;
    const auto out = sys->outgoing(v.name);
    if (out.size() < 2) continue;
    for (const Edge* e : out) {
      for (const Vec& x : sample_guard(*sys, *e, box_it->second, opts.samples_per_edge, rng)) {
        for (const Edge* other : out) {
          if (other != e && other->guard.contains(x)) {
            throw EncodingError("guards of edges '" + e->name + "' and '" + other->name + "' overlap",
                                TaggedPoint{v.name, x});
          }
        }
      }
    }
  }

  std::vector<Mode> modes;
  for (const auto& v : sys->vertices()) modes.push_back(v.name);
  ChartObject state(sys->dim(), modes, [sys](const Vec& x) {
    return std::any_of(sys->vertices().begin(), sys->vertices().end(),
                       [&](const Vertex& v) { return v.domain.contains(x); });
  });

  auto in_domain = [sys](const Mode& m, const Vec& x) { return sys->vertex(m).domain.contains(x); };
  auto flow = [sys](const Mode& m, const Vec& x) { return sys->vertex(m).field(x); };
  auto jump = [sys](const Mode& m, const Vec& x) {
    PointSet out;
    const Edge* taken = nullptr;
    for (const Edge* e : sys->outgoing(m)) {
      if (!e->guard.contains(x)) continue;
      if (taken) {
        throw EncodingError("guards of edges '" + taken->name + "' and '" + e->name + "' overlap",
                            TaggedPoint{m, x});
      }
      taken = e;
      out.push_back({e->target, e->reset(x)});
    }
    return out;
  };
  return HCoalgebra(std::move(state), in_domain, flow, jump, CoalgebraKind::classical, sys);
}

HCoalgebra encode_switching(std::size_t dim, std::vector<SwitchingMode> modes, Region region) {
  if (modes.empty()) throw ValidationError("switching system needs at least one mode");
  region.dim = dim;
  auto fields = std::make_shared<std::map<Mode, VectorField>>();
  std::vector<Mode> names;
  for (auto& m : modes) {
    names.push_back(m.name);
    (*fields)[m.name] = std::move(m.field);
  }
  ChartObject state(dim, names, [region](const Vec& x) { return region.contains(x); });
  auto in_domain = [region](const Mode&, const Vec& x) { return region.contains(x); };
  auto flow = [fields](const Mode& m, const Vec& x) { return fields->at(m)(x); };
  auto jump = [names](const Mode&, const Vec& x) {
    PointSet out;
    for (const auto& p : names) out.push_back({p, x});
    return out;
  };
  return HCoalgebra(std::move(state), in_domain, flow, jump, CoalgebraKind::switching);
}

std::optional<Vec> project_to_surface(const Guard& guard, Vec x, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const double g = guard.surface(x);
    if (std::abs(g) <= 1e-14 * (1.0 + x.norm())) return x;
    const Vec grad = numeric::central_gradient(guard.surface, x);
    const double n2 = grad.squaredNorm();
    if (n2 < 1e-24) return std::nullopt;
    x -= (g / n2) * grad;
  }
  if (std::abs(guard.surface(x)) <= 1e-10) return x;
  return std::nullopt;
}

std::vector<Vec> sample_guard(const ClassicalHybridSystem& h, const Edge& e, const Box& box, std::size_t count,
                              Rng& rng) {
  std::vector<Vec> out;
  const Region& domain = h.vertex(e.source).domain;
  std::size_t attempts = 0;
  while (out.size() < count && attempts < 200 * count + 1000) {
    ++attempts;
    auto p = project_to_surface(e.guard, box.sample(rng));
    if (!p || !e.guard.contains(*p) || !domain.contains(*p)) continue;
    out.push_back(std::move(*p));
  }
  return out;
}

// ---------------------------------------------------------------------------

double GeneralizedElement::continuous_norm(const Vec& x) const {
  if (analytic_distance) return analytic_distance(x);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : image) best = std::min(best, (x - p.x).norm());
  return best;
}

double GeneralizedElement::discrete_norm(const Mode& s, const Vec& x) const {
  if (analytic_discrete) return analytic_discrete(s, x);
  if (analytic_distance) {
    const bool mode_hit =
        std::any_of(image.begin(), image.end(), [&](const TaggedPoint& p) { return p.mode == s; });
    return analytic_distance(x) + (mode_hit ? 0.0 : mode_weight);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : image) {
    best = std::min(best, (x - p.x).norm() + (p.mode == s ? 0.0 : mode_weight));
  }
  return best;
}

GeneralizedElement GeneralizedElement::point(TaggedPoint p, std::string name) {
  GeneralizedElement z;
  z.name = std::move(name);
  Vec centre = p.x;
  z.image = {std::move(p)};
  z.analytic_distance = [centre](const Vec& x) { return (x - centre).norm(); };
  return z;
}

ZenoEquilibriumVerdict validate_zeno_equilibrium(const ClassicalHybridSystem& h, const std::map<Mode, Vec>& z,
                                                 double tol_ne, double tol) {
  ZenoEquilibriumVerdict verdict;
  for (const auto& v : h.vertices()) {
    auto it = z.find(v.name);
    if (it == z.end()) {
      verdict.non_equilibrium = false;
      verdict.failures.push_back("no point given for vertex '" + v.name + "'");
      continue;
    }
    if (!v.domain.contains(it->second)) {
      verdict.non_equilibrium = false;
      verdict.failures.push_back("z_" + v.name + " is outside its domain");
    }
    const double speed = v.field(it->second).norm();
    if (!(speed > tol_ne)) {
      verdict.non_equilibrium = false;
      verdict.failures.push_back("f_" + v.name + "(z) vanishes: z is an equilibrium of the flow");
    }
  }
  for (const auto& e : h.edges()) {
    auto src = z.find(e.source);
    auto tgt = z.find(e.target);
    if (src == z.end() || tgt == z.end()) continue;
    if (!e.guard.contains(src->second)) {
      verdict.jump_invariance = false;
      verdict.failures.push_back("z_" + e.source + " is not in the guard of edge '" + e.name + "'");
      continue;
    }
    const Vec r = e.reset(src->second);
    if ((r - tgt->second).norm() > tol * (1.0 + tgt->second.norm())) {
      verdict.jump_invariance = false;
      verdict.failures.push_back("reset of edge '" + e.name + "' maps z_" + e.source + " to " + to_string(r) +
                                 ", not z_" + e.target);
    }
  }
  verdict.pass = verdict.non_equilibrium && verdict.jump_invariance;
  return verdict;
}

}  // namespace hycoalg
