#include "hycoalg/expr.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace hycoalg::expr {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what, const json& node) {
  throw ValidationError(what + " in expression " + node.dump());
}

std::vector<Expr> compile_list(const json& node, const std::map<std::string, double>& params, std::size_t dim) {
  if (!node.is_array() || node.empty()) bad("expected a nonempty array", node);
  std::vector<Expr> out;
  for (const auto& e : node) out.push_back(compile(e, params, dim));
  return out;
}

Expr fold(std::vector<Expr> terms, double init, double (*op)(double, double)) {
  return [terms = std::move(terms), init, op](const Vec& x) {
    double acc = init;
    for (const auto& t : terms) acc = op(acc, t(x));
    return acc;
  };
}

}  // namespace

Expr compile(const json& node, const std::map<std::string, double>& params, std::size_t dim) {
  if (node.is_number()) {
    const double v = node.get<double>();
    return [v](const Vec&) { return v; };
  }
  if (node.is_string()) {
    const auto name = node.get<std::string>();
    if (auto it = params.find(name); it != params.end()) {
      const double v = it->second;
      return [v](const Vec&) { return v; };
    }
    if (name.size() > 1 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
      const std::size_t i = std::stoul(name.substr(1));
      if (i < 1 || i > dim) bad("coordinate " + name + " outside 1.." + std::to_string(dim), node);
      return [i](const Vec& x) { return x[static_cast<Eigen::Index>(i - 1)]; };
    }
    bad("unknown name '" + name + "'", node);
  }
  if (!node.is_object() || node.size() != 1) bad("expected a number, a name or a one-key object", node);
  const auto& [op, arg] = *node.items().begin();

  if (op == "add") return fold(compile_list(arg, params, dim), 0.0, [](double a, double b) { return a + b; });
  if (op == "mul") return fold(compile_list(arg, params, dim), 1.0, [](double a, double b) { return a * b; });
  if (op == "min") {
    return fold(compile_list(arg, params, dim), std::numeric_limits<double>::infinity(),
                [](double a, double b) { return std::min(a, b); });
  }
  if (op == "max") {
    return fold(compile_list(arg, params, dim), -std::numeric_limits<double>::infinity(),
                [](double a, double b) { return std::max(a, b); });
  }
  if (op == "sub" || op == "div" || op == "pow") {
    auto terms = compile_list(arg, params, dim);
    if (terms.size() != 2) bad("'" + op + "' takes exactly two operands", node);
    auto a = terms[0], b = terms[1];
    if (op == "sub") return [a, b](const Vec& x) { return a(x) - b(x); };
    if (op == "div") return [a, b](const Vec& x) { return a(x) / b(x); };
    return [a, b](const Vec& x) { return std::pow(a(x), b(x)); };
  }
  if (op == "neg" || op == "sqrt" || op == "abs" || op == "exp" || op == "log") {
    auto a = compile(arg, params, dim);
    if (op == "neg") return [a](const Vec& x) { return -a(x); };
    if (op == "sqrt") return [a](const Vec& x) { return std::sqrt(a(x)); };
    if (op == "abs") return [a](const Vec& x) { return std::abs(a(x)); };
    if (op == "exp") return [a](const Vec& x) { return std::exp(a(x)); };
    return [a](const Vec& x) { return std::log(a(x)); };
  }
  if (op == "affine") {
    if (!arg.is_object() || !arg.contains("coeffs")) bad("'affine' needs coeffs", node);
    std::vector<Expr> coeffs = compile_list(arg.at("coeffs"), params, dim);
    if (coeffs.size() != dim) bad("'affine' needs one coefficient per coordinate", node);
    Expr constant = arg.contains("const") ? compile(arg.at("const"), params, dim) : Expr([](const Vec&) { return 0.0; });
    return [coeffs, constant](const Vec& x) {
      double acc = constant(x);
      for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i](x) * x[static_cast<Eigen::Index>(i)];
      return acc;
    };
  }
  if (op == "poly") {
    if (!arg.is_array()) bad("'poly' needs an array of terms", node);
    std::vector<std::pair<Expr, std::vector<int>>> terms;
    for (const auto& t : arg) {
      if (!t.is_object() || !t.contains("coef") || !t.contains("pow")) bad("poly terms need coef and pow", node);
      auto pw = t.at("pow").get<std::vector<int>>();
      if (pw.size() != dim) bad("poly exponents need one entry per coordinate", node);
      for (int p : pw) {
        if (p < 0) bad("poly exponents must be nonnegative", node);
      }
      terms.emplace_back(compile(t.at("coef"), params, dim), std::move(pw));
    }
    return [terms](const Vec& x) {
      double acc = 0.0;
      for (const auto& [coef, pw] : terms) {
        double m = coef(x);
        for (std::size_t i = 0; i < pw.size(); ++i) m *= std::pow(x[static_cast<Eigen::Index>(i)], pw[i]);
        acc += m;
      }
      return acc;
    };
  }
  bad("unknown operator '" + op + "'", node);
}

namespace {

VectorField compile_vector(const json& node, const std::map<std::string, double>& params, std::size_t dim,
                           const std::string& what) {
  if (!node.is_array() || node.size() != dim) {
    throw ValidationError(what + " must be an array of " + std::to_string(dim) + " expressions");
  }
  auto parts = compile_list(node, params, dim);
  return [parts](const Vec& x) {
    Vec out(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) out[static_cast<Eigen::Index>(i)] = parts[i](x);
    return out;
  };
}

template <typename T>
T required(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ValidationError(where + " is missing '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

LoadedSystem load_system(const json& doc, const std::map<std::string, double>& overrides) {
  if (!doc.is_object()) throw ValidationError("system document must be a JSON object");
  LoadedSystem out;
  out.name = doc.value("name", std::string("custom"));
  const auto dim = required<std::size_t>(doc, "dim", "system");
  if (dim == 0) throw ValidationError("system.dim must be positive");
  if (doc.contains("params")) out.params = required<std::map<std::string, double>>(doc, "params", "system");
  for (const auto& [k, v] : overrides) {
    if (!out.params.count(k)) throw ValidationError("unknown parameter '" + k + "' for system '" + out.name + "'");
    out.params[k] = v;
  }

  std::vector<Vertex> vertices;
  if (!doc.contains("vertices") || !doc.at("vertices").is_array() || doc.at("vertices").empty()) {
    throw ValidationError("system needs a nonempty 'vertices' array");
  }
  for (const auto& v : doc.at("vertices")) {
    Vertex vx;
    vx.name = required<std::string>(v, "name", "vertex");
    vx.domain.dim = dim;
    if (v.contains("domain")) {
      for (const auto& c : v.at("domain")) vx.domain.constraints.push_back(compile(c, out.params, dim));
    }
    vx.field = compile_vector(required<json>(v, "field", "vertex " + vx.name), out.params, dim, "field of " + vx.name);
    vertices.push_back(std::move(vx));
  }

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      Edge ed;
      ed.name = required<std::string>(e, "name", "edge");
      ed.source = required<std::string>(e, "src", "edge " + ed.name);
      ed.target = required<std::string>(e, "tgt", "edge " + ed.name);
      const json guard = required<json>(e, "guard", "edge " + ed.name);
      ed.guard.surface = compile(required<json>(guard, "surface", "guard of " + ed.name), out.params, dim);
      if (guard.contains("admissible")) {
        std::vector<Expr> conds;
        for (const auto& c : guard.at("admissible")) conds.push_back(compile(c, out.params, dim));
        ed.guard.admissible = [conds](const Vec& x) {
          for (const auto& c : conds) {
            if (c(x) > 0.0) return false;
          }
          return true;
        };
      }
      ed.reset = compile_vector(required<json>(e, "reset", "edge " + ed.name), out.params, dim, "reset of " + ed.name);
      edges.push_back(std::move(ed));
    }
  }
  auto sys = std::make_shared<ClassicalHybridSystem>(std::move(vertices), std::move(edges));
  out.hybrid = sys;
  out.coalgebra = std::make_shared<HCoalgebra>(encode_hybrid(*sys));
  out.default_mode = doc.value("mode", sys->vertices().front().name);
  if (doc.contains("init")) out.default_init = required<std::vector<double>>(doc, "init", "system");
  return out;
}

LoadedSystem load_system_file(const std::filesystem::path& path, const std::map<std::string, double>& overrides) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open system file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("system file " + path.string() + " is not valid JSON: " + e.what());
  }
  return load_system(doc, overrides);
}

}  // namespace hycoalg::expr
