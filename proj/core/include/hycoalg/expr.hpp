#pragma once

// JSON system description format.
//
// Expressions are JSON trees evaluated on the state vector x:
//   3.5                              number
//   "x1", "x2", ...                  state coordinate (1-based)
//   "g"                              parameter
//   {"add": [e, ...]}, {"mul": [e, ...]}, {"min": [...]}, {"max": [...]}
//   {"sub": [a, b]}, {"div": [a, b]}, {"pow": [a, b]}
//   {"neg": e}, {"sqrt": e}, {"abs": e}, {"exp": e}, {"log": e}
//   {"affine": {"coeffs": [..], "const": c}}     c + sum coeffs_i x_i
//   {"poly": [{"coef": e, "pow": [p1, .., pn]}]}  sum coef * prod x_i^p_i
//
// A system document:
//   {"name": "...", "dim": n, "params": {"g": 9.81, ...},
//    "init": [..], "mode": "v",
//    "vertices": [{"name": "v", "domain": [e >= 0, ...], "field": [e, ...]}],
//    "edges": [{"name": "e", "src": "v", "tgt": "w",
//               "guard": {"surface": e, "admissible": [e <= 0, ...]},
//               "reset": [e, ...]}]}

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hycoalg/coalgebra.hpp"

namespace hycoalg::expr {

using Expr = std::function<double(const Vec&)>;

/// Throws ValidationError on malformed expressions, unknown names and
/// coordinates outside 1..dim.
Expr compile(const nlohmann::json& node, const std::map<std::string, double>& params, std::size_t dim);

struct LoadedSystem {
  std::string name;
  std::map<std::string, double> params;
  std::shared_ptr<const ClassicalHybridSystem> hybrid;
  std::shared_ptr<const HCoalgebra> coalgebra;
  Mode default_mode;
  std::vector<double> default_init;
};

/// `overrides` replace values in "params"; unknown names are rejected.
LoadedSystem load_system(const nlohmann::json& doc, const std::map<std::string, double>& overrides = {});
LoadedSystem load_system_file(const std::filesystem::path& path, const std::map<std::string, double>& overrides = {});

}  // namespace hycoalg::expr
