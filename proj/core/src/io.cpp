#include "hycoalg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace hycoalg::io {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trace_csv(const HybridExecution& exe) {
  std::string out = "j,mode,t";
  const std::size_t n = exe.intervals.empty() ? 0 : static_cast<std::size_t>(exe.intervals.front().samples.front().x.size());
  for (std::size_t i = 1; i <= n; ++i) out += ",x_" + std::to_string(i);
  out += ",is_jump\n";
  for (std::size_t j = 0; j < exe.intervals.size(); ++j) {
    const auto& iv = exe.intervals[j];
    for (std::size_t k = 0; k < iv.samples.size(); ++k) {
      const auto& s = iv.samples[k];
      out += std::to_string(j) + "," + iv.mode + "," + format_double(s.t);
      for (Eigen::Index i = 0; i < s.x.size(); ++i) out += "," + format_double(s.x[i]);
      out += (j > 0 && k == 0) ? ",1\n" : ",0\n";
    }
  }
  return out;
}

json to_json(const Vec& x) {
  json a = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(x[i]);
  return a;
}

json to_json(const TaggedPoint& p) { return {{"mode", p.mode}, {"x", to_json(p.x)}}; }

json to_json(const ZenoReport& z) {
  json j = {{"is_zeno_flagged", z.is_zeno_flagged},
            {"tau_infinity_estimate", z.tau_infinity_estimate},
            {"jumps", z.jumps},
            {"dt_tail", z.dt_tail}};
  j["fitted_ratio"] = z.fitted_ratio ? json(*z.fitted_ratio) : json(nullptr);
  return j;
}

json to_json(const CheckResult& r) {
  json j = {{"name", r.name},
            {"pass", r.pass},
            {"worst_margin", r.worst_margin},
            {"max_margin", r.max_margin},
            {"evaluated", r.evaluated},
            {"skipped", r.skipped}};
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

json to_json(const ComparisonReport& r) {
  json j = {{"name", "comparison"},
            {"pass", r.pass},
            {"worst_margin", r.worst_margin},
            {"evaluated", r.comparisons},
            {"trials", r.trials_run},
            {"discarded", r.discarded},
            {"comparisons", r.comparisons}};
  j["witness"] = r.violation ? json(*r.violation) : json(nullptr);
  return j;
}

json to_json(const CertificateReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  if (r.comparison) checks.push_back(to_json(*r.comparison));
  json j = {{"pass", r.pass}, {"checks", checks}, {"notes", r.notes}};
  if (r.derived_alpha) {
    json table = json::array();
    for (const auto& [x, y] : r.derived_alpha->table) table.push_back({x, y});
    j["derived_alpha"] = {{"component", r.derived_alpha->component},
                          {"construction", r.derived_alpha->construction},
                          {"growth", r.derived_alpha->growth},
                          {"table", table}};
  } else {
    j["derived_alpha"] = nullptr;
  }
  const auto& e = r.empirical;
  j["empirical_validation"] = {{"ran", e.ran},
                               {"pass", e.pass},
                               {"trajectories", e.trajectories},
                               {"points", e.points},
                               {"worst_ratio", e.worst_ratio},
                               {"note", e.note}};
  j["empirical_validation"]["witness"] = e.witness ? to_json(*e.witness) : json(nullptr);
  return j;
}

json to_json(const ConditionResult& r) {
  json j = {{"name", r.name}, {"pass", r.pass}, {"worst", r.worst}, {"evaluated", r.evaluated}};
  if (r.witness) {
    j["witness"] = to_json(*r.witness);
    j["witness_time"] = r.witness_time;
    j["witness_interval"] = r.witness_interval;
  } else {
    j["witness"] = nullptr;
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

json to_json(const SolutionVerdict& v) {
  return {{"pass", v.pass},
          {"conditions", {to_json(v.flow), to_json(v.jump), to_json(v.no_missed_jump), to_json(v.domain)}}};
}

json to_json(const MorphismCheck& m) {
  return {{"pass", m.pass}, {"checks", {to_json(m.region), to_json(m.flow), to_json(m.jump)}}};
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hycoalg::io
