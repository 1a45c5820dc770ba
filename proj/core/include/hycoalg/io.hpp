#pragma once

// Serialization of traces and reports, and atomic file output.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hycoalg/elements.hpp"
#include "hycoalg/execution.hpp"
#include "hycoalg/lyapunov.hpp"
#include "hycoalg/simulator.hpp"
#include "hycoalg/transfer.hpp"
#include "hycoalg/zeno.hpp"

namespace hycoalg::io {

/// Shortest round-trip decimal form of a double ("nan"/"inf" spelled out).
std::string format_double(double v);

/// Columns j, mode, t, x_1..x_n, is_jump. is_jump is 1 on the first row of
/// every interval entered through a jump.
std::string trace_csv(const HybridExecution& exe);

nlohmann::json to_json(const Vec& x);
nlohmann::json to_json(const TaggedPoint& p);
nlohmann::json to_json(const ZenoReport& z);
nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const ConditionResult& r);
nlohmann::json to_json(const SolutionVerdict& v);
nlohmann::json to_json(const MorphismCheck& m);

/// Writes to a temporary sibling file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace hycoalg::io
