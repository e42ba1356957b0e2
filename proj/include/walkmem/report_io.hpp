#pragma once

#include <string>

#include <json.hpp>

#include "walkmem/report.hpp"
#include "walkmem/stats.hpp"

namespace walkmem {

/// JSON form of a report. NaN values become null. The per-pair matrix is
/// written only when `include_pairs` is set and the report kept it; rows are
/// start nodes, columns targets.
nlohmann::json to_json(const MfptReport& report, bool include_pairs = false);

/// Inverse of to_json, as far as the JSON carries the fields.
MfptReport report_from_json(const nlohmann::json& j);

/// CSV with header `target,gmfpt`, one row per target and a final `all` row
/// holding the GrMFPT.
std::string to_csv(const MfptReport& report);

/// The seven structural statistics plus the network name.
nlohmann::json to_json(const NetworkStats& stats, const std::string& name);

/// Shortest decimal form that reads back to the same double; "nan" for NaN.
std::string format_double(double x);

}  // namespace walkmem
