#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fc/checks.hpp"
#include "fc/transference.hpp"

namespace fc {

inline constexpr const char* kReportSchema = "fcreport/1";

/// Canonical bundle: sorted keys, no timings, byte-stable for a fixed config and seed.
std::string report_json(const SuiteReport& r);
/// One row per check: id, op, status, error_kind, then every metric name in sorted order.
std::string report_csv(const SuiteReport& r);
/// Timings and wall-clock stamps, kept out of the canonical bundle.
std::string metadata_json(const SuiteReport& r, const std::string& started_at, double total_ms, int threads);
/// (file name, svg text) for every plot carried by the checks.
std::vector<std::pair<std::string, std::string>> report_svgs(const SuiteReport& r);

/// Writes report.json / report.csv / plots into `dir` for the requested formats plus
/// metadata.json. Throws IoError.
void write_bundle(const SuiteReport& r, const std::string& dir, const std::vector<std::string>& formats,
                  const std::string& metadata);

/// Single-check JSON (used by the eval, cosine and sectorial commands).
std::string check_result_json(const CheckResult& c);
/// {lhs, rhs, constant, slack, grids, seed, wall_ms} plus form and bounds.
std::string transference_report_json(const TransferenceReport& t);

}  // namespace fc
