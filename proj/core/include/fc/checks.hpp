#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fc/types.hpp"

namespace fc {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string id;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool logx = false;
  bool logy = false;
  std::vector<Series> series;
};

enum class CheckStatus { Pass, Fail, Error };
std::string_view to_string(CheckStatus s) noexcept;

struct CheckResult {
  std::string id;
  std::string op;
  CheckStatus status = CheckStatus::Pass;
  std::string error_kind;  // set when status is Error
  std::string message;
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> info;
  std::map<std::string, CMatrix> matrices;
  std::vector<Plot> plots;
  double wall_ms = 0.0;  // excluded from the canonical report
};

/// One configured check; `params` is JSON text, `pointer` locates the entry in the config.
struct CheckSpec {
  std::string id;
  std::string op;
  std::string params = "{}";
  std::string pointer;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<CheckSpec> checks;
};

/// {"seed": N, "suites": [...], "checks": [{"id", "op", "params"}]}. Suites expand in
/// place before the explicit checks. Throws ConfigInvalid with a JSON pointer.
ExperimentConfig parse_config(const std::string& text);

/// Runs one check; errors are captured in the result, never thrown, except that a
/// ConfigInvalid error keeps its pointer in `message`.
CheckResult run_check(const CheckSpec& spec, std::uint64_t seed);

struct SuiteReport {
  std::uint64_t seed = 1;
  std::vector<CheckResult> checks;
  std::size_t passed() const;
  /// 0 if every check passed, 3 if any check had invalid parameters, else 2.
  int exit_code() const;
};

/// Checks run on up to `threads` workers (0: FC_THREADS, else hardware concurrency);
/// results keep config order.
SuiteReport run_suite(const ExperimentConfig& config, int threads = 0);
int thread_budget();

std::vector<std::string> registered_ops();
std::vector<std::string> registered_suites();

}  // namespace fc
