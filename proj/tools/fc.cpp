#include <chrono>
#include <ctime>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fc/checks.hpp"
#include "fc/io.hpp"
#include "fc/report.hpp"
#include "fc/transference.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFail = 2;
constexpr int kExitConfig = 3;

json load(const std::string& path) {
  const std::string text = fc::read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fc::fail(fc::ErrorKind::ConfigInvalid, path + ": " + e.what());
  }
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    fc::write_file(out, text);
}

// Runs a registered op with params assembled from CLI files and prints the result.
int single_check(const std::string& op, const json& params, const std::string& out) {
  fc::CheckSpec spec{op, op, params.dump(), ""};
  const fc::CheckResult r = fc::run_check(spec, 1);
  emit(out, fc::check_result_json(r));
  if (r.status == fc::CheckStatus::Pass) return 0;
  std::cerr << "fc: " << op << ": " << r.message << "\n";
  return r.error_kind == "ConfigInvalid" ? kExitConfig : kExitFail;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional calculus and transference experiments for matrix groups"};
  app.require_subcommand(1);

  std::string op_path, symbol_path, route = "contour", out;
  auto* eval = app.add_subcommand("eval", "Evaluate f(A) through one calculus route");
  eval->add_option("--op", op_path, "operator JSON")->required();
  eval->add_option("--symbol", symbol_path, "symbol JSON")->required();
  eval->add_option("--route", route)->check(CLI::IsMember({"contour", "phillips", "pv", "spectral"}));
  eval->add_option("--out", out, "result JSON (stdout if omitted)");

  std::string group_path, measure_path;
  double p = 2.0, omega = 1.0;
  std::uint64_t seed = 7;
  auto* transfer = app.add_subcommand("transfer", "Check the transference inequality for one measure");
  transfer->add_option("--group", group_path, "generator JSON")->required();
  transfer->add_option("--measure", measure_path, "measure JSON")->required();
  transfer->add_option("--p", p)->check(CLI::Range(1.0, 1e300));
  transfer->add_option("--omega", omega)->required();
  transfer->add_option("--seed", seed);
  transfer->add_option("--report", out, "report JSON (stdout if omitted)");

  std::string check;
  auto* cosine = app.add_subcommand("cosine", "Cosine family checks");
  cosine->add_option("--op", op_path)->required();
  cosine->add_option("--check", check)->required()->check(CLI::IsMember({"dalembert", "laplace", "phase", "shift"}));
  cosine->add_option("--out", out);

  auto* sectorial = app.add_subcommand("sectorial", "Sectorial operator checks");
  sectorial->add_option("--op", op_path)->required();
  sectorial->add_option("--check", check)->required()->check(CLI::IsMember({"log", "bip", "hinflog"}));
  sectorial->add_option("--out", out);

  std::string config_path, formats = "json,csv,svg";
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "Run a configured suite and write the report bundle");
  run->add_option("--config", config_path)->required();
  run->add_option("--out", out, "output directory")->required();
  run->add_option("--format", formats, "comma separated subset of json,csv,svg");
  run->add_option("--seed", run_seed, "overrides the config seed");

  auto* list = app.add_subcommand("list", "List addressable ops and suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return single_check("eval", {{"op", load(op_path)}, {"symbol", load(symbol_path)}, {"route", route}}, out);

    if (*cosine) {
      static const std::map<std::string, std::string> ops{{"dalembert", "dalembert_check"},
                                                          {"laplace", "laplace_generator_check"},
                                                          {"phase", "phase_space_check"},
                                                          {"shift", "sector_shift_check"}};
      return single_check(ops.at(check), {{"op", load(op_path)}}, out);
    }

    if (*sectorial) {
      static const std::map<std::string, std::string> ops{
          {"log", "log_composition_check"}, {"bip", "bip_group"}, {"hinflog", "hinflog_calculus_check"}};
      return single_check(ops.at(check), {{"op", load(op_path)}}, out);
    }

    if (*transfer) {
      const fc::GroupModel g(fc::operator_from_json(fc::read_file(group_path)));
      const fc::ExpWeightedMeasure mu = fc::measure_from_json(fc::read_file(measure_path));
      const fc::TransferenceReport t = fc::verify_transference(g, mu, p, omega, seed);
      emit(out, fc::transference_report_json(t));
      return t.passed() ? 0 : kExitFail;
    }

    if (*list) {
      for (const auto& o : fc::registered_ops()) std::cout << "op " << o << "\n";
      for (const auto& s : fc::registered_suites()) std::cout << "suite " << s << "\n";
      return 0;
    }

    if (*run) {
      std::vector<std::string> fmts;
      std::stringstream ss(formats);
      for (std::string f; std::getline(ss, f, ',');) {
        if (f != "json" && f != "csv" && f != "svg") {
          std::cerr << "fc: unknown format '" << f << "'\n";
          return kExitConfig;
        }
        fmts.push_back(f);
      }
      fc::ExperimentConfig cfg = fc::parse_config(fc::read_file(config_path));
      if (run_seed) cfg.seed = *run_seed;
      const std::string started = utc_now();
      const auto t0 = std::chrono::steady_clock::now();
      const int threads = fc::thread_budget();
      const fc::SuiteReport rep = fc::run_suite(cfg, threads);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      fc::write_bundle(rep, out, fmts, fc::metadata_json(rep, started, ms, threads));
      for (const auto& c : rep.checks)
        std::cout << fc::to_string(c.status) << "  " << c.id << (c.message.empty() ? "" : "  (" + c.message + ")")
                  << "\n";
      std::cout << rep.passed() << "/" << rep.checks.size() << " checks passed\n";
      return rep.exit_code();
    }
  } catch (const fc::Error& e) {
    std::cerr << "fc: " << e.what() << "\n";
    return e.kind() == fc::ErrorKind::ConfigInvalid ? kExitConfig : kExitFail;
  }
  return 0;
}
