#include "fc/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "fc/io.hpp"
#include "fc/svg.hpp"
#include "json_io.hpp"

namespace fc {

namespace {

using detail::json;
using detail::number;

json series_json(const Series& s) {
  json x = json::array(), y = json::array();
  for (double v : s.x) x.push_back(number(v));
  for (double v : s.y) y.push_back(number(v));
  return json{{"name", s.name}, {"x", x}, {"y", y}};
}

json plot_json(const Plot& p) {
  json series = json::array();
  for (const auto& s : p.series) series.push_back(series_json(s));
  return json{{"id", p.id},       {"title", p.title}, {"xlabel", p.xlabel}, {"ylabel", p.ylabel},
              {"logx", p.logx}, {"logy", p.logy},   {"series", series}};
}

json check_json(const CheckResult& c) {
  json metrics = json::object(), info = json::object(), mats = json::object(), plots = json::array();
  for (const auto& [k, v] : c.metrics) metrics[k] = number(v);
  for (const auto& [k, v] : c.info) info[k] = v;
  for (const auto& [k, v] : c.matrices) mats[k] = detail::to_json(v);
  for (const auto& p : c.plots) plots.push_back(plot_json(p));
  json j{{"id", c.id},           {"op", c.op},   {"status", std::string(to_string(c.status))},
         {"message", c.message}, {"metrics", metrics}, {"info", info},
         {"matrices", mats},     {"plots", plots}};
  j["error_kind"] = c.error_kind.empty() ? json(nullptr) : json(c.error_kind);
  return j;
}

// Shortest representation that reads back to the same double.
std::string fmt_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char ch : s) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') ? ch : '_';
  return out;
}

}  // namespace

std::string check_result_json(const CheckResult& c) { return check_json(c).dump(2) + "\n"; }

std::string report_json(const SuiteReport& r) {
  json checks = json::array();
  std::size_t failed = 0, errors = 0;
  for (const auto& c : r.checks) {
    checks.push_back(check_json(c));
    failed += c.status == CheckStatus::Fail;
    errors += c.status == CheckStatus::Error;
  }
  const json j{{"schema", kReportSchema},
               {"seed", r.seed},
               {"summary", {{"total", r.checks.size()}, {"passed", r.passed()}, {"failed", failed}, {"errors", errors}}},
               {"checks", checks}};
  return j.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& r) {
  std::set<std::string> names;
  for (const auto& c : r.checks)
    for (const auto& [k, v] : c.metrics) names.insert(k);
  std::ostringstream os;
  os << "id,op,status,error_kind";
  for (const auto& n : names) os << ',' << csv_field(n);
  os << '\n';
  for (const auto& c : r.checks) {
    os << csv_field(c.id) << ',' << c.op << ',' << to_string(c.status) << ',' << c.error_kind;
    for (const auto& n : names) {
      os << ',';
      if (const auto it = c.metrics.find(n); it != c.metrics.end()) os << fmt_double(it->second);
    }
    os << '\n';
  }
  return os.str();
}

std::string metadata_json(const SuiteReport& r, const std::string& started_at, double total_ms, int threads) {
  json per = json::object();
  for (const auto& c : r.checks) per[c.id] = c.wall_ms;
  const json j{{"schema", kReportSchema}, {"started_at", started_at}, {"total_ms", total_ms},
               {"threads", threads},      {"check_ms", per}};
  return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> report_svgs(const SuiteReport& r) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : r.checks)
    for (const auto& p : c.plots) out.emplace_back(file_stem(c.id) + "__" + file_stem(p.id) + ".svg", render_line_plot(p));
  return out;
}

void write_bundle(const SuiteReport& r, const std::string& dir, const std::vector<std::string>& formats,
                  const std::string& metadata) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create " + dir + ": " + ec.message());
  const fs::path root(dir);
  const auto wants = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
  if (wants("json")) write_file((root / "report.json").string(), report_json(r));
  if (wants("csv")) write_file((root / "report.csv").string(), report_csv(r));
  if (wants("svg")) {
    const auto svgs = report_svgs(r);
    if (!svgs.empty()) {
      fs::create_directories(root / "plots", ec);
      if (ec) fail(ErrorKind::IoError, "cannot create plots directory: " + ec.message());
    }
    for (const auto& [name, text] : svgs) write_file((root / "plots" / name).string(), text);
  }
  write_file((root / "metadata.json").string(), metadata);
}

std::string transference_report_json(const TransferenceReport& t) {
  const json j{{"form", t.form},
               {"lhs", number(t.lhs)},
               {"rhs", number(t.rhs)},
               {"constant", number(t.constant)},
               {"slack", number(t.slack)},
               {"M", number(t.M)},
               {"omega0", number(t.omega0)},
               {"omega", number(t.omega)},
               {"p", number(t.p)},
               {"conv_norm", {{"lower", number(t.conv_lower)}, {"upper", number(t.conv_upper)}}},
               {"grids", t.grids},
               {"seed", t.seed},
               {"wall_ms", t.wall_ms},
               {"passed", t.passed()}};
  return j.dump(2) + "\n";
}

}  // namespace fc
