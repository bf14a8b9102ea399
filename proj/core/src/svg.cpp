#include "fc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fc {

namespace {

std::string esc(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  bool log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double map(double v) const { return log ? std::log10(v) : v; }
  void add(double v) {
    if (!usable(v)) return;
    lo = std::min(lo, map(v));
    hi = std::max(hi, map(v));
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  }
  double frac(double v) const { return (map(v) - lo) / (hi - lo); }
  double label(double f) const {
    const double u = lo + f * (hi - lo);
    return log ? std::pow(10.0, u) : u;
  }
};

constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string render_line_plot(const Plot& p, int width, int height) {
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  Axis ax{p.logx}, ay{p.logy};
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (ax.usable(s.x[i]) && ay.usable(s.y[i])) {
        ax.add(s.x[i]);
        ay.add(s.y[i]);
      }
  ax.finish();
  ay.finish();

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
     << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
     << esc(p.title) << "</text>\n"
     << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    const double x = left + f * pw, y = top + ph - f * ph;
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(top + ph + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << tick(ax.label(f)) << "</text>\n"
       << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left) << "\" y2=\"" << num(y)
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 3)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << tick(ay.label(f)) << "</text>\n";
  }
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << esc(p.xlabel) << (p.logx ? " (log)" : "")
     << "</text>\n"
     << "<text transform=\"translate(16," << num(top + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << esc(p.ylabel)
     << (p.logy ? " (log)" : "") << "</text>\n";

  for (std::size_t si = 0; si < p.series.size(); ++si) {
    const auto& s = p.series[si];
    const char* colour = kColours[si % std::size(kColours)];
    std::ostringstream pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
      const double x = left + ax.frac(s.x[i]) * pw, y = top + ph - ay.frac(s.y[i]) * ph;
      pts << num(x) << ',' << num(y) << ' ';
      os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"2.5\" fill=\"" << colour << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
    const double ly = top + 14 + 14 * static_cast<double>(si);
    os << "<line x1=\"" << num(left + pw - 150) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(left + pw - 130)
       << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << num(left + pw - 125) << "\" y=\"" << num(ly)
       << "\" font-family=\"sans-serif\" font-size=\"10\">" << esc(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fc
