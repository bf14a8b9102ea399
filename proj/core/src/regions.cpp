#include "fc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fc {

namespace {

constexpr double kInset = 1.0 - 1e-6;

// Distance lower bound for the sector |arg z| < w; z assumed nonzero.
double sector_distance(cplx z, double w) {
  const double r = std::abs(z);
  const double gap = w - std::abs(std::arg(z));
  if (gap <= 0) return 0.0;
  return r * std::sin(std::min(gap, kPi / 2));
}

}  // namespace

std::string_view to_string(RegionKind k) noexcept {
  switch (k) {
    case RegionKind::Strip: return "strip";
    case RegionKind::Sector: return "sector";
    case RegionKind::DoubleSector: return "double_sector";
    case RegionKind::Parabola: return "parabola";
    case RegionKind::Venturi: return "venturi";
    case RegionKind::RealLine: return "real_line";
  }
  return "unknown";
}

Region Region::strip(double theta) {
  if (!(theta > 0)) fail(ErrorKind::InvalidArgument, "strip width must be positive");
  return {RegionKind::Strip, theta, theta};
}

Region Region::sector(double omega) {
  if (!(omega > 0 && omega <= kPi)) fail(ErrorKind::InvalidArgument, "sector angle must be in (0, pi]");
  return {RegionKind::Sector, omega, omega};
}

Region Region::double_sector(double omega) {
  if (!(omega > 0 && omega < kPi / 2)) fail(ErrorKind::InvalidArgument, "double sector angle must be in (0, pi/2)");
  return {RegionKind::DoubleSector, omega, omega};
}

Region Region::parabola(double omega) {
  if (!(omega > 0)) fail(ErrorKind::InvalidArgument, "parabola parameter must be positive");
  return {RegionKind::Parabola, omega, omega};
}

Region Region::venturi(double phi, double theta) {
  if (!(phi > 0 && phi < kPi / 2)) fail(ErrorKind::InvalidArgument, "venturi angle must be in (0, pi/2)");
  if (!(theta > 0)) fail(ErrorKind::InvalidArgument, "venturi strip width must be positive");
  return {RegionKind::Venturi, theta, phi};
}

Region Region::real_line() { return {RegionKind::RealLine, 0.0, 0.0}; }

bool Region::contains(cplx z) const {
  switch (kind_) {
    case RegionKind::Strip: return std::abs(z.imag()) < a_;
    case RegionKind::Sector: return z != cplx(0.0) && std::abs(std::arg(z)) < a_;
    case RegionKind::DoubleSector:
      return z != cplx(0.0) && (std::abs(std::arg(z)) < a_ || std::abs(std::arg(-z)) < a_);
    case RegionKind::Parabola: return std::abs(std::sqrt(z).imag()) < a_;
    case RegionKind::Venturi:
      return std::abs(z.imag()) < a_ || (z != cplx(0.0) && (std::abs(std::arg(z)) < b_ || std::abs(std::arg(-z)) < b_));
    case RegionKind::RealLine: return z.imag() == 0.0;
  }
  return false;
}

double Region::distance_to_boundary(cplx z) const {
  if (!contains(z)) return 0.0;
  switch (kind_) {
    case RegionKind::Strip: return a_ - std::abs(z.imag());
    case RegionKind::Sector: return sector_distance(z, a_);
    case RegionKind::DoubleSector: return std::max(sector_distance(z, a_), sector_distance(-z, a_));
    case RegionKind::Parabola: {
      // Boundary points are v^2 with Im v = w; |v^2 - z| = |v - s||v + s| with s = sqrt z.
      const cplx s = std::sqrt(z);
      const double rho = a_ - std::abs(s.imag());
      return rho * std::max(rho, 2.0 * std::abs(s) - rho);
    }
    case RegionKind::Venturi: {
      double d = 0.0;
      if (std::abs(z.imag()) < a_) d = a_ - std::abs(z.imag());
      if (z != cplx(0.0)) d = std::max({d, sector_distance(z, b_), sector_distance(-z, b_)});
      return d;
    }
    case RegionKind::RealLine: return 0.0;
  }
  return 0.0;
}

bool Region::contains_region(const Region& o) const {
  if (kind_ == o.kind_) {
    if (kind_ == RegionKind::Venturi) return o.a_ <= a_ && o.b_ <= b_;
    return o.a_ <= a_;
  }
  if (o.kind_ == RegionKind::RealLine) return kind_ == RegionKind::Strip || kind_ == RegionKind::Venturi;
  if (kind_ == RegionKind::Venturi) {
    if (o.kind_ == RegionKind::Strip) return o.a_ <= a_;
    if (o.kind_ == RegionKind::DoubleSector) return o.a_ <= b_;
    if (o.kind_ == RegionKind::Sector) return o.a_ <= b_;
  }
  if (kind_ == RegionKind::DoubleSector && o.kind_ == RegionKind::Sector) return o.a_ <= a_;
  return false;
}

std::vector<BoundaryCurve> Region::boundary() const {
  std::vector<BoundaryCurve> out;
  const double a = a_ * kInset;
  const double b = b_ * kInset;
  auto ray = [](double ang, double sgn) {
    return BoundaryCurve{[ang, sgn](double t) { return sgn * std::polar(std::exp(std::clamp(t, -200.0, 200.0)), ang); },
                         true};
  };
  switch (kind_) {
    case RegionKind::Strip:
      out.push_back({[a](double t) { return cplx(t, a); }, false});
      out.push_back({[a](double t) { return cplx(t, -a); }, false});
      break;
    case RegionKind::Sector:
      out.push_back(ray(a, 1.0));
      out.push_back(ray(-a, 1.0));
      break;
    case RegionKind::DoubleSector:
      for (double sgn : {1.0, -1.0}) {
        out.push_back(ray(a, sgn));
        out.push_back(ray(-a, sgn));
      }
      break;
    case RegionKind::Parabola:
      out.push_back({[a](double t) { return cplx(t, a) * cplx(t, a); }, false});
      break;
    case RegionKind::Venturi:
      out.push_back({[a](double t) { return cplx(t, a); }, false});
      out.push_back({[a](double t) { return cplx(t, -a); }, false});
      for (double sgn : {1.0, -1.0}) {
        out.push_back(ray(b, sgn));
        out.push_back(ray(-b, sgn));
      }
      break;
    case RegionKind::RealLine:
      out.push_back({[](double t) { return cplx(t, 0.0); }, false});
      break;
  }
  return out;
}

std::vector<cplx> Region::interior_samples() const {
  std::vector<cplx> out;
  switch (kind_) {
    case RegionKind::Strip:
    case RegionKind::Venturi:
      for (double x : {-10.0, -1.0, 0.0, 0.5, 1.0, 10.0})
        for (double y : {-0.5, 0.0, 0.5}) out.emplace_back(x, y * a_);
      if (kind_ == RegionKind::Venturi)
        for (double r : {5.0, 50.0})
          for (double y : {-0.5, 0.5}) {
            out.push_back(std::polar(r, y * b_));
            out.push_back(-std::polar(r, y * b_));
          }
      break;
    case RegionKind::Sector:
    case RegionKind::DoubleSector:
      for (double r : {0.1, 1.0, 10.0})
        for (double y : {-0.5, 0.0, 0.5}) {
          out.push_back(std::polar(r, y * a_));
          if (kind_ == RegionKind::DoubleSector) out.push_back(-std::polar(r, y * a_));
        }
      break;
    case RegionKind::Parabola:
      for (double x : {-10.0, -1.0, 0.0, 0.5, 1.0, 10.0})
        for (double y : {-0.5, 0.0, 0.5}) out.push_back(cplx(x, y * a_) * cplx(x, y * a_));
      break;
    case RegionKind::RealLine:
      for (double x : {-10.0, -1.0, 0.0, 1.0, 10.0}) out.emplace_back(x, 0.0);
      break;
  }
  return out;
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind_);
  switch (kind_) {
    case RegionKind::Venturi: os << "(phi=" << b_ << ",theta=" << a_ << ")"; break;
    case RegionKind::RealLine: break;
    default: os << "(" << a_ << ")"; break;
  }
  return os.str();
}

std::vector<double> tan_grid(int n) {
  std::vector<double> t;
  t.reserve(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) t.push_back(std::tan(-kPi / 2 + kPi * k / n));
  return t;
}

}  // namespace fc
