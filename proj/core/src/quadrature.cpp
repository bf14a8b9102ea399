#include "fc/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#include "fc/types.hpp"

namespace fc {

std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SpectrumHit: return "SpectrumHit";
    case ErrorKind::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorKind::RegionViolation: return "RegionViolation";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::SectorRequired: return "SectorRequired";
    case ErrorKind::DecayClassRequired: return "DecayClassRequired";
    case ErrorKind::StripViolation: return "StripViolation";
    case ErrorKind::WeightExceedsDeclared: return "WeightExceedsDeclared";
    case ErrorKind::NotEven: return "NotEven";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::SpectrumOutsideContour: return "SpectrumOutsideContour";
    case ErrorKind::RegulariserSingular: return "RegulariserSingular";
    case ErrorKind::WeightOrderViolation: return "WeightOrderViolation";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::EpsilonBelowGrid: return "EpsilonBelowGrid";
    case ErrorKind::SeriesDivergence: return "SeriesDivergence";
    case ErrorKind::TypeViolation: return "TypeViolation";
    case ErrorKind::SpectrumOutsideParabola: return "SpectrumOutsideParabola";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::AngleViolation: return "AngleViolation";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

GaussRule build_rule(int order) {
  GaussRule r;
  // Boost returns the nonnegative zeros; mirror them.
  const auto zeros = boost::math::legendre_p_zeros<double>(order);
  std::vector<double> x;
  for (double z : zeros) {
    x.push_back(z);
    if (z != 0.0) x.push_back(-z);
  }
  std::sort(x.begin(), x.end());
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime<double>(order, xi);
    r.nodes.push_back(xi);
    r.weights.push_back(2.0 / ((1.0 - xi * xi) * dp * dp));
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  return composite_gl<double>(f, a, b, panels, order, 0.0);
}

double integrate_halfline(const std::function<double(double)>& f, double tol, int order) {
  double acc = integrate(f, 0.0, 1.0, 8, order);
  double lo = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double hi = 2.0 * lo;
    const double part = integrate(f, lo, hi, 8 + k, order);
    acc += part;
    lo = hi;
    if (std::abs(part) <= tol * std::abs(acc) && k > 2) break;
  }
  return acc;
}

}  // namespace fc
