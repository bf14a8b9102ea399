#include "fc/catalogue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fc {

namespace {

// sech and tanh through e^{-2|Re u|}, finite for every u off the poles.
cplx sech_safe(cplx u) {
  const cplx v = u.real() < 0 ? -u : u;
  const cplx e = std::exp(-v);
  return 2.0 * e / (1.0 + e * e);
}

cplx tanh_safe(cplx u) {
  const bool neg = u.real() < 0;
  const cplx e2 = std::exp(-2.0 * (neg ? -u : u));
  const cplx t = (1.0 - e2) / (1.0 + e2);
  return neg ? -t : t;
}

}  // namespace

Symbol exp_line(double s, double theta) {
  std::ostringstream os;
  os << "exp_line(s=" << s << ")";
  return Symbol(Region::strip(theta), [s](cplx z) { return std::exp(-kI * s * z); },
                CFun([s](cplx z) { return -kI * s * std::exp(-kI * s * z); }), DecayClass::None, os.str());
}

Symbol rational(const std::vector<cplx>& poles, const std::vector<int>& orders, cplx scale, Region region) {
  if (poles.size() != orders.size()) fail(ErrorKind::InvalidArgument, "poles and orders differ in length");
  int total = 0;
  for (std::size_t k = 0; k < poles.size(); ++k) {
    if (orders[k] < 0) fail(ErrorKind::InvalidArgument, "pole orders must be nonnegative");
    if (region.contains(poles[k]) || region.distance_to_boundary(poles[k]) > 0)
      fail(ErrorKind::RegionViolation, "pole inside the symbol region");
    total += orders[k];
  }
  auto eval = [poles, orders, scale](cplx z) {
    cplx v = scale;
    for (std::size_t k = 0; k < poles.size(); ++k) v *= std::pow(poles[k] - z, -orders[k]);
    return v;
  };
  auto deriv = [poles, orders, eval](cplx z) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < poles.size(); ++k) s += static_cast<double>(orders[k]) / (poles[k] - z);
    return eval(z) * s;
  };
  std::ostringstream os;
  os << "rational(";
  for (std::size_t k = 0; k < poles.size(); ++k) os << (k ? "," : "") << poles[k] << "^" << orders[k];
  os << ")";
  const bool e = total >= 2 && region.kind() == RegionKind::Strip;
  return Symbol(region, eval, CFun(deriv), e ? DecayClass::Eclass : DecayClass::None, os.str());
}

Symbol rational_strip(const std::vector<cplx>& poles, const std::vector<int>& orders, cplx scale, double theta) {
  if (theta <= 0) {
    double m = std::numeric_limits<double>::infinity();
    for (const cplx& p : poles) m = std::min(m, std::abs(p.imag()));
    if (!(m > 0) || !std::isfinite(m)) fail(ErrorKind::InvalidArgument, "cannot infer a strip from the poles");
    theta = 0.9 * m;
  }
  return rational(poles, orders, scale, Region::strip(theta));
}

Symbol tau_n(double n, double theta) {
  if (!(theta < n)) fail(ErrorKind::RegionViolation, "tau_n needs theta < n");
  const cplx in(0.0, n);
  std::ostringstream os;
  os << "tau_n(n=" << n << ")";
  return Symbol(Region::strip(theta), [in](cplx z) { return in / (in - z); },
                CFun([in](cplx z) { return in / ((in - z) * (in - z)); }), DecayClass::None, os.str());
}

Symbol cosh_pair(double w, double theta) {
  if (!(w > 0)) fail(ErrorKind::InvalidArgument, "cosh pair needs w > 0");
  if (theta <= 0) theta = w;
  if (theta > w) fail(ErrorKind::RegionViolation, "cosh pair is holomorphic on Strip(w) only");
  const double c = kPi / (2.0 * w);
  std::ostringstream os;
  os << "cosh_pair(w=" << w << ")";
  // Poles on Im z = +-w: the closed strip is excluded by the region itself.
  return Symbol(Region::strip(theta), [w, c](cplx z) { return (kPi / w) * sech_safe(c * z); },
                CFun([w, c](cplx z) { return -(kPi / w) * c * tanh_safe(c * z) * sech_safe(c * z); }),
                DecayClass::Eclass, os.str());
}

Symbol indicator_smoothed(double a, double kappa, double theta) {
  if (!(kappa > 0)) fail(ErrorKind::InvalidArgument, "kappa must be positive");
  const double lim = kPi / (2.0 * kappa);
  if (theta <= 0) theta = 0.9 * lim;
  if (!(theta < lim)) fail(ErrorKind::RegionViolation, "indicator_smoothed needs theta < pi/(2 kappa)");
  std::ostringstream os;
  os << "indicator_smoothed(a=" << a << ",kappa=" << kappa << ")";
  auto sech2 = [](cplx u) {
    const cplx c = sech_safe(u);
    return c * c;
  };
  return Symbol(Region::strip(theta),
                [a, kappa](cplx z) { return 0.5 * (tanh_safe(kappa * (z + a)) - tanh_safe(kappa * (z - a))); },
                CFun([a, kappa, sech2](cplx z) { return 0.5 * kappa * (sech2(kappa * (z + a)) - sech2(kappa * (z - a))); }),
                DecayClass::Eclass, os.str());
}

Symbol imaginary_power(double c, double phi) {
  std::ostringstream os;
  os << "z^(i*" << c << ")";
  return Symbol(Region::sector(phi), [c](cplx z) { return std::exp(kI * c * std::log(z)); },
                CFun([c](cplx z) { return kI * c * std::exp(kI * c * std::log(z)) / z; }), DecayClass::None, os.str());
}

Symbol sector_regulariser(double phi) {
  if (!(phi < kPi)) fail(ErrorKind::InvalidArgument, "z/(1+z)^2 has a pole at -1");
  return Symbol(Region::sector(phi), [](cplx z) { return z / ((1.0 + z) * (1.0 + z)); },
                CFun([](cplx z) { return (1.0 - z) / std::pow(1.0 + z, 3); }), DecayClass::None, "z/(1+z)^2");
}

Symbol sector_ratio(double k, Region region) {
  if (region.contains(cplx(-k, 0.0))) fail(ErrorKind::RegionViolation, "z/(k+z) has a pole in the region");
  std::ostringstream os;
  os << "z/(" << k << "+z)";
  return Symbol(region, [k](cplx z) { return z / (k + z); }, CFun([k](cplx z) { return k / ((k + z) * (k + z)); }),
                DecayClass::None, os.str());
}

std::vector<Symbol> e_class_catalogue(double theta) {
  const double p = theta + 0.5;
  std::vector<Symbol> out;
  out.push_back(rational({cplx(0.0, p)}, {2}, 1.0, Region::strip(theta)));
  out.push_back(rational({cplx(0.0, p), cplx(0.0, -p)}, {1, 1}, 1.0, Region::strip(theta)));
  out.push_back(cosh_pair(theta + 0.5, theta));
  out.push_back(indicator_smoothed(1.0, kPi / (2.0 * (theta + 0.1)), theta));
  out.push_back(product(exp_line(0.5, theta), rational({cplx(0.0, p + 1.0)}, {2}, 1.0, Region::strip(theta))));
  return out;
}

}  // namespace fc
