#include "fc/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace fc {

bool check_E_decay(const CFun& f, double theta) {
  // sup |f||z|^2 over the decade [1e8, 1e9) may exceed the sup over [1e7, 1e8) by at
  // most a factor 2; 16 log-spaced samples per decade absorb oscillation.
  for (double y : {-0.9 * theta, 0.0, 0.9 * theta}) {
    for (double sgn : {1.0, -1.0}) {
      double q7 = 0.0, q8 = 0.0;
      for (int k = 0; k < 16; ++k) {
        const double x = std::pow(10.0, 7.0 + k / 16.0);
        const cplx z7(sgn * x, y), z8(sgn * 10.0 * x, y);
        const double a7 = std::abs(f(z7)) * std::norm(z7), a8 = std::abs(f(z8)) * std::norm(z8);
        if (!std::isfinite(a7) || !std::isfinite(a8)) return false;
        q7 = std::max(q7, a7);
        q8 = std::max(q8, a8);
      }
      if (q8 > 2.0 * q7 + 1e-12) return false;
    }
  }
  return true;
}

Symbol::Symbol(Region region, CFun eval, std::optional<CFun> deriv, DecayClass decay, std::string description)
    : region_(region), eval_(std::move(eval)), deriv_(std::move(deriv)), decay_(decay), desc_(std::move(description)) {
  if (!eval_) fail(ErrorKind::InvalidArgument, "symbol needs an evaluation map");
  if (decay_ == DecayClass::Eclass) {
    if (region_.kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "E class is defined on strips");
    if (!check_E_decay(eval_, region_.theta()))
      fail(ErrorKind::DecayClassRequired, "symbol does not decay like |z|^-2: " + desc_);
  }
}

Symbol Symbol::constant(Region region, cplx c) {
  return Symbol(region, [c](cplx) { return c; }, CFun([](cplx) { return cplx(0.0); }), DecayClass::None,
                "constant");
}

cplx Symbol::cauchy_deriv(cplx z) const {
  const double d = region_.distance_to_boundary(z);
  if (!(d > 0)) fail(ErrorKind::RegionViolation, "derivative requested on or outside the region boundary");
  const double r = 0.4 * d;
  constexpr int N = 32;
  cplx acc = 0.0;
  for (int k = 0; k < N; ++k) {
    const cplx e = std::polar(1.0, 2.0 * kPi * (k + 0.5) / N);
    acc += eval_(z + r * e) / e;
  }
  return acc / (static_cast<double>(N) * r);
}

cplx Symbol::deriv(cplx z) const { return deriv_ ? (*deriv_)(z) : cauchy_deriv(z); }

Symbol Symbol::restricted(Region smaller) const {
  if (!region_.contains_region(smaller))
    fail(ErrorKind::RegionViolation, smaller.describe() + " is not contained in " + region_.describe());
  const DecayClass dc = (decay_ == DecayClass::Eclass && smaller.kind() == RegionKind::Strip) ? DecayClass::Eclass
                                                                                              : DecayClass::None;
  return Symbol(smaller, eval_, deriv_, dc, desc_);
}

Symbol Symbol::with_decay(DecayClass d) const { return Symbol(region_, eval_, deriv_, d, desc_); }

Symbol Symbol::without_derivative() const { return Symbol(region_, eval_, std::nullopt, decay_, desc_); }

namespace {

Region smaller_of(const Region& a, const Region& b) {
  if (a.contains_region(b)) return b;
  if (b.contains_region(a)) return a;
  fail(ErrorKind::RegionViolation, "regions " + a.describe() + " and " + b.describe() + " are not nested");
}

}  // namespace

Symbol product(const Symbol& f, const Symbol& g) {
  const Region r = smaller_of(f.region(), g.region());
  const CFun fe = f.eval_fn(), ge = g.eval_fn();
  std::optional<CFun> d;
  if (f.has_deriv() && g.has_deriv()) {
    const CFun fd = *f.deriv_fn(), gd = *g.deriv_fn();
    d = [fe, ge, fd, gd](cplx z) { return fd(z) * ge(z) + fe(z) * gd(z); };
  }
  const bool e = (f.in_E() || g.in_E()) && r.kind() == RegionKind::Strip;
  return Symbol(r, [fe, ge](cplx z) { return fe(z) * ge(z); }, d, e ? DecayClass::Eclass : DecayClass::None,
                "(" + f.description() + ")*(" + g.description() + ")");
}

Symbol scaled(const Symbol& f, cplx c) {
  const CFun fe = f.eval_fn();
  std::optional<CFun> d;
  if (f.has_deriv()) {
    const CFun fd = *f.deriv_fn();
    d = [fd, c](cplx z) { return c * fd(z); };
  }
  return Symbol(f.region(), [fe, c](cplx z) { return c * fe(z); }, d, f.decay(), "c*(" + f.description() + ")");
}

Symbol sum(const Symbol& f, const Symbol& g) {
  const Region r = smaller_of(f.region(), g.region());
  const CFun fe = f.eval_fn(), ge = g.eval_fn();
  std::optional<CFun> d;
  if (f.has_deriv() && g.has_deriv()) {
    const CFun fd = *f.deriv_fn(), gd = *g.deriv_fn();
    d = [fd, gd](cplx z) { return fd(z) + gd(z); };
  }
  const bool e = f.in_E() && g.in_E() && r.kind() == RegionKind::Strip;
  return Symbol(r, [fe, ge](cplx z) { return fe(z) + ge(z); }, d, e ? DecayClass::Eclass : DecayClass::None,
                "(" + f.description() + ")+(" + g.description() + ")");
}

Symbol shifted(const Symbol& f, double r) {
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "real shifts preserve strips only");
  const CFun fe = f.eval_fn();
  std::optional<CFun> d;
  if (f.has_deriv()) {
    const CFun fd = *f.deriv_fn();
    d = [fd, r](cplx z) { return fd(z + r); };
  }
  return Symbol(f.region(), [fe, r](cplx z) { return fe(z + r); }, d, f.decay(), f.description() + "(.+r)");
}

Symbol compose_square(const Symbol& f) {
  if (f.region().kind() != RegionKind::Parabola) fail(ErrorKind::InvalidArgument, "square map needs a parabola symbol");
  const CFun fe = f.eval_fn();
  const Symbol fc = f;
  return Symbol(Region::strip(f.region().theta()), [fe](cplx z) { return fe(z * z); },
                CFun([fc](cplx z) { return 2.0 * z * fc.deriv(z * z); }), DecayClass::None,
                f.description() + "(z^2)");
}

Symbol compose_exp(const Symbol& f) {
  if (f.region().kind() != RegionKind::Sector) fail(ErrorKind::SectorRequired, "exp pullback needs a sector symbol");
  const CFun fe = f.eval_fn();
  const Symbol fc = f;
  // |Re u| is saturated at 200 like the sector rays, so e^u stays finite and both grids
  // visit the same points.
  auto ex = [](cplx u) { return std::polar(std::exp(std::clamp(u.real(), -200.0, 200.0)), u.imag()); };
  return Symbol(Region::strip(f.region().theta()), [fe, ex](cplx u) { return fe(ex(u)); },
                CFun([fc, ex](cplx u) {
                  const cplx z = ex(u);
                  return z * fc.deriv(z);
                }),
                DecayClass::None, f.description() + "(e^u)");
}

Symbol compose_log(const Symbol& f) {
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "log composition needs a strip symbol");
  const double th = std::min(f.region().theta(), kPi);
  const CFun fe = f.eval_fn();
  const Symbol fc = f;
  return Symbol(Region::sector(th), [fe](cplx z) { return fe(std::log(z)); },
                CFun([fc](cplx z) { return fc.deriv(std::log(z)) / z; }), DecayClass::None,
                f.description() + "(log z)");
}

Symbol compose_sqrt_even(const Symbol& f) {
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "sqrt composition needs a strip symbol");
  const CFun fe = f.eval_fn();
  // The derivative is left to the Cauchy rule: f(sqrt w) is regular at the vertex.
  return Symbol(Region::parabola(f.region().theta()), [fe](cplx w) { return fe(std::sqrt(w)); }, std::nullopt,
                DecayClass::None, f.description() + "(sqrt w)");
}

}  // namespace fc
