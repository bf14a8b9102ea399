#include "fc/symbol_norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fc {

namespace {

struct Sampler {
  double best = 0.0;
  cplx at{0.0, 0.0};
  void take(double v, cplx z) {
    if (!std::isfinite(v)) fail(ErrorKind::NonFiniteSample, "non-finite symbol sample");
    if (v > best) {
      best = v;
      at = z;
    }
  }
};

std::string grid_text(const Region& r, const SampleGrid& g, const char* what) {
  std::ostringstream os;
  os << what << " on " << r.describe() << ": tan-grid n=" << g.n << " per boundary curve"
     << (g.interior ? " + interior spot checks" : "");
  return os.str();
}

// Visits the boundary curves of `r` on the tan grid plus optional interior points.
template <class F>
void visit(const Region& r, const SampleGrid& g, F&& f) {
  const auto ts = tan_grid(g.n);
  for (const auto& c : r.boundary())
    for (double t : ts) f(c.at(t));
  if (g.interior)
    for (cplx z : r.interior_samples()) f(z);
}

NormReport finish(const Sampler& s, std::string spec) {
  NormReport rep;
  rep.value = s.best;
  rep.attained_at = s.at;
  rep.grid_spec = std::move(spec);
  rep.lower_bound = true;
  return rep;
}

}  // namespace

NormReport hinf_norm(const Symbol& f, const SampleGrid& grid) {
  Sampler s;
  visit(f.region(), grid, [&](cplx z) { s.take(std::abs(f(z)), z); });
  return finish(s, grid_text(f.region(), grid, "sup|f|"));
}

NormReport hinf1_norm(const Symbol& f, const SampleGrid& grid) {
  const RegionKind k = f.region().kind();
  if (k != RegionKind::Strip && k != RegionKind::Parabola)
    fail(ErrorKind::InvalidArgument, "H-infinity-1 norm needs a strip or parabola region");
  Sampler s;
  visit(f.region(), grid, [&](cplx z) { s.take(std::abs(f(z)) + std::abs(z * f.deriv(z)), z); });
  return finish(s, grid_text(f.region(), grid, "sup|f|+|zf'|"));
}

NormReport hinflog_norm(const Symbol& f, const SampleGrid& grid) {
  if (f.region().kind() != RegionKind::Sector) fail(ErrorKind::SectorRequired, "H-infinity-log norm needs a sector");
  Sampler s;
  visit(f.region(), grid, [&](cplx z) { s.take(std::abs(f(z)) + std::abs(z * std::log(z) * f.deriv(z)), z); });
  return finish(s, grid_text(f.region(), grid, "sup|f|+|z log z f'|"));
}

NormReport parabola_hinf1_via_strip(const Symbol& f, const SampleGrid& grid) {
  const Symbol g = compose_square(f);
  Sampler s;
  visit(g.region(), grid, [&](cplx z) { s.take(std::abs(g(z)) + 0.5 * std::abs(z * g.deriv(z)), z * z); });
  return finish(s, grid_text(g.region(), grid, "sup|f(z^2)|+|z d/dz f(z^2)|/2"));
}

NormReport mikhlin_constant(const Symbol& m, const MikhlinGrid& grid) {
  const double l0 = std::log10(grid.t_min), l1 = std::log10(grid.t_max);
  const int decades = static_cast<int>(std::lround(l1 - l0));
  const int n = std::max(2, decades * grid.per_decade);
  auto dm = [&](double t) -> cplx {
    if (m.has_deriv()) return m.deriv(cplx(t, 0.0));
    const double h = 1e-6 * (1.0 + std::abs(t));
    return (m(cplx(t + h, 0.0)) - m(cplx(t - h, 0.0))) / (2.0 * h);
  };
  double sup_m = 0.0, sup_tm = 0.0;
  cplx at = 0.0;
  if (decades < 2) fail(ErrorKind::InvalidArgument, "Mikhlin grid needs at least two decades");
  std::vector<double> tm_decade(decades, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double lt = l0 + (l1 - l0) * k / n;
    const double t = std::pow(10.0, lt);
    const int dec = std::min(decades - 1, static_cast<int>(lt - l0));
    for (double sgn : {1.0, -1.0}) {
      const double tt = sgn * t;
      const double a = std::abs(m(cplx(tt, 0.0)));
      const double b = std::abs(tt * dm(tt));
      if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::NonFiniteSample, "non-finite Mikhlin sample");
      if (a > sup_m) sup_m = a;
      if (b > sup_tm) {
        sup_tm = b;
        at = cplx(tt, 0.0);
      }
      tm_decade[dec] = std::max(tm_decade[dec], b + a);
    }
  }
  NormReport rep;
  rep.value = sup_m + sup_tm;
  rep.attained_at = at;
  rep.lower_bound = true;
  // Still growing at either end of the log grid.
  const auto last = tm_decade[decades - 1], prev = tm_decade[decades - 2];
  rep.divergent = last > 2.0 * prev + 1e-300;
  std::ostringstream os;
  os << "sup|m|+sup|tm'| on +-[" << grid.t_min << "," << grid.t_max << "], " << grid.per_decade << " pts/decade";
  rep.grid_spec = os.str();
  return rep;
}

EmbeddingReport venturi_embedding_check(const Symbol& f, const Region& inner, const SampleGrid& grid) {
  if (!f.region().contains_region(inner)) fail(ErrorKind::RegionViolation, "inner region is not contained in the outer");
  EmbeddingReport rep;
  rep.outer_f = hinf_norm(f, grid);
  Sampler s;
  visit(inner, grid, [&](cplx z) { s.take(std::abs(z * f.deriv(z)), z); });
  rep.inner_zf = finish(s, grid_text(inner, grid, "sup|zf'|"));
  rep.ratio = rep.outer_f.value > 0 ? rep.inner_zf.value / rep.outer_f.value : 0.0;
  return rep;
}

TailReport tail_class_check(const Symbol& f, cplx a, cplx b, double theta, const SampleGrid& grid) {
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "tail check needs a strip symbol");
  if (!(theta < f.region().theta())) fail(ErrorKind::InvalidArgument, "theta must be below the symbol strip");
  const double w = f.region().theta();
  TailReport rep;
  // Per-ray sup over |Re z| in [10, 1e8]; bounded means the last decade adds at most 2x.
  bool ok = true;
  for (double y : {-0.9 * w, 0.0, 0.9 * w}) {
    for (int side : {1, -1}) {
      const cplx target = side > 0 ? a : b;
      double prev = 0.0, last = 0.0;
      for (int k = 0; k <= 7 * 16; ++k) {
        const double x = std::pow(10.0, 1.0 + k / 16.0);
        const cplx z(side * x, y);
        const double q = std::abs(f(z) - target) * std::abs(z);
        if (!std::isfinite(q)) {
          ok = false;
          continue;
        }
        if (k < 6 * 16) prev = std::max(prev, q);
        else last = std::max(last, q);
      }
      if (side > 0) rep.tail_plus = std::max(rep.tail_plus, std::max(prev, last));
      else rep.tail_minus = std::max(rep.tail_minus, std::max(prev, last));
      if (last > 2.0 * prev + 1e-12) ok = false;
    }
  }
  rep.bounded = ok;
  rep.tail_unbounded = !ok;
  if (ok) rep.hinf1 = hinf1_norm(f.restricted(Region::strip(theta)), grid);
  return rep;
}

}  // namespace fc
