#include <algorithm>
#include <cmath>

#include "fc/measures.hpp"
#include "fc/quadrature.hpp"
#include "fc/symbol_norms.hpp"

namespace fc {

BVFunction::BVFunction(std::vector<BVPiece> pieces, std::vector<cplx> ac_values)
    : pieces_(std::move(pieces)), ac_(std::move(ac_values)) {
  std::stable_sort(pieces_.begin(), pieces_.end(),
                   [](const BVPiece& a, const BVPiece& b) { return a.breakpoint < b.breakpoint; });
  for (const auto& p : pieces_)
    if (!std::isfinite(p.breakpoint) || !is_finite(p.value)) fail(ErrorKind::NonFiniteSample, "non-finite BV piece");
  if (ac_.size() == 1) fail(ErrorKind::InvalidArgument, "AC part needs at least two grid values");
  for (const auto& v : ac_)
    if (!is_finite(v)) fail(ErrorKind::NonFiniteSample, "non-finite AC sample");
  even_ = check_even();
}

BVFunction BVFunction::even_steps(const std::vector<double>& edges, const std::vector<cplx>& levels) {
  if (edges.size() != levels.size() + 1 || edges.empty() || edges.front() != 0.0)
    fail(ErrorKind::InvalidArgument, "even_steps needs edges 0 = e_0 < ... < e_K <= 1 and K levels");
  std::vector<BVPiece> p;
  const std::size_t K = levels.size();
  p.push_back({-1.0, 0.0});
  for (std::size_t k = K; k-- > 0;) p.push_back({-edges[k + 1], levels[k]});
  for (std::size_t k = 1; k < K; ++k) p.push_back({edges[k], levels[k]});
  p.push_back({edges[K], 0.0});
  return BVFunction(std::move(p));
}

BVFunction BVFunction::constant(cplx c) { return BVFunction({{-1.0, c}}); }

BVFunction BVFunction::from_function(const std::function<cplx(double)>& g, int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "AC grid needs at least two points");
  std::vector<cplx> v(n);
  for (int k = 0; k < n; ++k) v[k] = g(-1.0 + 2.0 * k / (n - 1));
  return BVFunction({}, std::move(v));
}

cplx BVFunction::operator()(double t) const {
  if (t < -1.0 || t > 1.0) return 0.0;
  cplx v = 0.0;
  for (const auto& p : pieces_) {
    if (p.breakpoint <= t) v = p.value;
    else break;
  }
  if (!ac_.empty()) {
    const double u = (t + 1.0) / ac_h();
    const auto k = std::min(static_cast<std::size_t>(u), ac_.size() - 2);
    const double f = u - static_cast<double>(k);
    v += (1.0 - f) * ac_[k] + f * ac_[k + 1];
  }
  return v;
}

bool BVFunction::check_even() const {
  for (int k = 0; k < 257; ++k) {
    const double t = (k + 0.3713) / 257.0;
    bool near = false;
    for (const auto& p : pieces_) near = near || std::abs(std::abs(p.breakpoint) - t) < 1e-9;
    if (near) continue;
    const cplx a = (*this)(t), b = (*this)(-t);
    if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) return false;
  }
  return true;
}

std::vector<double> BVFunction::nodes_half() const {
  std::vector<double> n{0.0, 1.0};
  for (const auto& p : pieces_)
    if (p.breakpoint > 0.0 && p.breakpoint < 1.0) n.push_back(p.breakpoint);
  if (!ac_.empty())
    for (std::size_t k = 0; k < ac_.size(); ++k) {
      const double t = -1.0 + static_cast<double>(k) * ac_h();
      if (t > 0.0 && t < 1.0) n.push_back(t);
    }
  std::sort(n.begin(), n.end());
  n.erase(std::unique(n.begin(), n.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }), n.end());
  return n;
}

double BVFunction::variation_half() const {
  double v = 0.0;
  cplx prev = 0.0;
  bool have = false;
  // Jumps of the step part at breakpoints in (0, 1).
  for (const auto& p : pieces_) {
    if (p.breakpoint <= 0.0) {
      prev = p.value;
      have = true;
      continue;
    }
    if (p.breakpoint >= 1.0) break;
    v += std::abs(p.value - (have ? prev : cplx(0.0)));
    prev = p.value;
    have = true;
  }
  // AC part: linear between nodes, so the variation is the sum of increments.
  if (!ac_.empty()) {
    const auto nodes = nodes_half();
    auto ac_at = [&](double t) {
      const double u = (t + 1.0) / ac_h();
      const auto k = std::min(static_cast<std::size_t>(u), ac_.size() - 2);
      const double f = u - static_cast<double>(k);
      return (1.0 - f) * ac_[k] + f * ac_[k + 1];
    };
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) v += std::abs(ac_at(nodes[i + 1]) - ac_at(nodes[i]));
  }
  return v;
}

double BVFunction::end_value() const { return std::abs((*this)(1.0 - 1e-14)); }

double BVFunction::l1_norm() const {
  const auto nodes = nodes_half();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i], b = nodes[i + 1];
    acc += integrate([this](double t) { return std::abs((*this)(t)) + std::abs((*this)(-t)); }, a, b, 1, 8);
  }
  return acc;
}

namespace {

// sin(w)/w, Taylor near 0.
cplx sinc(cplx w) {
  if (std::abs(w) < 1e-2) {
    const cplx w2 = w * w;
    return 1.0 - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0;
  }
  return std::sin(w) / w;
}

// Si(w) = int_0^w sin(u)/u du. Gauss-Legendre on w int_0^1 sinc(wt) dt for |w| <= 40;
// beyond, pi/2 - f cos w - g sin w with the auxiliary asymptotic series, cut at the
// smallest term (below e^-40 at |w| = 40).
cplx sine_integral(cplx w) {
  if (std::abs(w) <= 40.0) {
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(w) / 3.0)));
    return w * composite_gl<cplx>([w](double t) { return sinc(w * t); }, 0.0, 1.0, panels, 16, cplx(0.0));
  }
  if (w.real() < 0) return -sine_integral(-w);
  const cplx iw2 = 1.0 / (w * w);
  cplx f = 1.0, g = 1.0, tf = 1.0, tg = 1.0;
  for (int k = 1; k < 60; ++k) {
    const cplx nf = -tf * iw2 * static_cast<double>((2 * k - 1) * (2 * k));
    const cplx ng = -tg * iw2 * static_cast<double>((2 * k) * (2 * k + 1));
    if (std::abs(nf) > std::abs(tf) || std::abs(nf) < 1e-18) break;
    tf = nf;
    tg = ng;
    f += tf;
    g += tg;
  }
  f /= w;
  g *= iw2;
  return kPi / 2.0 - f * std::cos(w) - g * std::sin(w);
}

// On each node segment g is c0 + c1 s (step level plus linear AC interpolant); the
// coefficients come from two interior samples so breakpoints never matter.
struct Segment {
  double a, b;
  cplx c0, c1;
};

std::vector<Segment> segments(const BVFunction& g) {
  const auto nodes = g.nodes_half();
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i], b = nodes[i + 1];
    const double s1 = a + (b - a) / 3.0, s2 = a + 2.0 * (b - a) / 3.0;
    const cplx g1 = g(s1), g2 = g(s2);
    const cplx c1 = (g2 - g1) / (s2 - s1);
    out.push_back({a, b, g1 - c1 * s1, c1});
  }
  return out;
}

// int_0^1 sin(sz)/s g(s) ds: c0 (Si(bz) - Si(az)) + c1 (cos az - cos bz)/z per segment.
cplx sin_over_s_integral(const std::vector<Segment>& segs, cplx z) {
  cplx acc = 0.0;
  for (const auto& sg : segs) {
    if (sg.c0 != cplx(0.0)) acc += sg.c0 * (sine_integral(sg.b * z) - sine_integral(sg.a * z));
    // (cos az - cos bz)/z = (b - a) sin((a+b)z/2) sinc((b-a)z/2), stable at z = 0.
    if (sg.c1 != cplx(0.0))
      acc += sg.c1 * (sg.b - sg.a) * std::sin(0.5 * (sg.a + sg.b) * z) * sinc(0.5 * (sg.b - sg.a) * z);
  }
  return acc;
}

// int_0^1 cos(sz) g(s) ds over the node segments by Gauss-Legendre.
cplx cos_integral(const BVFunction& g, const std::vector<Segment>& segs, cplx z) {
  cplx acc = 0.0;
  const double az = std::abs(z);
  const bool ac = !g.ac_values().empty();
  for (const auto& sg : segs) {
    const int panels = std::max(1, static_cast<int>(std::ceil((sg.b - sg.a) * (az + 1.0) / (ac ? 1.5 : 3.0))));
    acc += composite_gl<cplx>([&](double s) { return std::cos(s * z) * (sg.c0 + sg.c1 * s); }, sg.a, sg.b, panels,
                              ac ? 8 : 16, cplx(0.0));
  }
  return acc;
}

}  // namespace

cplx bv_cos_transform(const BVFunction& g, cplx z) { return 2.0 * cos_integral(g, segments(g), z); }

Symbol pv_symbol(const BVFunction& g, double theta) {
  if (!g.even_flag()) fail(ErrorKind::NotEven, "PV symbol needs an even profile");
  const auto segs = segments(g);
  auto f = [segs](cplx z) { return cplx(0.0, -2.0) * sin_over_s_integral(segs, z); };
  auto df = [g, segs](cplx z) { return cplx(0.0, -2.0) * cos_integral(g, segs, z); };
  return Symbol(Region::strip(theta), f, CFun(df), DecayClass::None, "pv_transform");
}

BVBound bv_hinf1_bound(const BVFunction& g, double theta, int grid_n) {
  BVBound b;
  b.variation = g.variation_half();
  b.end_value = g.end_value();
  const SampleGrid grid{grid_n, true};
  // c'_theta = sup |int_0^1 sin(sz)/s ds| = sup |pv_symbol(1)| / 2.
  b.c_prime = 0.5 * hinf_norm(pv_symbol(BVFunction::constant(1.0), theta), grid).value;
  const double vg = b.variation + b.end_value;
  b.bound = 2.0 * std::exp(theta) * vg + 2.0 * b.c_prime * vg;
  b.sampled_norm = hinf1_norm(pv_symbol(g, theta), grid).value;
  b.dominates = b.sampled_norm <= b.bound * (1.0 + 1e-12) + 1e-14;
  return b;
}

std::function<double(double)> transference_phi(double omega, double alpha) {
  if (!(omega > 0)) fail(ErrorKind::InvalidArgument, "phi needs omega > 0");
  if (!(alpha > omega)) fail(ErrorKind::OrderViolation, "phi needs alpha > omega");
  const double c = (2.0 * alpha / kPi) * std::cos(kPi * omega / (2.0 * alpha));
  const double d = std::cos(kPi * omega / alpha);
  return [c, d, omega](double t) {
    // cosh(wt)/(d + cosh(2wt)) rewritten with e^{-w|t|} to avoid overflow.
    const double a = std::abs(t);
    const double e1 = std::exp(-omega * a), e2 = std::exp(-2.0 * omega * a);
    return c * (0.5 * (1.0 + e2 * 1.0)) * e1 / (d * e2 + 0.5 * (1.0 + e2 * e2));
  };
}

double phi_sech_convolution(double omega, double alpha, double s) {
  const auto phi = transference_phi(omega, alpha);
  auto sech = [](double x) {
    const double a = std::abs(x);
    const double e = std::exp(-a);
    return 2.0 * e / (1.0 + e * e);
  };
  const double L = std::abs(s) + 45.0 / omega;
  const int panels = static_cast<int>(std::ceil(2.0 * L * std::max(omega, alpha)));
  return integrate([&](double t) { return phi(t) * sech(alpha * (s - t)); }, -L, L, panels, 16);
}

}  // namespace fc

namespace fc {

cplx sech_fourier_quadrature(double omega, cplx z) {
  if (!(omega > 0)) fail(ErrorKind::InvalidArgument, "omega must be positive");
  const double gap = omega - std::abs(z.imag());
  if (!(gap > 0)) fail(ErrorKind::StripViolation, "|Im z| must be below omega");
  // 2 int_0^L cos(sz)/cosh(ws) ds with the tail below e^{-40}.
  const double L = 40.0 / gap;
  const int panels = std::max(16, static_cast<int>(std::ceil(L * (1.0 + std::abs(z.real()) + omega))));
  auto f = [&](double s) -> cplx {
    const cplx a = std::exp(cplx(0.0, 1.0) * s * z - omega * s);
    const cplx b = std::exp(-cplx(0.0, 1.0) * s * z - omega * s);
    return (a + b) / (1.0 + std::exp(-2.0 * omega * s));
  };
  return 2.0 * composite_gl<cplx>(f, 0.0, L, panels, 16, cplx(0.0));
}

}  // namespace fc
