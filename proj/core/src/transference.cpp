#include "fc/transference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fc/quadrature.hpp"
#include "fft.hpp"

namespace fc {

DiscretizedLpSpace DiscretizedLpSpace::standard(double omega, double p, int fiber_dim) {
  DiscretizedLpSpace s;
  const double S = 40.0 / std::max(1.0, omega);
  s.h = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(S / 8192.0))));
  s.half = static_cast<int>(std::lround(S / s.h));
  s.p = p;
  s.fiber_dim = fiber_dim;
  return s;
}

double DiscretizedLpSpace::norm(const CMatrix& v) const {
  if (v.rows() != size()) fail(ErrorKind::InvalidArgument, "element size does not match the grid");
  if (std::isinf(p)) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < v.rows(); ++j) m = std::max(m, vector_norm(v.row(j).transpose(), fiber));
    return m;
  }
  double acc = 0.0;
  for (Eigen::Index j = 0; j < v.rows(); ++j) acc += std::pow(vector_norm(v.row(j).transpose(), fiber), p);
  return std::pow(h * acc, 1.0 / p);
}

double LatticeKernel::total_variation() const {
  double tv = 0.0;
  for (const auto& t : taps) tv += std::abs(t);
  return tv;
}

LatticeKernel to_lattice(const ExpWeightedMeasure& mu, double h) {
  if (!(h > 0)) fail(ErrorKind::InvalidArgument, "lattice step must be positive");
  long kmin = std::numeric_limits<long>::max(), kmax = std::numeric_limits<long>::min();
  auto span = [&](long a, long b) {
    kmin = std::min(kmin, a);
    kmax = std::max(kmax, b);
  };
  for (const auto& a : mu.atoms()) {
    const long k = static_cast<long>(std::floor(a.s / h));
    span(k, k + 1);
  }
  for (const auto& d : mu.densities())
    if (!d.empty()) span(static_cast<long>(std::ceil(d.start / h - 1e-9)), static_cast<long>(std::floor(d.end() / h + 1e-9)));
  LatticeKernel k;
  if (kmin > kmax) return k;
  k.offset = static_cast<int>(kmin);
  k.taps.assign(static_cast<std::size_t>(kmax - kmin + 1), cplx(0.0));
  auto at = [&](long i) -> cplx& { return k.taps[static_cast<std::size_t>(i - kmin)]; };
  for (const auto& a : mu.atoms()) {
    const double u = a.s / h;
    const long i = static_cast<long>(std::floor(u));
    const double f = u - static_cast<double>(i);
    at(i) += (1.0 - f) * a.w;
    at(i + 1) += f * a.w;
  }
  for (const auto& d : mu.densities()) {
    if (d.empty()) continue;
    const bool aligned = std::abs(d.h - h) <= 1e-12 * h && std::abs(d.start / h - std::round(d.start / h)) < 1e-9;
    if (aligned) {
      const long i0 = std::lround(d.start / h);
      for (std::size_t j = 0; j < d.size(); ++j) at(i0 + static_cast<long>(j)) += d.weight(j) * d.values[j];
    } else {
      const long i0 = static_cast<long>(std::ceil(d.start / h - 1e-9));
      const long i1 = static_cast<long>(std::floor(d.end() / h + 1e-9));
      for (long i = i0; i <= i1; ++i) at(i) += h * d.interpolate(static_cast<double>(i) * h);
    }
  }
  while (k.taps.size() > 1 && k.taps.back() == cplx(0.0)) k.taps.pop_back();
  std::size_t lead = 0;
  while (lead + 1 < k.taps.size() && k.taps[lead] == cplx(0.0)) ++lead;
  k.taps.erase(k.taps.begin(), k.taps.begin() + static_cast<long>(lead));
  k.offset += static_cast<int>(lead);
  return k;
}

CMatrix apply_convolution(const LatticeKernel& k, const DiscretizedLpSpace& space, const CMatrix& f) {
  const int n = space.size();
  if (f.rows() != n) fail(ErrorKind::InvalidArgument, "element size does not match the grid");
  CMatrix out = CMatrix::Zero(n, f.cols());
  if (k.taps.empty()) return out;
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    std::vector<cplx> col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = f(j, c);
    const auto conv = detail::linear_convolve(k.taps, col);
    // out(i) = sum_k taps_k f(i - k - offset).
    for (int i = 0; i < n; ++i) {
      const long m = static_cast<long>(i) - k.offset;
      if (m >= 0 && m < static_cast<long>(conv.size())) out(i, c) = conv[static_cast<std::size_t>(m)];
    }
  }
  return out;
}

namespace {

double symbol_abs(const LatticeKernel& k, double h, double t) {
  cplx acc = 0.0;
  const cplx step = std::polar(1.0, -h * t);
  cplx e = 1.0;
  for (std::size_t j = 0; j < k.taps.size(); ++j) {
    if ((j & 255u) == 0) e = std::polar(1.0, -h * t * static_cast<double>(j));
    acc += k.taps[j] * e;
    e *= step;
  }
  return std::abs(acc);
}

}  // namespace

double lattice_symbol_sup(const LatticeKernel& k, double h, double* argmax) {
  if (k.taps.empty()) {
    if (argmax) *argmax = 0.0;
    return 0.0;
  }
  const std::size_t N = std::min<std::size_t>(detail::next_pow2(std::max<std::size_t>(16 * k.taps.size(), 1u << 14)), 1u << 22);
  std::vector<cplx> buf(N, cplx(0.0));
  // Taps beyond N wrap, which only matters for kernels longer than 2^22.
  for (std::size_t j = 0; j < k.taps.size(); ++j) buf[j % N] += k.taps[j];
  detail::fft(buf, -1);
  std::size_t best = 0;
  for (std::size_t j = 1; j < N; ++j)
    if (std::abs(buf[j]) > std::abs(buf[best])) best = j;
  const double dt = 2.0 * kPi / (static_cast<double>(N) * h);
  double a = (static_cast<double>(best) - 1.0) * dt, b = (static_cast<double>(best) + 1.0) * dt;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = symbol_abs(k, h, x1), f2 = symbol_abs(k, h, x2);
  for (int it = 0; it < 60 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = symbol_abs(k, h, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = symbol_abs(k, h, x1);
    }
  }
  double val = std::abs(buf[best]), at = static_cast<double>(best) * dt;
  if (std::max(f1, f2) > val) {
    val = std::max(f1, f2);
    at = f1 > f2 ? x1 : x2;
  }
  if (argmax) *argmax = at;
  return val;
}

ConvNorm conv_norm(const ExpWeightedMeasure& mu, const DiscretizedLpSpace& space, std::uint64_t seed) {
  const LatticeKernel k = to_lattice(mu, space.h);
  ConvNorm r;
  double xi = 0.0;
  const double sup = lattice_symbol_sup(k, space.h, &xi);
  const double tv = k.total_variation();
  const bool euclid = space.fiber_dim == 1 || space.fiber.p == 2.0;
  if (space.p == 2.0 && euclid) {
    r.lower = r.upper = r.value = sup;
    r.exact = true;
    r.method = "plancherel";
    return r;
  }
  if (space.p == 1.0 || std::isinf(space.p)) {
    // A lattice delta attains the total variation.
    r.lower = r.upper = r.value = tv;
    r.exact = true;
    r.method = "total-variation";
    return r;
  }
  // Multiplier norms dominate the sup of the symbol for every p.
  r.lower = sup;
  r.method = "probes";
  const int n = space.size();
  DiscretizedLpSpace scalar = space;
  scalar.fiber_dim = 1;
  auto ratio = [&](const CMatrix& f) {
    const double nf = scalar.norm(f);
    return nf > 0 ? scalar.norm(apply_convolution(k, scalar, f)) / nf : 0.0;
  };
  for (double frac : {1.0 / 16, 1.0 / 8, 1.0 / 4}) {
    const double sigma = frac * space.S();
    CMatrix f(n, 1);
    for (int j = 0; j < n; ++j) {
      const double t = space.t(j);
      f(j, 0) = std::exp(-0.5 * (t / sigma) * (t / sigma)) * std::polar(1.0, xi * t);
    }
    r.lower = std::max(r.lower, ratio(f));
  }
  {
    CMatrix f = CMatrix::Zero(n, 1);
    f(space.half, 0) = 1.0;
    r.lower = std::max(r.lower, ratio(f));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (int probe = 0; probe < 64; ++probe) {
    CMatrix f = CMatrix::Zero(n, 1);
    for (int j = n / 4; j < 3 * n / 4; ++j) f(j, 0) = cplx(nd(rng), nd(rng));
    r.lower = std::max(r.lower, ratio(f));
  }
  // Riesz-Thorin between p = 2 (sup) and p = 1 or infinity (total variation).
  const double th = space.p < 2.0 ? 2.0 / space.p - 1.0 : 1.0 - 2.0 / space.p;
  r.upper = euclid ? std::min(tv, std::pow(tv, th) * std::pow(sup, 1.0 - th)) : tv;
  r.upper = std::max(r.upper, r.lower);
  r.value = r.lower;
  return r;
}

namespace {

// phi(t) cosh(w0 t) for alpha = 2w, in overflow-free form (t >= 0).
double phi_cosh(double w, double w0, double t) {
  t = std::abs(t);
  const double c = std::sqrt(8.0) * w / kPi;
  return c * std::exp((w0 - w) * t) * (1.0 + std::exp(-2.0 * w * t)) * (1.0 + std::exp(-2.0 * w0 * t)) /
         (2.0 * (1.0 + std::exp(-4.0 * w * t)));
}

// cosh(w0 s) / cosh(a s) for s >= 0.
double cosh_ratio(double w0, double a, double s) {
  s = std::abs(s);
  return std::exp((w0 - a) * s) * (1.0 + std::exp(-2.0 * w0 * s)) / (1.0 + std::exp(-2.0 * a * s));
}

}  // namespace

double transference_constant(double p, double omega0, double omega) {
  if (!(p >= 1.0) || std::isinf(p)) fail(ErrorKind::InvalidArgument, "p must lie in [1, inf)");
  if (!(omega0 >= 0.0)) fail(ErrorKind::InvalidArgument, "omega0 must be nonnegative");
  if (!(omega > omega0)) fail(ErrorKind::OrderViolation, "transference needs omega > omega0");
  const double a = 2.0 * omega;
  const double c1 = std::pow(2.0 * integrate_halfline([&](double s) { return std::pow(cosh_ratio(omega0, a, s), p); }), 1.0 / p);
  double c2 = 0.0;
  if (p == 1.0) {
    // p' = infinity: sup of phi cosh(w0 .), sampled then refined.
    const double L = 40.0 / (omega - omega0);
    const int n = 4096;
    int best = 0;
    double bv = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double v = phi_cosh(omega, omega0, L * j / n);
      if (v > bv) {
        bv = v;
        best = j;
      }
    }
    double lo = L * std::max(0, best - 1) / n, hi = L * std::min(n, best + 1) / n;
    for (int it = 0; it < 100; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (phi_cosh(omega, omega0, m1) < phi_cosh(omega, omega0, m2)) lo = m1;
      else hi = m2;
    }
    c2 = std::max(bv, phi_cosh(omega, omega0, 0.5 * (lo + hi)));
  } else {
    const double q = p / (p - 1.0);
    c2 = std::pow(2.0 * integrate_halfline([&](double t) { return std::pow(phi_cosh(omega, omega0, t), q); }), 1.0 / q);
  }
  return c1 * c2;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string grid_spec(const DiscretizedLpSpace& s) {
  std::ostringstream os;
  os.precision(17);
  os << "S=" << s.S() << ",h=" << s.h << ",N=" << s.size() << ",p=" << s.p << ",fiber=" << s.fiber_dim;
  return os.str();
}

void finish(TransferenceReport& r) {
  r.slack = r.lhs > 0 ? r.rhs / r.lhs : std::numeric_limits<double>::infinity();
}

DiscretizedLpSpace space_for(const GroupModel& g, double omega, double p) {
  DiscretizedLpSpace s = DiscretizedLpSpace::standard(omega, p, g.generator().dim());
  return s;
}

}  // namespace

TransferenceReport verify_transference(const GroupModel& g, const ExpWeightedMeasure& mu, double p, double omega,
                                       std::uint64_t seed) {
  const auto t0 = Clock::now();
  const GroupBounds& b = g.bounds();
  if (!(omega > b.omega0)) fail(ErrorKind::OrderViolation, "transference needs omega > omega0");
  if (!(mu.omega() >= omega)) fail(ErrorKind::OrderViolation, "measure weight must be at least omega");
  TransferenceReport r;
  r.form = "strip";
  r.M = b.M;
  r.omega0 = b.omega0;
  r.omega = omega;
  r.p = p;
  r.seed = seed;
  r.lhs = op_norm(phillips_fc(g, mu).value);
  r.constant = transference_constant(p, b.omega0, omega);
  const auto space = space_for(g, omega, p);
  const ConvNorm cn = conv_norm(cosh_weight(mu, omega), space, seed);
  r.conv_lower = cn.lower;
  r.conv_upper = cn.upper;
  r.rhs = r.constant * b.M * b.M * cn.value;
  r.grids = grid_spec(space);
  finish(r);
  r.wall_ms = ms_since(t0);
  return r;
}

TransferenceReport verify_compact_transference(const GroupModel& g, const ExpWeightedMeasure& mu, double p,
                                               std::uint64_t seed) {
  const auto t0 = Clock::now();
  if (mu.support_min() < -1.0 - 1e-12 || mu.support_max() > 1.0 + 1e-12)
    fail(ErrorKind::SupportViolation, "compact transference needs support in [-1, 1]");
  TransferenceReport r;
  r.form = "compact";
  r.p = p;
  r.seed = seed;
  double M = 1.0;
  for (int j = -400; j <= 400; ++j) M = std::max(M, op_norm(group_at(g, j / 200.0)));
  r.M = M;
  r.omega0 = g.bounds().omega0;
  // Phillips needs a weight above omega0; compact support makes any weight finite.
  r.lhs = op_norm(phillips_fc(g, mu.with_omega(std::max(mu.omega(), g.bounds().omega0 + 1.0))).value);
  r.constant = std::pow(2.0, 1.0 / p);
  const auto space = space_for(g, 1.0, p);
  const ConvNorm cn = conv_norm(mu, space, seed);
  r.conv_lower = cn.lower;
  r.conv_upper = cn.upper;
  r.rhs = r.constant * M * M * cn.value;
  r.grids = grid_spec(space) + ",M_grid=[-2,2]/801";
  finish(r);
  r.wall_ms = ms_since(t0);
  return r;
}

TransferenceReport verify_multiplier_form(const GroupModel& g, const ExpWeightedMeasure& mu, double p, double omega,
                                          std::uint64_t seed) {
  const auto t0 = Clock::now();
  const GroupBounds& b = g.bounds();
  if (!(omega > b.omega0)) fail(ErrorKind::OrderViolation, "transference needs omega > omega0");
  if (!(mu.omega() >= omega)) fail(ErrorKind::OrderViolation, "measure weight must be at least omega");
  TransferenceReport r;
  r.form = "multiplier";
  r.M = b.M;
  r.omega0 = b.omega0;
  r.omega = omega;
  r.p = p;
  r.seed = seed;
  r.lhs = op_norm(phillips_fc(g, mu).value);
  r.constant = transference_constant(p, b.omega0, omega);
  const auto space = space_for(g, omega, p);
  const ConvNorm plus = conv_norm(tilt(mu, omega), space, seed);
  const ConvNorm minus = conv_norm(tilt(mu, -omega), space, seed);
  r.conv_lower = plus.lower + minus.lower;
  r.conv_upper = plus.upper + minus.upper;
  r.rhs = r.constant * b.M * b.M * (plus.value + minus.value);
  r.grids = grid_spec(space);
  finish(r);
  r.wall_ms = ms_since(t0);
  return r;
}

TransferenceReport verify_bounded_transference(const GroupModel& g, const ExpWeightedMeasure& mu, double p,
                                               std::uint64_t seed) {
  const auto t0 = Clock::now();
  const MatrixOperator& A = g.generator();
  if (A.max_abs_imag() > 1e-12 * std::max(1.0, A.norm()) || !g.diagonalizable())
    fail(ErrorKind::InvalidArgument, "bounded transference needs a diagonalizable generator with real spectrum");
  TransferenceReport r;
  r.form = "bounded";
  r.p = p;
  r.seed = seed;
  // sup ||U(s)||: 1 for normal generators, else a dense sample capped by cond(V).
  const CMatrix& E = A.entries();
  double M = 1.0;
  if ((E * E.adjoint() - E.adjoint() * E).norm() > 1e-12 * std::max(1.0, E.squaredNorm())) {
    for (int j = -8000; j <= 8000; ++j) M = std::max(M, op_norm(group_at(g, j / 40.0, ExpRoute::Spectral)));
    M = std::min(M, g.spectral().condition_number);
  }
  r.M = M;
  // A bounded group needs no weight and the gridded measure has compact support, so the
  // weight is raised only to satisfy the Phillips precondition.
  r.lhs = op_norm(phillips_fc(g, mu.with_omega(std::max(mu.omega(), g.bounds().omega0 + 1.0))).value);
  r.constant = 1.0;
  const auto space = space_for(g, 1.0, p);
  const ConvNorm cn = conv_norm(mu, space, seed);
  r.conv_lower = cn.lower;
  r.conv_upper = cn.upper;
  r.rhs = M * M * cn.value;
  r.grids = grid_spec(space) + ",M_grid=[-200,200]/16001";
  finish(r);
  r.wall_ms = ms_since(t0);
  return r;
}

namespace {

LatticeKernel hilbert_kernel(const DiscretizedLpSpace& space, double eps) {
  if (!(eps >= space.h * (1.0 - 1e-12))) fail(ErrorKind::EpsilonBelowGrid, "eps must be at least the grid step");
  LatticeKernel k;
  k.offset = -space.half;
  k.taps.assign(static_cast<std::size_t>(space.size()), cplx(0.0));
  for (int j = -space.half; j <= space.half; ++j) {
    const double t = j * space.h;
    if (std::abs(t) >= eps * (1.0 - 1e-12)) k.taps[static_cast<std::size_t>(j + space.half)] = space.h / t;
  }
  return k;
}

}  // namespace

CMatrix truncated_hilbert(const DiscretizedLpSpace& space, double eps, const CMatrix& f) {
  return apply_convolution(hilbert_kernel(space, eps), space, f);
}

double truncated_hilbert_l2_norm(const DiscretizedLpSpace& space, double eps) {
  return lattice_symbol_sup(hilbert_kernel(space, eps), space.h);
}

std::vector<TransferenceCase> transference_core_cases(std::uint64_t seed) {
  std::vector<TransferenceCase> out;
  const auto gauss = [](double c, double sigma) {
    return [c, sigma](double s) { return cplx(std::exp(-0.5 * ((s - c) / sigma) * ((s - c) / sigma)) / (sigma * std::sqrt(2.0 * kPi)), 0.0); };
  };
  // Unbounded scalar-type group with a Gaussian density.
  CMatrix a1 = CMatrix::Zero(1, 1);
  a1(0, 0) = cplx(0.0, 0.8);
  GroupModel g1{MatrixOperator(a1)};
  const auto mu1 = ExpWeightedMeasure::from_density(gauss(0.3, 0.5), 3.0);
  // Random diagonalizable group, uniform density on [-1, 1] plus atoms at +-1/2.
  GroupModel g2{random_diagonalizable(3, seed + 11)};
  std::vector<cplx> uni(129, cplx(0.5, 0.0));
  const ExpWeightedMeasure mu2({Atom{0.5, {1.0, 0.0}}, Atom{-0.5, {-1.0, 0.0}}}, {DensityGrid{-1.0, 1.0 / 64, uni}}, 50.0);
  // Random group with atoms and a two-sided exponential density.
  GroupModel g3{random_diagonalizable(2, seed + 23)};
  const double w3 = g3.bounds().omega0 + 0.5;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  std::vector<Atom> atoms3;
  for (int i = 0; i < 4; ++i) atoms3.push_back(Atom{2.0 * ud(rng), cplx(ud(rng), ud(rng))});
  const double decay = w3 + 1.5;
  const ExpWeightedMeasure mu3 =
      ExpWeightedMeasure(atoms3, {}, decay) +
      ExpWeightedMeasure::from_density([decay](double s) { return cplx(std::exp(-decay * std::abs(s)), 0.0); }, w3 + 0.5);
  // Bounded non-normal group: real spectrum, cond(V) ~ 10.
  CVector lam(3);
  lam << 0.4, -0.7, 1.3;
  GroupModel g4{from_eigenvalues(lam, seed + 37, 1.0)};
  std::vector<Atom> atoms4;
  for (int i = 0; i < 5; ++i) atoms4.push_back(Atom{3.0 * ud(rng), cplx(ud(rng), ud(rng))});
  const ExpWeightedMeasure mu4(atoms4, {}, 50.0);

  const double w1 = 1.0;
  for (double p : {1.0, 2.0, 4.0}) {
    const std::string ps = "p=" + std::to_string(static_cast<int>(p));
    out.push_back({"strip/gauss/" + ps, "strip", g1, mu1, mu2, p, w1});
    out.push_back({"compact/uniform/" + ps, "compact", g2, mu2, mu2, p, g2.bounds().omega0 + 0.5});
    out.push_back({"multiplier/mixed/" + ps, "multiplier", g3, mu3, mu2, p, w3});
    out.push_back({"bounded/atoms/" + ps, "bounded", g4, mu4, mu2, p, 1.0});
  }
  return out;
}

TransferenceReport run_transference_case(const TransferenceCase& c, std::uint64_t seed) {
  if (c.form == "strip") return verify_transference(c.group, c.mu, c.p, c.omega, seed);
  if (c.form == "compact") return verify_compact_transference(c.group, c.mu_compact, c.p, seed);
  if (c.form == "multiplier") return verify_multiplier_form(c.group, c.mu, c.p, c.omega, seed);
  if (c.form == "bounded") return verify_bounded_transference(c.group, c.mu, c.p, seed);
  fail(ErrorKind::InvalidArgument, "unknown transference form: " + c.form);
}

}  // namespace fc
