#include "fc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fft.hpp"

namespace fc {

cplx DensityGrid::interpolate(double s) const {
  if (values.empty()) return 0.0;
  const double u = (s - start) / h;
  if (u < 0.0 || u > static_cast<double>(values.size() - 1)) return 0.0;
  const auto k = static_cast<std::size_t>(std::floor(u));
  if (k + 1 >= values.size()) return values.back();
  const double f = u - static_cast<double>(k);
  return (1.0 - f) * values[k] + f * values[k + 1];
}

ExpWeightedMeasure::ExpWeightedMeasure(std::vector<Atom> atoms, std::vector<DensityGrid> densities, double omega)
    : atoms_(std::move(atoms)), omega_(omega) {
  if (!(omega >= 0)) fail(ErrorKind::InvalidArgument, "declared weight must be nonnegative");
  for (const Atom& a : atoms_)
    if (!std::isfinite(a.s) || !is_finite(a.w)) fail(ErrorKind::NonFiniteSample, "non-finite atom");
  for (auto& d : densities) {
    if (d.empty()) continue;
    if (!(d.h > 0)) fail(ErrorKind::InvalidArgument, "density step must be positive");
    for (const cplx& v : d.values)
      if (!is_finite(v)) fail(ErrorKind::NonFiniteSample, "non-finite density sample");
    dens_.push_back(std::move(d));
  }
  update_tail_flag();
}

void ExpWeightedMeasure::update_tail_flag() {
  tail_flag_ = false;
  for (const auto& d : dens_) {
    const double a = std::exp(omega_ * std::abs(d.start)) * std::abs(d.values.front());
    const double b = std::exp(omega_ * std::abs(d.end())) * std::abs(d.values.back());
    if (a > 1e-10 || b > 1e-10) tail_flag_ = true;
  }
}

ExpWeightedMeasure ExpWeightedMeasure::dirac(double s0, cplx w, double omega) {
  return ExpWeightedMeasure({Atom{s0, w}}, {}, omega);
}

ExpWeightedMeasure ExpWeightedMeasure::from_density(const std::function<cplx(double)>& d, double omega,
                                                    GridOptions opt) {
  if (!(opt.h > 0)) fail(ErrorKind::InvalidArgument, "grid step must be positive");
  double S = opt.S0 > 0 ? opt.S0 : (omega > 0 ? 30.0 / omega : 30.0);
  for (int k = 0; k < opt.max_doublings; ++k) {
    const double tail = std::exp(omega * S) * std::max(std::abs(d(S)), std::abs(d(-S)));
    if (tail <= opt.tail_tol) break;
    S *= 2.0;
  }
  const auto n = static_cast<long>(std::ceil(S / opt.h));
  DensityGrid g;
  g.h = opt.h;
  g.start = -static_cast<double>(n) * opt.h;
  g.values.resize(2 * n + 1);
  for (long k = 0; k <= 2 * n; ++k) g.values[k] = d(g.start + static_cast<double>(k) * opt.h);
  return ExpWeightedMeasure({}, {std::move(g)}, omega);
}

double ExpWeightedMeasure::support_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) m = std::min(m, a.s);
  // Zero samples at the grid ends do not count as support.
  for (const auto& d : dens_)
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d.values[k] != cplx(0.0)) {
        m = std::min(m, d.at_index(k));
        break;
      }
  return m;
}

double ExpWeightedMeasure::support_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms_) m = std::max(m, a.s);
  for (const auto& d : dens_)
    for (std::size_t k = d.size(); k-- > 0;)
      if (d.values[k] != cplx(0.0)) {
        m = std::max(m, d.at_index(k));
        break;
      }
  return m;
}

bool ExpWeightedMeasure::has_density() const { return !dens_.empty(); }

ExpWeightedMeasure ExpWeightedMeasure::with_omega(double omega) const { return {atoms_, dens_, omega}; }

ExpWeightedMeasure ExpWeightedMeasure::operator+(const ExpWeightedMeasure& o) const {
  auto atoms = atoms_;
  atoms.insert(atoms.end(), o.atoms_.begin(), o.atoms_.end());
  auto dens = dens_;
  dens.insert(dens.end(), o.dens_.begin(), o.dens_.end());
  return {std::move(atoms), std::move(dens), std::min(omega_, o.omega_)};
}

ExpWeightedMeasure ExpWeightedMeasure::scaled(cplx c) const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.w *= c;
  auto dens = dens_;
  for (auto& d : dens)
    for (auto& v : d.values) v *= c;
  return {std::move(atoms), std::move(dens), omega_};
}

ExpWeightedMeasure ExpWeightedMeasure::trimmed(double tol) const {
  auto dens = dens_;
  for (auto& d : dens) {
    double mx = 0.0;
    for (const auto& v : d.values) mx = std::max(mx, std::abs(v));
    const double cut = tol * mx;
    std::size_t lo = 0, hi = d.values.size();
    while (lo < hi && std::abs(d.values[lo]) <= cut) ++lo;
    while (hi > lo && std::abs(d.values[hi - 1]) <= cut) --hi;
    if (lo > 0) lo -= 1;
    if (hi < d.values.size()) hi += 1;
    std::vector<cplx> v(d.values.begin() + lo, d.values.begin() + hi);
    d.start += static_cast<double>(lo) * d.h;
    d.values = std::move(v);
  }
  return {atoms_, std::move(dens), omega_};
}

double mw_norm(const ExpWeightedMeasure& mu, double omega) {
  if (omega > mu.omega() * (1.0 + 1e-12) + 1e-15)
    fail(ErrorKind::WeightExceedsDeclared, "weight exceeds the declared measure weight");
  double acc = 0.0;
  for (const auto& a : mu.atoms()) acc += std::abs(a.w) * std::exp(omega * std::abs(a.s));
  for (const auto& d : mu.densities())
    for (std::size_t k = 0; k < d.size(); ++k)
      acc += d.weight(k) * std::abs(d.values[k]) * std::exp(omega * std::abs(d.at_index(k)));
  return acc;
}

cplx fourier_stieltjes(const ExpWeightedMeasure& mu, cplx z) {
  if (std::abs(z.imag()) > mu.omega() * (1.0 + 1e-12) + 1e-15)
    fail(ErrorKind::StripViolation, "|Im z| exceeds the declared measure weight");
  cplx acc = 0.0;
  for (const auto& a : mu.atoms()) acc += a.w * std::exp(-kI * a.s * z);
  for (const auto& d : mu.densities()) {
    // e^{-i s_k z} by recurrence from the left end, re-anchored periodically.
    const cplx step = std::exp(-kI * d.h * z);
    cplx e = std::exp(-kI * d.start * z);
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k % 512 == 0) e = std::exp(-kI * d.at_index(k) * z);
      acc += d.weight(k) * d.values[k] * e;
      e *= step;
    }
  }
  return acc;
}

namespace {

// Resample `d` onto the lattice start' + k h' covering its support.
DensityGrid resample(const DensityGrid& d, double h, double anchor) {
  DensityGrid out;
  out.h = h;
  const double k0 = std::floor((d.start - anchor) / h);
  const double k1 = std::ceil((d.end() - anchor) / h);
  out.start = anchor + k0 * h;
  const auto n = static_cast<std::size_t>(k1 - k0) + 1;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d.interpolate(out.at_index(k));
  return out;
}

}  // namespace

ExpWeightedMeasure convolve(const ExpWeightedMeasure& mu, const ExpWeightedMeasure& nu) {
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms())
    for (const auto& b : nu.atoms()) atoms.push_back({a.s + b.s, a.w * b.w});
  std::vector<DensityGrid> dens;
  // Atom * density: exact shift of the grid.
  auto shift_all = [&](const std::vector<Atom>& as, const std::vector<DensityGrid>& ds) {
    for (const auto& a : as)
      for (const auto& d : ds) {
        DensityGrid g = d;
        g.start += a.s;
        for (auto& v : g.values) v *= a.w;
        dens.push_back(std::move(g));
      }
  };
  shift_all(mu.atoms(), nu.densities());
  shift_all(nu.atoms(), mu.densities());
  // Density * density: discrete convolution with trapezoid weights on the left factor.
  for (const auto& a : mu.densities())
    for (const auto& b0 : nu.densities()) {
      const DensityGrid b =
          (std::abs(b0.h - a.h) <= 1e-14 * a.h) ? b0 : resample(b0, a.h, b0.start);
      std::vector<cplx> wa(a.values);
      for (std::size_t k = 0; k < wa.size(); ++k) wa[k] *= a.weight(k);
      DensityGrid g;
      g.h = a.h;
      g.start = a.start + b.start;
      g.values = detail::linear_convolve(wa, b.values);
      dens.push_back(std::move(g));
    }
  return {std::move(atoms), std::move(dens), std::min(mu.omega(), nu.omega())};
}

namespace {

ExpWeightedMeasure reweight(const ExpWeightedMeasure& mu, const std::function<double(double)>& w, double drop) {
  auto atoms = mu.atoms();
  for (auto& a : atoms) a.w *= w(a.s);
  auto dens = mu.densities();
  for (auto& d : dens)
    for (std::size_t k = 0; k < d.size(); ++k) d.values[k] *= w(d.at_index(k));
  return {std::move(atoms), std::move(dens), std::max(0.0, mu.omega() - drop)};
}

}  // namespace

ExpWeightedMeasure cosh_weight(const ExpWeightedMeasure& mu, double omega) {
  if (omega > mu.omega() * (1.0 + 1e-12) + 1e-15)
    fail(ErrorKind::WeightExceedsDeclared, "cosh weight exceeds the declared measure weight");
  return reweight(mu, [omega](double s) { return std::cosh(omega * s); }, omega);
}

ExpWeightedMeasure tilt(const ExpWeightedMeasure& mu, double c) {
  if (std::abs(c) > mu.omega() * (1.0 + 1e-12) + 1e-15)
    fail(ErrorKind::WeightExceedsDeclared, "tilt exceeds the declared measure weight");
  return reweight(mu, [c](double s) { return std::exp(c * s); }, std::abs(c));
}

ExpWeightedMeasure reflect(const ExpWeightedMeasure& mu) {
  auto atoms = mu.atoms();
  for (auto& a : atoms) a.s = -a.s;
  std::vector<DensityGrid> dens;
  for (const auto& d : mu.densities()) {
    DensityGrid g;
    g.h = d.h;
    g.start = -d.end();
    g.values.assign(d.values.rbegin(), d.values.rend());
    dens.push_back(std::move(g));
  }
  return {std::move(atoms), std::move(dens), mu.omega()};
}

ExpWeightedMeasure inverse_fourier_symbol(const Symbol& f, const InverseFourierOptions& opt) {
  if (!f.in_E()) fail(ErrorKind::DecayClassRequired, "inverse transform needs an E-class symbol");
  const double theta = f.region().theta();
  const double alpha = opt.alpha > 0 ? opt.alpha : 2.0 * theta / 3.0;
  if (!(alpha < theta)) fail(ErrorKind::InvalidArgument, "alpha must be below the strip width");
  const double beta = 0.5 * (alpha + theta);
  const std::size_t N = std::size_t{1} << opt.log2_n;
  // Frequency step ds = pi / T must divide out_h; the t step then follows from N.
  const double dt_target = 0.025;
  double T = opt.T > 0 ? opt.T : 0.5 * static_cast<double>(N) * dt_target;
  const int m = std::max(1, static_cast<int>(std::lround(opt.out_h * T / kPi)));
  T = m * kPi / opt.out_h;
  const double dt = 2.0 * T / static_cast<double>(N);
  const double ds = kPi / T;

  auto half = [&](double shift) {
    std::vector<cplx> a(N);
    for (std::size_t j = 0; j < N; ++j) {
      const double t = -T + static_cast<double>(j) * dt;
      a[j] = f(cplx(t, shift));
    }
    // Trapezoid end weights; the samples there are O(T^-2).
    a[0] *= 0.5;
    detail::fft(a, +1);
    for (std::size_t k = 0; k < N; ++k) {
      const long kk = k < N / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(N);
      const double s = static_cast<double>(kk) * ds;
      a[k] *= dt / (2.0 * kPi) * std::exp(cplx(0.0, -s * T));
    }
    return a;
  };
  const auto hp = half(beta);
  const auto hm = half(-beta);
  // Keep |s| below half the alias-free range.
  const long kmax = static_cast<long>(N / 4) / m;
  auto g_at = [&](long j) -> cplx {
    const long k = j * m;
    const double s = static_cast<double>(k) * ds;
    const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(static_cast<long>(N) + k);
    if (k > 0) return std::exp(-beta * s) * hp[idx];
    if (k < 0) return std::exp(beta * s) * hm[idx];
    return 0.5 * (hp[0] + hm[0]);
  };
  long J = kmax;
  // Shrink the support to the last point where the weighted tail exceeds tail_tol.
  for (long j = kmax; j > 0; --j) {
    const double s = static_cast<double>(j) * opt.out_h;
    const double w = std::exp(alpha * s);
    if (w * std::abs(g_at(j)) > opt.tail_tol || w * std::abs(g_at(-j)) > opt.tail_tol) {
      J = std::min(kmax, j + 1);
      break;
    }
  }
  DensityGrid g;
  g.h = opt.out_h;
  g.start = -static_cast<double>(J) * opt.out_h;
  g.values.resize(static_cast<std::size_t>(2 * J + 1));
  for (long j = -J; j <= J; ++j) g.values[static_cast<std::size_t>(j + J)] = g_at(j);
  return ExpWeightedMeasure({}, {std::move(g)}, alpha);
}

}  // namespace fc
