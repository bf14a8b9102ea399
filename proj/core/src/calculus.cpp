#include "fc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fc/catalogue.hpp"
#include "fc/quadrature.hpp"
#include "fc/symbol_norms.hpp"

namespace fc {

namespace {

struct Schur {
  CMatrix Q;
  CMatrix T;
  explicit Schur(const CMatrix& A) {
    Eigen::ComplexSchur<CMatrix> cs(A);
    Q = cs.matrixU();
    T = cs.matrixT();
  }
  // (zI - T)^{-1}, upper triangular.
  CMatrix resolvent(cplx z) const {
    const Eigen::Index n = T.rows();
    CMatrix m = -T;
    m.diagonal().array() += z;
    return m.triangularView<Eigen::Upper>().solve(CMatrix::Identity(n, n));
  }
  CMatrix back(const CMatrix& S) const { return Q * S * Q.adjoint(); }
};

double rel_change(const CMatrix& a, const CMatrix& b) {
  const double s = std::max(a.norm(), 1e-300);
  return (a - b).norm() / s;
}

}  // namespace

double default_omega_prime(const MatrixOperator& A, const Symbol& f) {
  return 0.5 * (A.max_abs_imag() + f.region().theta());
}

ContourResult contour_fc_strip(const MatrixOperator& A, const Symbol& f, double omega_prime, const ContourOptions& opt) {
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "strip contour needs a strip symbol");
  if (!f.in_E()) fail(ErrorKind::DecayClassRequired, "strip contour needs an E-class symbol: " + f.description());
  const double theta = f.region().theta();
  if (!(omega_prime > 0 && omega_prime < theta))
    fail(ErrorKind::SpectrumOutsideContour, "contour strip must satisfy 0 < w' < theta");
  if (!(A.max_abs_imag() < omega_prime))
    fail(ErrorKind::SpectrumOutsideContour, "an eigenvalue lies on or outside the contour strip");

  const Schur sc(A.entries());
  const Eigen::Index n = A.dim();
  const double a = std::max(1.0, A.spectral_radius());
  double R = std::max({10.0 * theta, 10.0 * A.spectral_radius(), 10.0});
  if (opt.mode == ContourOptions::Mode::TailBound) {
    // |f| <= K/|z|^2 beyond R0 gives a dropped tail of at most 2 K / (pi R) per line.
    double K = 0.0;
    for (double x = R; x <= 1e6; x *= 1.5)
      for (double y : {-omega_prime, omega_prime})
        for (double sg : {-1.0, 1.0}) {
          const cplx z(sg * x, y);
          K = std::max(K, std::abs(f(z)) * std::norm(z));
        }
    R = std::max(R, 2.0 * K / (kPi * 1e-10));
  }
  const double U = std::asinh(R / a);
  const CMatrix zero = CMatrix::Zero(n, n);
  auto horizontal = [&](double u) -> CMatrix {
    const double x = a * std::sinh(u);
    const double jac = a * std::cosh(u);
    const cplx zl(x, -omega_prime), zu(x, omega_prime);
    return jac * (f(zl) * sc.resolvent(zl) - f(zu) * sc.resolvent(zu));
  };
  auto vertical = [&](double y) -> CMatrix {
    const cplx zr(R, y), zl(-R, y);
    return kI * (f(zr) * sc.resolvent(zr) - f(zl) * sc.resolvent(zl));
  };
  const bool closed = opt.mode == ContourOptions::Mode::Closed;
  auto total = [&](int panels) -> CMatrix {
    CMatrix S = composite_gl<CMatrix>(horizontal, -U, U, panels, 16, zero);
    if (closed) S += composite_gl<CMatrix>(vertical, -omega_prime, omega_prime, std::max(2, panels / 16), 16, zero);
    return S;
  };
  ContourResult res;
  int p = std::max(2, opt.panels0);
  CMatrix prev = total(p);
  while (true) {
    p *= 2;
    CMatrix cur = total(p);
    res.change = rel_change(cur, prev);
    prev = std::move(cur);
    if (res.change < opt.rtol) {
      res.converged = true;
      break;
    }
    if (p >= opt.max_panels) break;
  }
  res.panels = p;
  res.R = R;
  res.value = sc.back(prev) / (2.0 * kPi * kI);
  return res;
}

Symbol resolvent_square_regulariser(cplx lambda, double theta) {
  return rational({lambda}, {2}, 1.0, Region::strip(theta));
}

CMatrix regularized_fc(const MatrixOperator& A, const Symbol& f, const Symbol& e, double omega_prime,
                       const ContourOptions& opt) {
  if (!e.in_E()) fail(ErrorKind::DecayClassRequired, "regulariser must be E-class");
  const Symbol ef = product(e, f);
  if (!ef.in_E()) fail(ErrorKind::DecayClassRequired, "regularised product must be E-class");
  if (omega_prime <= 0) omega_prime = default_omega_prime(A, ef);
  const CMatrix EA = contour_fc_strip(A, e, omega_prime, opt).value;
  const CMatrix EFA = contour_fc_strip(A, ef, omega_prime, opt).value;
  Eigen::JacobiSVD<CMatrix> svd(EA);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) fail(ErrorKind::RegulariserSingular, "e(A) is numerically singular");
  return EA.partialPivLu().solve(EFA);
}

namespace {

// sum_k c_k X^k by the Paterson-Stockmeyer scheme.
CMatrix matrix_poly(const std::vector<cplx>& c, const CMatrix& X) {
  const Eigen::Index n = X.rows();
  const std::size_t K = c.size();
  if (K == 0) return CMatrix::Zero(n, n);
  const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(K)))));
  std::vector<CMatrix> P(m + 1);
  P[0] = CMatrix::Identity(n, n);
  for (std::size_t i = 1; i <= m; ++i) P[i] = P[i - 1] * X;
  const std::size_t blocks = (K + m - 1) / m;
  CMatrix acc = CMatrix::Zero(n, n);
  for (std::size_t j = blocks; j-- > 0;) {
    CMatrix B = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < m && j * m + i < K; ++i)
      if (c[j * m + i] != cplx(0.0)) B.noalias() += c[j * m + i] * P[i];
    acc = (j + 1 == blocks) ? B : (acc * P[m] + B).eval();
  }
  return acc;
}

}  // namespace

PhillipsResult phillips_fc(const GroupModel& g, const ExpWeightedMeasure& mu, FiberNorm fn) {
  const double w0 = g.bounds().omega0;
  if (!(mu.omega() > w0)) fail(ErrorKind::WeightOrderViolation, "measure weight must exceed the group omega0");
  const Eigen::Index n = g.generator().dim();
  CMatrix T = CMatrix::Zero(n, n);
  for (const auto& a : mu.atoms()) T += a.w * group_at(g, a.s, ExpRoute::Pade);
  for (const auto& d : mu.densities()) {
    const long N = static_cast<long>(d.size());
    // Anchor at the grid point nearest 0 so both sweeps move away from it.
    const long k0 = std::clamp(static_cast<long>(std::lround(-d.start / d.h)), 0L, N - 1);
    const double sa = d.at_index(static_cast<std::size_t>(k0));
    std::vector<cplx> cp, cm;
    for (long k = k0; k < N; ++k) cp.push_back(d.weight(static_cast<std::size_t>(k)) * d.values[static_cast<std::size_t>(k)]);
    cm.push_back(0.0);
    for (long k = k0 - 1; k >= 0; --k)
      cm.push_back(d.weight(static_cast<std::size_t>(k)) * d.values[static_cast<std::size_t>(k)]);
    const CMatrix X = group_at(g, d.h, ExpRoute::Pade);
    const CMatrix Y = group_at(g, -d.h, ExpRoute::Pade);
    T += group_at(g, sa, ExpRoute::Pade) * (matrix_poly(cp, X) + matrix_poly(cm, Y));
  }
  PhillipsResult r;
  r.value = std::move(T);
  r.norm = op_norm(r.value, fn);
  r.norm_bound = g.bounds().M * mw_norm(mu.with_omega(std::max(mu.omega(), w0)), w0);
  return r;
}

std::vector<double> default_eps_schedule() {
  std::vector<double> e;
  for (int k = 1; k <= 20; ++k) e.push_back(std::ldexp(1.0, -k));
  return e;
}

PvTrace pv_fc(const GroupModel& g, const BVFunction& gfun, const std::vector<double>& eps) {
  if (!gfun.even_flag()) fail(ErrorKind::NotEven, "PV calculus needs an even profile");
  if (eps.size() < 2) fail(ErrorKind::InvalidArgument, "eps schedule needs at least two levels");
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (!(eps[k] > 0 && eps[k] <= 1.0) || (k > 0 && !(eps[k] < eps[k - 1])))
      fail(ErrorKind::InvalidArgument, "eps schedule must be decreasing in (0, 1]");
  const Eigen::Index n = g.generator().dim();
  const CMatrix zero = CMatrix::Zero(n, n);
  const auto nodes = gfun.nodes_half();
  const bool ac = !gfun.ac_values().empty();
  const double scale = g.generator().norm() + 1.0;
  auto band = [&](double lo, double hi) -> CMatrix {
    std::vector<double> cuts{lo};
    for (double t : nodes)
      if (t > lo && t < hi) cuts.push_back(t);
    cuts.push_back(hi);
    CMatrix acc = zero;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i], b = cuts[i + 1];
      const cplx gm = gfun(0.5 * (a + b));
      const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * scale / 0.5)));
      acc += composite_gl<CMatrix>(
          [&](double s) -> CMatrix {
            const cplx gv = ac ? gfun(s) : gm;
            return (gv / s) * (group_at(g, s) - group_at(g, -s));
          },
          a, b, panels, ac ? 8 : 16, zero);
    }
    return acc;
  };
  PvTrace tr;
  tr.eps = eps;
  CMatrix I = band(eps[0], 1.0);
  tr.partial.push_back(I);
  for (std::size_t k = 1; k < eps.size(); ++k) {
    I = I + band(eps[k], eps[k - 1]);
    tr.partial.push_back(I);
    tr.increments.push_back((tr.partial[k] - tr.partial[k - 1]).norm());
  }
  const std::size_t K = tr.partial.size();
  const double ratio = eps[K - 2] / eps[K - 1];
  // Leading error is linear in eps.
  tr.limit = (ratio * tr.partial[K - 1] - tr.partial[K - 2]) / (ratio - 1.0);
  tr.monotone_tail = true;
  const std::size_t m = tr.increments.size();
  for (std::size_t k = (m > 5 ? m - 5 : 0) + 1; k < m; ++k)
    if (tr.increments[k] > tr.increments[k - 1] * (1.0 + 1e-9) + 1e-15) tr.monotone_tail = false;
  if (!tr.monotone_tail) fail(ErrorKind::NonConvergent, "PV increments do not decrease over the last 5 levels");
  return tr;
}

ConvergenceTrace convergence_lemma_run(const MatrixOperator& A, const Symbol& f, const std::vector<int>& n_list,
                                       int probes, std::uint64_t seed, bool with_hinf1) {
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "convergence runner needs a strip symbol");
  const double theta = f.region().theta();
  const SpectralData sd = spectral_data(A);
  const CMatrix ref = spectral_fc(sd, f);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CMatrix X(A.dim(), probes);
  for (int j = 0; j < probes; ++j) {
    for (int i = 0; i < A.dim(); ++i) X(i, j) = cplx(nd(rng), nd(rng));
    X.col(j).normalize();
  }
  ConvergenceTrace tr;
  for (int nn : n_list) {
    if (!(nn > theta)) fail(ErrorKind::InvalidArgument, "tau_n needs n > theta");
    const cplx in(0.0, static_cast<double>(nn));
    const Symbol tau2 = rational({in}, {2}, in * in, Region::strip(theta));
    const Symbol fn = product(f, tau2);
    const CMatrix v = contour_fc_strip(A, fn, default_omega_prime(A, fn)).value;
    tr.n.push_back(nn);
    tr.norm_fn.push_back(op_norm(v));
    double err = 0.0;
    for (int j = 0; j < probes; ++j) err = std::max(err, ((v - ref) * X.col(j)).norm());
    tr.probe_error.push_back(err);
    if (with_hinf1) tr.hinf1_fn.push_back(hinf1_norm(fn, SampleGrid{512, true}).value);
    tr.sup_norm = std::max(tr.sup_norm, tr.norm_fn.back());
  }
  tr.final_error = tr.probe_error.empty() ? 0.0 : tr.probe_error.back();
  return tr;
}

ContourResult contour_fc_sector(const MatrixOperator& B, const Symbol& f, double omega_prime, bool regularise,
                                const ContourOptions& opt) {
  if (f.region().kind() != RegionKind::Sector) fail(ErrorKind::SectorRequired, "sector contour needs a sector symbol");
  if (!(omega_prime > 0 && omega_prime < f.region().theta()))
    fail(ErrorKind::SpectrumOutsideContour, "contour angle must satisfy 0 < w' < phi");
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (Eigen::Index i = 0; i < B.eigenvalues().size(); ++i) {
    const cplx l = B.eigenvalues()(i);
    if (l == cplx(0.0) || !(std::abs(std::arg(l)) < omega_prime))
      fail(ErrorKind::SpectrumOutsideContour, "an eigenvalue lies outside the contour sector");
    rmin = std::min(rmin, std::abs(l));
    rmax = std::max(rmax, std::abs(l));
  }
  rmin *= 0.25;
  rmax *= 4.0;
  const Symbol h = regularise ? product(f, sector_regulariser(f.region().theta())) : f;
  const Schur sc(B.entries());
  const Eigen::Index n = B.dim();
  const CMatrix zero = CMatrix::Zero(n, n);
  const double t0 = std::log(rmin), t1 = std::log(rmax);
  const cplx el = std::polar(1.0, -omega_prime), eu = std::polar(1.0, omega_prime);
  auto rays = [&](double t) -> CMatrix {
    const cplx zl = std::exp(t) * el, zu = std::exp(t) * eu;
    return h(zl) * zl * sc.resolvent(zl) - h(zu) * zu * sc.resolvent(zu);
  };
  auto arcs = [&](double al) -> CMatrix {
    const cplx zo = std::polar(rmax, al), zi = std::polar(rmin, al);
    return kI * (h(zo) * zo * sc.resolvent(zo) - h(zi) * zi * sc.resolvent(zi));
  };
  auto total = [&](int panels) -> CMatrix {
    return composite_gl<CMatrix>(rays, t0, t1, panels, 16, zero) +
           composite_gl<CMatrix>(arcs, -omega_prime, omega_prime, std::max(2, panels / 4), 16, zero);
  };
  ContourResult res;
  int p = std::max(2, opt.panels0);
  CMatrix prev = total(p);
  while (true) {
    p *= 2;
    CMatrix cur = total(p);
    res.change = rel_change(cur, prev);
    prev = std::move(cur);
    if (res.change < opt.rtol) {
      res.converged = true;
      break;
    }
    if (p >= opt.max_panels) break;
  }
  res.panels = p;
  res.R = rmax;
  res.r_min = rmin;
  CMatrix v = sc.back(prev) / (2.0 * kPi * kI);
  if (regularise) {
    // e(B) = B (1 + B)^{-2}, so e(B)^{-1} = (1 + B)^2 B^{-1}.
    const CMatrix I = CMatrix::Identity(n, n);
    const CMatrix onep = I + B.entries();
    v = (onep * onep * B.entries().partialPivLu().solve(I)) * v;
  }
  res.value = std::move(v);
  return res;
}

ShiftNormReport l1_weighted_shift_check(const ExpWeightedMeasure& mu, double omega, double h, double T) {
  if (!(h > 0 && T > 0)) fail(ErrorKind::InvalidArgument, "grid needs h > 0 and T > 0");
  const long J = static_cast<long>(std::floor(T / h));
  // Support points x with masses |m_x|. Density cells sit on h Z; atoms keep their exact
  // locations and are never merged with a density cell, since they are singular to it.
  std::map<long, cplx> cells;
  for (const auto& d : mu.densities()) {
    const long k0 = static_cast<long>(std::ceil(d.start / h - 1e-9));
    const long k1 = static_cast<long>(std::floor(d.end() / h + 1e-9));
    for (long k = k0; k <= k1; ++k) cells[k] += h * d.interpolate(static_cast<double>(k) * h);
  }
  std::map<double, cplx> points;
  for (const auto& a : mu.atoms()) points[a.s] += a.w;
  std::vector<std::pair<double, double>> m;
  for (const auto& [k, v] : cells)
    if (std::abs(v) > 0) m.emplace_back(static_cast<double>(k) * h, std::abs(v));
  for (const auto& [x, v] : points)
    if (std::abs(v) > 0) m.emplace_back(x, std::abs(v));
  ShiftNormReport rep;
  rep.mw = mw_norm(mu, omega);
  // Column j: L e_j is supported at t_j - x (reflected measure), weighted e^{w|t_j - x|}/e^{w|t_j|}.
  for (long j = -J; j <= J; ++j) {
    const double tj = static_cast<double>(j) * h;
    double col = 0.0;
    for (const auto& [x, a] : m) {
      const double t = tj - x;
      if (std::abs(t) > T + 1e-9 * h) continue;
      col += a * std::exp(omega * (std::abs(t) - std::abs(tj)));
    }
    if (col > rep.conv_norm) {
      rep.conv_norm = col;
      rep.argmax_column = static_cast<int>(j);
    }
  }
  rep.rel_diff = std::abs(rep.conv_norm - rep.mw) / std::max(rep.mw, 1e-300);
  return rep;
}

}  // namespace fc
