#include "fc/cosine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fc/catalogue.hpp"
#include "fc/quadrature.hpp"
#include "fc/regions.hpp"
#include "fc/sectorial.hpp"

namespace fc {

namespace {

CMatrix cos_series(const CMatrix& X) {
  // sum (-1)^k X^k / (2k)!
  const Eigen::Index n = X.rows();
  CMatrix acc = CMatrix::Identity(n, n);
  CMatrix term = CMatrix::Identity(n, n);
  for (int k = 1; k < 200; ++k) {
    term = (-1.0 / ((2.0 * k - 1.0) * (2.0 * k))) * (term * X);
    acc += term;
    if (term.norm() <= 1e-18 * acc.norm()) break;
  }
  return acc;
}

double log_fit_cos_type(const MatrixOperator& B) {
  // Slope of log ||cos(t sqrt B)|| over t in [10, 40].
  std::vector<double> ts, ls;
  for (int j = 0; j <= 30; ++j) {
    const double t = 10.0 + j;
    const CMatrix X = (t * t) * B.entries();
    int halvings = 0;
    double nx = X.norm();
    while (nx > 1.0) {
      nx /= 4.0;
      ++halvings;
    }
    CMatrix C = cos_series(X / std::pow(4.0, halvings));
    const CMatrix I = CMatrix::Identity(B.dim(), B.dim());
    for (int h = 0; h < halvings; ++h) C = 2.0 * C * C - I;
    ts.push_back(t);
    ls.push_back(std::log(std::max(C.norm(), 1e-300)));
  }
  double mt = 0, ml = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += ls[i];
  }
  mt /= static_cast<double>(ts.size());
  ml /= static_cast<double>(ts.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    num += (ts[i] - mt) * (ls[i] - ml);
    den += (ts[i] - mt) * (ts[i] - mt);
  }
  return std::max(0.0, num / den);
}

// M with ||Cos(t)|| <= M cosh(w0 t) on a sample of [0, t_max].
double cos_bound(const CosineModel& c, double w0, double t_max) {
  double M = 1.0;
  for (int j = 0; j <= 400; ++j) {
    const double t = t_max * j / 400.0;
    M = std::max(M, op_norm(cosine_at(c, t)) / std::cosh(w0 * t));
  }
  return M;
}

}  // namespace

CosineModel::CosineModel(MatrixOperator A, double margin)
    : a_(std::move(A)), b_(a_.scaled(-1.0)), sd_(spectral_data(b_)) {
  if (sd_.diagonalizable()) {
    for (Eigen::Index i = 0; i < sd_.eigenvalues.size(); ++i)
      cos_type_ = std::max(cos_type_, std::abs(std::sqrt(sd_.eigenvalues(i)).imag()));
  } else {
    cos_type_ = log_fit_cos_type(b_);
  }
  parabola_omega_ = cos_type_ + margin;
}

CMatrix cosine_at(const CosineModel& c, double t, CosineRoute route, bool allow_scaling) {
  if (route == CosineRoute::Auto)
    route = c.spectral_B().diagonalizable() && c.spectral_B().condition_number < 1e6 ? CosineRoute::Spectral
                                                                                       : CosineRoute::Series;
  if (route == CosineRoute::Spectral) {
    if (!c.spectral_B().diagonalizable()) fail(ErrorKind::NonDiagonalizable, "spectral cosine route needs diagonalizable B");
    // cos is even, so the square-root branch does not matter.
    return c.spectral_B().apply([t](cplx l) { return std::cos(t * std::sqrt(l)); });
  }
  const CMatrix X = (t * t) * c.B().entries();
  const double nx = X.norm();
  if (!allow_scaling) {
    if (nx > 50.0) fail(ErrorKind::SeriesDivergence, "||t^2 B|| too large for the unscaled series");
    return cos_series(X);
  }
  int halvings = 0;
  double s = nx;
  while (s > 1.0) {
    s /= 4.0;
    ++halvings;
  }
  CMatrix C = cos_series(X / std::pow(4.0, halvings));
  const CMatrix I = CMatrix::Identity(X.rows(), X.cols());
  for (int h = 0; h < halvings; ++h) C = 2.0 * C * C - I;
  return C;
}

LaplaceReport laplace_generator_check(const CosineModel& c, const std::vector<double>& lambdas) {
  LaplaceReport rep;
  const double w0 = c.cos_type();
  const double M = cos_bound(c, w0, 20.0);
  const Eigen::Index n = c.generator().dim();
  const CMatrix I = CMatrix::Identity(n, n);
  for (double lam : lambdas) {
    if (!(lam > w0)) fail(ErrorKind::TypeViolation, "Laplace check needs lambda > cos_type");
    // e^{-lam T} M e^{w0 T} <= 1e-12.
    const double T = std::max(1.0, (std::log(std::max(M, 1.0)) + 12.0 * std::log(10.0)) / (lam - w0));
    const double freq = std::sqrt(c.B().spectral_radius()) + lam;
    const int panels = std::max(16, static_cast<int>(std::ceil(T * freq)));
    const CMatrix quad = composite_gl<CMatrix>([&](double t) -> CMatrix { return std::exp(-lam * t) * cosine_at(c, t); },
                                               0.0, T, panels, 16, CMatrix::Zero(n, n));
    // lambda R(lambda^2, A) = lambda (lambda^2 - A)^{-1}.
    const CMatrix ref = lam * (lam * lam * I - c.generator().entries()).partialPivLu().solve(I);
    const double r = (quad - ref).norm() / ref.norm();
    rep.lambdas.push_back(lam);
    rep.residuals.push_back(r);
    rep.T.push_back(T);
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

CMatrix phase_space(const CMatrix& A) {
  const Eigen::Index n = A.rows();
  CMatrix P = CMatrix::Zero(2 * n, 2 * n);
  P.block(0, n, n, n) = CMatrix::Identity(n, n);
  P.block(n, 0, n, n) = A;
  return P;
}

PhaseReport phase_space_check(const CosineModel& c, const std::vector<double>& s_list) {
  const CMatrix& A = c.generator().entries();
  const Eigen::Index n = A.rows();
  const CMatrix P = phase_space(A);
  PhaseReport rep;
  CMatrix D = CMatrix::Zero(2 * n, 2 * n);
  D.block(0, 0, n, n) = A;
  D.block(n, n, n, n) = A;
  rep.square_residual = (P * P - D).norm();
  auto block = [&](double s) -> CMatrix { return expm(s * P).block(0, 0, n, n); };
  const double h = 1e-2;
  for (double s : s_list) {
    const CMatrix u = block(s);
    const CMatrix C = cosine_at(c, s);
    rep.block_residual = std::max(rep.block_residual, (u - C).norm() / std::max(1.0, C.norm()));
    const CMatrix upp = (-block(s + 2 * h) + 16.0 * block(s + h) - 30.0 * u + 16.0 * block(s - h) - block(s - 2 * h)) /
                        (12.0 * h * h);
    const CMatrix Au = A * u;
    rep.ode_residual = std::max(rep.ode_residual, (upp - Au).norm() / std::max(1.0, Au.norm()));
    for (double r : s_list) {
      const CMatrix lhs = expm(s * P) * expm(r * P);
      const CMatrix rhs = expm((s + r) * P);
      rep.group_law = std::max(rep.group_law, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
  }
  return rep;
}

DalembertReport dalembert_check(const CosineModel& c, int n, double t_max) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "d'Alembert grid needs n >= 2");
  const double w0 = c.cos_type();
  const double M = cos_bound(c, w0, 2.0 * t_max);
  const Eigen::Index d = c.generator().dim();
  DalembertReport rep;
  rep.cos0_residual = (cosine_at(c, 0.0) - CMatrix::Identity(d, d)).norm();
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) ts.push_back(-t_max + 2.0 * t_max * i / (n - 1));
  for (double t : ts) {
    const CMatrix Ct = cosine_at(c, t);
    rep.even_residual = std::max(rep.even_residual, (cosine_at(c, -t) - Ct).norm() / std::max(1.0, Ct.norm()));
    for (double s : ts) {
      const CMatrix r = cosine_at(c, t + s) + cosine_at(c, t - s) - 2.0 * Ct * cosine_at(c, s);
      const double scale = M * M * std::cosh(w0 * t) * std::cosh(w0 * s);
      rep.max_scaled_residual = std::max(rep.max_scaled_residual, r.norm() / scale);
    }
  }
  return rep;
}

ParabolaTypeReport parabola_type_check(const MatrixOperator& B, double omega, int n_samples) {
  for (Eigen::Index i = 0; i < B.eigenvalues().size(); ++i)
    if (!(std::abs(std::sqrt(B.eigenvalues()(i)).imag()) < omega))
      fail(ErrorKind::SpectrumOutsideParabola, "spectrum is not strictly inside the parabola");
  ParabolaTypeReport rep;
  const std::vector<double> ys{1.001, 1.01, 1.1, 1.5, 2.0, 4.0, 10.0, 100.0};
  const int per = std::max(8, n_samples / static_cast<int>(2 * ys.size()));
  const auto xs = tan_grid(per);
  const Eigen::Index n = B.dim();
  const CMatrix I = CMatrix::Identity(n, n);
  for (double yf : ys)
    for (double sg : {1.0, -1.0})
      for (double x : xs) {
        const double y = sg * (omega * yf + (yf - 1.0));
        const cplx v(x, y);
        const cplx mu = v * v;
        // R(mu, B) = (mu - B)^{-1}.
        const CMatrix R = (mu * I - B.entries()).partialPivLu().solve(I);
        const double ratio = op_norm(R) * std::sqrt(std::abs(mu)) * (std::abs(y) - omega);
        rep.M_fit = std::max(rep.M_fit, ratio);
        ++rep.samples;
      }
  rep.certified = std::isfinite(rep.M_fit);
  return rep;
}

ParabolaResult parabola_fc(const MatrixOperator& B, const Symbol& f) {
  if (f.region().kind() != RegionKind::Parabola) fail(ErrorKind::InvalidArgument, "parabola calculus needs a parabola symbol");
  const double omega = f.region().theta();
  for (Eigen::Index i = 0; i < B.eigenvalues().size(); ++i)
    if (!(std::abs(std::sqrt(B.eigenvalues()(i)).imag()) < omega))
      fail(ErrorKind::SpectrumOutsideParabola, "spectrum of B is not inside the parabola");
  const Eigen::Index n = B.dim();
  // calB = i calA with A = -B; g(calB) = f(calB^2) and calB^2 = diag(B, B).
  const MatrixOperator calB(cplx(0.0, 1.0) * phase_space(-B.entries()));
  const Symbol g = compose_square(f);
  const Symbol e = resolvent_square_regulariser(cplx(0.0, omega + 1.0), omega);
  const CMatrix G = regularized_fc(calB, g, e);
  ParabolaResult r;
  r.value = G.block(0, 0, n, n);
  r.block_agreement = (G.block(0, 0, n, n) - G.block(n, n, n, n)).norm();
  r.off_block = G.block(0, n, n, n).norm() + G.block(n, 0, n, n).norm();
  return r;
}

Symbol cos_sqrt_symbol(double t, double omega) {
  std::ostringstream os;
  os << "cos(" << t << " sqrt(w))";
  return Symbol(
      Region::parabola(omega), [t](cplx w) { return std::cos(t * std::sqrt(w)); },
      CFun([t](cplx w) {
        // -t sin(t sqrt w) / (2 sqrt w), even in sqrt w; series near 0.
        if (std::abs(t * t * w) < 1e-6) return -0.5 * t * t * (1.0 - t * t * w / 12.0);
        const cplx s = std::sqrt(w);
        return -t * std::sin(t * s) / (2.0 * s);
      }),
      DecayClass::None, os.str());
}

SectorShiftReport sector_shift_check(const CosineModel& c, double theta, double phi, int geometry_samples) {
  if (!(theta > 0 && theta <= kPi / 2 + 1e-15)) fail(ErrorKind::AngleViolation, "theta must lie in (0, pi/2]");
  if (!(phi > theta && phi < kPi)) fail(ErrorKind::AngleViolation, "phi must satisfy theta < phi < pi");
  SectorShiftReport rep;
  const double w0 = c.parabola_omega();
  const double shift = std::pow(w0 / std::sin(theta), 2);
  rep.shift = shift;
  // (i) boundary of shift + Pi_w0 is {shift + (x + i w0)^2}.
  const auto xs = tan_grid(geometry_samples / 2 + 1);
  rep.geometry_ok = true;
  for (double x : xs)
    for (double sg : {1.0, -1.0}) {
      const cplx v(x, sg * w0);
      const cplx z = shift + v * v;
      const double a = z == cplx(0.0) ? 0.0 : std::abs(std::arg(z));
      rep.geometry_max_arg = std::max(rep.geometry_max_arg, a);
      if (a > theta + 1e-12) rep.geometry_ok = false;
    }
  // (ii) B_theta = B + shift.
  const MatrixOperator Bt = c.B().shifted(shift);
  const SectorialData sd(Bt);
  rep.spectral_angle = sd.angle();
  const double wprime = std::min(theta + 1e-6, kPi);
  rep.sector_M = rep.spectral_angle < wprime ? sd.sector_constant(wprime) : std::numeric_limits<double>::infinity();
  rep.angle_ok = rep.spectral_angle <= theta + 1e-6 && std::isfinite(rep.sector_M);
  // (iii) f(B_theta) by the sector contour against g(B), g(w) = f(shift + w) on the parabola.
  const Symbol f = sector_ratio(1.0, Region::sector(phi));
  const Symbol fc = f;
  const Symbol g(Region::parabola(w0), [fc, shift](cplx w) { return fc(shift + w); },
                 CFun([fc, shift](cplx w) { return fc.deriv(shift + w); }), DecayClass::None, f.description() + "(shift+w)");
  if (rep.angle_ok) {
    const double wc = 0.5 * (rep.spectral_angle + phi);
    const CMatrix sector = contour_fc_sector(Bt, f, wc, true).value;
    const CMatrix parab = parabola_fc(c.B(), g).value;
    rep.route_residual = (sector - parab).norm() / std::max(1e-300, parab.norm());
  } else {
    rep.route_residual = std::numeric_limits<double>::infinity();
  }
  rep.passed = rep.geometry_ok && rep.angle_ok && rep.route_residual <= 1e-6;
  return rep;
}

MatrixOperator random_cosine_generator(int n, std::uint64_t seed, double omega0, double max_log10_cond) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.3, 2.0), uy(-omega0, omega0);
  CVector lam(n);
  for (int i = 0; i < n; ++i) {
    const cplx r(ux(rng), uy(rng));
    lam(i) = -(r * r);
  }
  return from_eigenvalues(lam, seed ^ 0x9e3779b97f4a7c15ULL, max_log10_cond);
}

}  // namespace fc
