#include "fc/sectorial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fc/symbol_norms.hpp"

namespace fc {

SectorialData::SectorialData(MatrixOperator A) : a_(std::move(A)), sd_(spectral_data(a_)) {
  for (Eigen::Index i = 0; i < a_.eigenvalues().size(); ++i) {
    const cplx l = a_.eigenvalues()(i);
    angle_ = std::max(angle_, l == cplx(0.0) ? 0.0 : std::abs(std::arg(l)));
  }
}

bool SectorialData::injective() const {
  const double tol = 1e-12 * std::max(1.0, a_.norm());
  for (Eigen::Index i = 0; i < a_.eigenvalues().size(); ++i)
    if (std::abs(a_.eigenvalues()(i)) <= tol) return false;
  return true;
}

double SectorialData::sector_constant(double omega_prime) const {
  if (!(omega_prime > angle_)) fail(ErrorKind::AngleViolation, "sector constant needs w' above the spectral angle");
  const Eigen::Index n = a_.dim();
  const CMatrix I = CMatrix::Identity(n, n);
  double scale = 1.0;
  {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index i = 0; i < a_.eigenvalues().size(); ++i) {
      const double r = std::abs(a_.eigenvalues()(i));
      if (r > 0) lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi > 0) scale = std::sqrt(lo * hi);
  }
  double M = 0.0;
  for (int ia = 0; ia < 128; ++ia) {
    const double a = omega_prime + (kPi - omega_prime) * ia / 127.0;
    for (int ir = 0; ir < 64; ++ir) {
      const double r = scale * std::pow(10.0, -4.0 + 8.0 * ir / 63.0);
      for (double sg : {1.0, -1.0}) {
        const cplx z = std::polar(r, sg * a);
        const CMatrix R = (z * I - a_.entries()).partialPivLu().solve(I);
        M = std::max(M, std::abs(z) * op_norm(R));
      }
    }
  }
  return M;
}

std::vector<std::pair<double, double>> SectorialData::sector_constants(int n_omega) const {
  std::vector<std::pair<double, double>> out;
  for (int k = 1; k <= n_omega; ++k) {
    const double w = angle_ + (kPi - angle_) * k / (n_omega + 1.0);
    out.emplace_back(w, sector_constant(w));
  }
  return out;
}

namespace {

void require_injective_diag(const SectorialData& A) {
  if (!A.injective()) fail(ErrorKind::NotInjective, "operator has 0 in its spectrum");
  if (!A.spectral().diagonalizable()) fail(ErrorKind::NonDiagonalizable, "spectral route needs a diagonalizable operator");
}

}  // namespace

CMatrix matrix_log(const SectorialData& A) {
  require_injective_diag(A);
  return A.spectral().apply([](cplx l) { return std::log(l); });
}

LogCompositionReport log_composition_check(const SectorialData& A, const Symbol& f) {
  require_injective_diag(A);
  if (f.region().kind() != RegionKind::Strip) fail(ErrorKind::InvalidArgument, "log composition needs a strip symbol");
  if (!(A.angle() < f.region().theta()))
    fail(ErrorKind::AngleViolation, "strip width must exceed the spectral angle of A");
  LogCompositionReport rep;
  const MatrixOperator L(matrix_log(A));
  rep.lhs = f.in_E() ? contour_fc_strip(L, f, default_omega_prime(L, f)).value : spectral_fc(spectral_data(L), f);
  const Symbol g = compose_log(f);
  const double wc = 0.5 * (A.angle() + g.region().theta());
  rep.rhs = contour_fc_sector(A.op(), g, wc).value;
  rep.cond = A.spectral().condition_number;
  rep.residual = (rep.lhs - rep.rhs).norm() / std::max(1.0, rep.rhs.norm());
  return rep;
}

CMatrix imaginary_power(const SectorialData& A, double s) {
  require_injective_diag(A);
  return A.spectral().apply([s](cplx l) { return std::exp(cplx(0.0, -s) * std::log(l)); });
}

BipReport bip_group(const SectorialData& A, const std::vector<double>& s_grid) {
  require_injective_diag(A);
  BipReport rep;
  rep.s = s_grid;
  for (double s : s_grid) rep.norms.push_back(op_norm(imaginary_power(A, s)));
  rep.theta_A = A.angle();
  // |lambda^{-is}| = e^{s arg lambda}; fit the slope of log norm against |s| on the outer half.
  double smax = 0.0;
  for (double s : s_grid) smax = std::max(smax, std::abs(s));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double s = std::abs(s_grid[i]);
    if (s < 0.5 * smax) continue;
    const double y = std::log(rep.norms[i]);
    sx += s;
    sy += y;
    sxx += s * s;
    sxy += s * y;
    ++cnt;
  }
  if (cnt >= 2) {
    const double den = cnt * sxx - sx * sx;
    rep.theta_fit = den > 0 ? (cnt * sxy - sx * sy) / den : 0.0;
  }
  rep.omega_sect = A.angle();
  rep.pruss_sohr = rep.omega_sect <= rep.theta_A + 1e-10;
  return rep;
}

HinflogReport hinflog_calculus_check(const SectorialData& A, const std::vector<Symbol>& family, double phi) {
  require_injective_diag(A);
  if (!(phi > A.angle())) fail(ErrorKind::AngleViolation, "phi must exceed the spectral angle");
  HinflogReport rep;
  const double wc = 0.5 * (A.angle() + phi);
  for (const auto& f : family) {
    if (f.region().kind() != RegionKind::Sector) fail(ErrorKind::SectorRequired, "hinflog family needs sector symbols");
    if (!(f.region().theta() >= phi - 1e-15)) fail(ErrorKind::AngleViolation, "symbol sector narrower than phi");
    const CMatrix spec = spectral_fc(A.spectral(), f);
    const CMatrix cont = contour_fc_sector(A.op(), f, wc).value;
    const double nf = hinflog_norm(f).value;
    const double ratio = op_norm(spec) / nf;
    const double diff = (spec - cont).norm() / std::max(1.0, spec.norm());
    rep.ratios.push_back(ratio);
    rep.route_diff.push_back(diff);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.max_route_diff = std::max(rep.max_route_diff, diff);
  }
  return rep;
}

MatrixOperator random_sectorial(int n, std::uint64_t seed, double angle, double max_log10_cond) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(0.5, 4.0), ua(-angle, angle);
  CVector lam(n);
  for (int i = 0; i < n; ++i) lam(i) = std::polar(ur(rng), ua(rng));
  return from_eigenvalues(lam, seed ^ 0x51ed2701ULL, max_log10_cond);
}

}  // namespace fc
