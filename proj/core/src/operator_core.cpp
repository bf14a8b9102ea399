#include "fc/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "fc/symbol.hpp"

namespace fc {

namespace {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double cond2(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace

MatrixOperator::MatrixOperator(CMatrix entries) : a_(std::move(entries)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) fail(ErrorKind::InvalidArgument, "operator must be square and nonempty");
  for (Eigen::Index i = 0; i < a_.size(); ++i)
    if (!is_finite(a_.data()[i])) fail(ErrorKind::NonFiniteSample, "operator entry is not finite");
  Eigen::ComplexEigenSolver<CMatrix> es(a_, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::InvalidArgument, "eigenvalue computation failed");
  eig_ = es.eigenvalues();
  norm2_ = spectral_norm(a_);
}

MatrixOperator MatrixOperator::diagonal(const CVector& d) { return MatrixOperator(d.asDiagonal().toDenseMatrix()); }

double MatrixOperator::spectral_radius() const { return eig_.cwiseAbs().maxCoeff(); }

double MatrixOperator::max_abs_imag() const { return eig_.imag().cwiseAbs().maxCoeff(); }

MatrixOperator MatrixOperator::shifted(cplx r) const {
  CMatrix b = a_;
  b.diagonal().array() += r;
  return MatrixOperator(std::move(b));
}

MatrixOperator MatrixOperator::scaled(cplx c) const { return MatrixOperator(c * a_); }

CMatrix SpectralData::apply(const std::function<cplx(cplx)>& f) const {
  CVector fl(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) fl(i) = f(eigenvalues(i));
  return eigenvectors * fl.asDiagonal() * inverse_eigenvectors;
}

SpectralData spectral_data(const MatrixOperator& op) {
  Eigen::ComplexEigenSolver<CMatrix> es(op.entries(), true);
  SpectralData sd;
  sd.eigenvalues = es.eigenvalues();
  sd.eigenvectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < sd.eigenvectors.cols(); ++j) {
    const double nj = sd.eigenvectors.col(j).norm();
    if (nj > 0) sd.eigenvectors.col(j) /= nj;
  }
  sd.condition_number = cond2(sd.eigenvectors);
  if (std::isfinite(sd.condition_number) && sd.condition_number < 1e14)
    sd.inverse_eigenvectors = sd.eigenvectors.partialPivLu().inverse();
  else
    sd.inverse_eigenvectors = CMatrix::Zero(op.dim(), op.dim());
  return sd;
}

CMatrix resolvent(const MatrixOperator& op, cplx lambda) {
  const double thresh = 1e-12 * op.norm();
  for (Eigen::Index i = 0; i < op.eigenvalues().size(); ++i)
    if (std::abs(lambda - op.eigenvalues()(i)) <= thresh)
      fail(ErrorKind::SpectrumHit, "lambda is numerically an eigenvalue");
  CMatrix m = -op.entries();
  m.diagonal().array() += lambda;
  return m.partialPivLu().solve(CMatrix::Identity(op.dim(), op.dim()));
}

double vector_norm(const CVector& v, FiberNorm fn) {
  if (fn.p == 2.0) return v.norm();
  if (fn.p == 1.0) return v.cwiseAbs().sum();
  if (std::isinf(fn.p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), fn.p);
  return std::pow(s, 1.0 / fn.p);
}

double op_norm(const CMatrix& m, FiberNorm fn, std::uint64_t seed) {
  if (fn.p == 2.0) return spectral_norm(m);
  if (fn.p == 1.0) return m.cwiseAbs().colwise().sum().maxCoeff();
  if (std::isinf(fn.p)) return m.cwiseAbs().rowwise().sum().maxCoeff();
  // Probe lower bound: random starts improved by the dual power iteration.
  const int n = static_cast<int>(m.cols());
  const double p = fn.p;
  const double q = p / (p - 1.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto dual = [](const CVector& v, double r) {
    // Vector attaining the dual norm pairing for the l^r norm.
    CVector d(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double a = std::abs(v(i));
      d(i) = a > 0 ? std::pow(a, r - 1.0) * std::conj(v(i)) / a : cplx(0.0);
    }
    return d;
  };
  double best = 0.0;
  for (int k = 0; k < 64 + n; ++k) {
    CVector x(n);
    if (k < n) {
      x.setZero();
      x(k) = 1.0;
    } else {
      for (int i = 0; i < n; ++i) x(i) = cplx(nd(rng), nd(rng));
    }
    for (int it = 0; it < 6; ++it) {
      const double nx = vector_norm(x, fn);
      if (!(nx > 0)) break;
      x /= nx;
      const CVector y = m * x;
      best = std::max(best, vector_norm(y, fn));
      const CVector z = m.adjoint() * dual(y, p).conjugate();
      CVector xn = dual(z.conjugate(), q).conjugate();
      if (!(xn.norm() > 0)) break;
      x = xn;
    }
  }
  return best;
}

GroupModel::GroupModel(MatrixOperator generator) : a_(std::move(generator)), sd_(spectral_data(a_)) {
  bounds_ = estimate_group_bounds(*this, 10.0, 512);
}

GroupModel::GroupModel(MatrixOperator generator, GroupBounds bounds)
    : a_(std::move(generator)), sd_(spectral_data(a_)), bounds_(bounds) {}

GroupModel::GroupModel(MatrixOperator a, SpectralData sd, GroupBounds b)
    : a_(std::move(a)), sd_(std::move(sd)), bounds_(b) {}

GroupModel GroupModel::shifted(cplx r) const { return GroupModel(a_.shifted(r)); }

CMatrix expm(const CMatrix& m) { return m.exp(); }

CMatrix group_at(const GroupModel& g, double s, ExpRoute route) {
  const int n = g.generator().dim();
  if (s == 0.0) return CMatrix::Identity(n, n);
  if (route == ExpRoute::Auto) route = g.spectral().condition_number < 1e6 ? ExpRoute::Spectral : ExpRoute::Pade;
  if (route == ExpRoute::Spectral) {
    if (!g.diagonalizable()) fail(ErrorKind::NonDiagonalizable, "spectral exponential needs a diagonalizable generator");
    return g.spectral().apply([s](cplx l) { return std::exp(-kI * s * l); });
  }
  return expm(cplx(0.0, -s) * g.generator().entries());
}

GroupBounds estimate_group_bounds(const GroupModel& g, double s_max, int grid_n, const GroupBoundOptions& opt) {
  if (!(s_max > 0)) fail(ErrorKind::InvalidArgument, "s_max must be positive");
  if (grid_n < 16) fail(ErrorKind::InvalidArgument, "grid_n must be at least 16");
  GroupBounds b;
  b.theta_U = g.generator().max_abs_imag();
  b.omega0 = opt.omega0 ? *opt.omega0 : b.theta_U + opt.margin;
  if (b.omega0 < 0) fail(ErrorKind::InvalidArgument, "omega0 must be nonnegative");
  b.grid_only = !g.diagonalizable();
  double S = s_max;
  const double margin = b.omega0 - b.theta_U;
  if (opt.extend_to_global && g.diagonalizable() && margin > 1e-12) {
    // ||U(s)|| <= cond e^{theta|s|} and cosh(w0 s) >= e^{w0|s|}/2, so the ratio is below
    // 1 <= M beyond log(2 cond)/margin.
    S = std::max(S, std::log(2.0 * g.spectral().condition_number) / margin);
  } else if (!g.diagonalizable() || margin <= 1e-12) {
    b.grid_only = true;
  }
  b.s_max = S;
  // The caller's grid k s_max / grid_n is always sampled; beyond s_max the same step is
  // kept up to 8 s_max, then the remaining stretch gets 7 grid_n coarser points.
  const double ds0 = s_max / grid_n;
  std::vector<double> pts;
  const double fine_end = std::min(S, 8.0 * s_max);
  for (int k = 1; k * ds0 <= fine_end * (1 + 1e-12); ++k) pts.push_back(k * ds0);
  if (S > fine_end * (1 + 1e-12)) {
    const double dc = (S - pts.back()) / (7.0 * grid_n);
    const double start = pts.back();
    for (int k = 1; k <= 7 * grid_n; ++k) pts.push_back(start + k * dc);
  }
  b.grid_n = static_cast<int>(pts.size());
  const ExpRoute route = g.spectral().condition_number < 1e6 ? ExpRoute::Spectral : ExpRoute::Pade;
  // Propagate U(s_k) = U(s_{k-1}) U(s_k - s_{k-1}), re-anchored every 64 steps to bound drift.
  double M = 1.0;
  double at = 0.0;
  std::vector<double> logs;
  std::vector<double> ss;
  const Eigen::Index n = g.generator().dim();
  for (int sign : {1, -1}) {
    CMatrix U = CMatrix::Identity(n, n);
    CMatrix step;
    double last_ds = -1.0, prev = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double s = sign * pts[k];
      const double d = pts[k] - prev;
      if ((k + 1) % 64 == 0 || std::abs(d - last_ds) > 1e-12 * pts[k]) {
        U = group_at(g, s, route);
        step = group_at(g, sign * d, route);
        last_ds = d;
      } else {
        U = U * step;
      }
      prev = pts[k];
      const double nu = op_norm(U, opt.norm);
      const double ratio = nu / std::cosh(b.omega0 * s);
      if (ratio > M) {
        M = ratio;
        at = s;
      }
      if (sign == 1 && s >= 0.5 * s_max && s <= s_max) {
        logs.push_back(std::log(std::max(nu, 1e-300)));
        ss.push_back(s);
      }
    }
  }
  b.M = M;
  b.M_at_s = at;
  if (ss.size() >= 2) {
    double sm = 0, lm = 0;
    for (std::size_t i = 0; i < ss.size(); ++i) sm += ss[i], lm += logs[i];
    sm /= ss.size();
    lm /= ss.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < ss.size(); ++i) num += (ss[i] - sm) * (logs[i] - lm), den += (ss[i] - sm) * (ss[i] - sm);
    b.theta_fit = den > 0 ? std::max(0.0, num / den) : 0.0;
  }
  return b;
}

CMatrix spectral_fc(const SpectralData& sd, const Symbol& f) {
  if (!sd.diagonalizable()) fail(ErrorKind::NonDiagonalizable, "spectral oracle needs a diagonalizable operator");
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const cplx l = sd.eigenvalues(i);
    if (!f.region().contains(l) || !(f.region().distance_to_boundary(l) > 0))
      fail(ErrorKind::RegionViolation, "eigenvalue outside the symbol region: " + f.region().describe());
  }
  return sd.apply(f.eval_fn());
}

CMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  // Fix column phases so the distribution does not depend on the QR sign convention.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

MatrixOperator from_eigenvalues(const CVector& lambda, std::uint64_t seed, double max_log10_cond) {
  const int n = static_cast<int>(lambda.size());
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const double spread = ud(rng) * max_log10_cond;
  RVector sv(n);
  for (int i = 0; i < n; ++i) sv(i) = std::pow(10.0, n > 1 ? -spread * i / (n - 1) : 0.0);
  const CMatrix V = random_unitary(n, seed + 1) * sv.cast<cplx>().asDiagonal() * random_unitary(n, seed + 2);
  const CMatrix A = V * lambda.asDiagonal() * V.partialPivLu().inverse();
  return MatrixOperator(A);
}

MatrixOperator random_diagonalizable(int n, std::uint64_t seed, const CorpusOptions& opt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  CVector lambda(n);
  for (int i = 0; i < n; ++i)
    lambda(i) = cplx(opt.re_min + (opt.re_max - opt.re_min) * ud(rng), opt.im_max * (2.0 * ud(rng) - 1.0));
  return from_eigenvalues(lambda, seed, opt.max_log10_cond);
}

MatrixOperator random_hermitian(int n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(nd(rng), nd(rng));
  CMatrix h = 0.5 * (z + z.adjoint());
  h *= scale / std::max(1e-300, spectral_norm(h));
  // Exact Hermitian symmetry after scaling.
  h = 0.5 * (h + h.adjoint()).eval();
  return MatrixOperator(h);
}

}  // namespace fc
