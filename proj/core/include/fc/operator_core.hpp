#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>

#include "fc/types.hpp"

namespace fc {

class Symbol;

/// Dense square complex matrix with finite entries. Eigenvalues and the spectral
/// norm are computed once at construction.
class MatrixOperator {
 public:
  explicit MatrixOperator(CMatrix entries);

  static MatrixOperator diagonal(const CVector& d);

  int dim() const { return static_cast<int>(a_.rows()); }
  const CMatrix& entries() const { return a_; }
  const CVector& eigenvalues() const { return eig_; }
  double norm() const { return norm2_; }
  double spectral_radius() const;
  double max_abs_imag() const;

  MatrixOperator shifted(cplx r) const;
  MatrixOperator scaled(cplx c) const;

 private:
  CMatrix a_;
  CVector eig_;
  double norm2_ = 0.0;
};

/// V diag(lambda) V^{-1} with unit-norm columns of V. `condition_number` is the
/// 2-norm condition of V, infinite when V is numerically singular.
struct SpectralData {
  CVector eigenvalues;
  CMatrix eigenvectors;
  CMatrix inverse_eigenvectors;
  double condition_number = std::numeric_limits<double>::infinity();

  bool diagonalizable() const { return condition_number < 1e10; }
  CMatrix apply(const std::function<cplx(cplx)>& f) const;
};

SpectralData spectral_data(const MatrixOperator& op);

/// (lambda I - A)^{-1}. Throws SpectrumHit within 1e-12 ||A|| of an eigenvalue.
CMatrix resolvent(const MatrixOperator& op, cplx lambda);

/// Fiber norms on C^n. kP is an arbitrary exponent p in (1, inf) \ {2}.
struct FiberNorm {
  double p = 2.0;
  static FiberNorm l1() { return {1.0}; }
  static FiberNorm l2() { return {2.0}; }
  static FiberNorm linf() { return {std::numeric_limits<double>::infinity()}; }
  bool exact() const { return p == 1.0 || p == 2.0 || std::isinf(p); }
};

double vector_norm(const CVector& v, FiberNorm fn);

/// Operator norm induced by `fn`. Exact for p in {1, 2, inf}; a lower bound from
/// 64 seeded probes refined by a few power steps otherwise.
double op_norm(const CMatrix& m, FiberNorm fn = {}, std::uint64_t seed = 0x5eed);

struct GroupBounds {
  double M = 1.0;
  double omega0 = 0.0;
  double theta_U = 0.0;
  double theta_fit = 0.0;   // slope of log||U(s)|| over the outer half of the grid
  double s_max = 0.0;       // half-width of the grid actually sampled
  int grid_n = 0;           // sampled points per side, the caller's grid included
  bool grid_only = false;   // bound certified only at the sampled points
  double M_at_s = 0.0;      // location of the maximising grid point
};

enum class ExpRoute { Auto, Spectral, Pade };

/// U(s) = exp(-isA). Spectral data and default bounds are computed at construction.
class GroupModel {
 public:
  explicit GroupModel(MatrixOperator generator);
  GroupModel(MatrixOperator generator, GroupBounds bounds);

  const MatrixOperator& generator() const { return a_; }
  const SpectralData& spectral() const { return sd_; }
  const GroupBounds& bounds() const { return bounds_; }
  bool diagonalizable() const { return sd_.diagonalizable(); }

  GroupModel with_bounds(GroupBounds b) const { return GroupModel(a_, sd_, b); }
  /// Generator A + r; the bounds are re-estimated.
  GroupModel shifted(cplx r) const;

 private:
  GroupModel(MatrixOperator a, SpectralData sd, GroupBounds b);
  MatrixOperator a_;
  SpectralData sd_;
  GroupBounds bounds_;
};

CMatrix group_at(const GroupModel& g, double s, ExpRoute route = ExpRoute::Auto);

/// exp(M) through Eigen's scaling-and-squaring Pade approximant.
CMatrix expm(const CMatrix& m);

struct GroupBoundOptions {
  double margin = 0.05;
  std::optional<double> omega0;  // overrides theta_U + margin
  FiberNorm norm{};
  bool extend_to_global = true;  // widen the grid until the cosh bound holds for all s
};

/// Least M on a symmetric grid of 2*grid_n+1 points over [-s_max, s_max] such that
/// ||U(s)|| <= M cosh(omega0 s).
GroupBounds estimate_group_bounds(const GroupModel& g, double s_max, int grid_n, const GroupBoundOptions& opt = {});

/// V diag(f(lambda_i)) V^{-1}; every eigenvalue must lie strictly inside f's region.
CMatrix spectral_fc(const SpectralData& sd, const Symbol& f);

// Seeded corpus generators.

struct CorpusOptions {
  double re_min = -2.0, re_max = 2.0;
  double im_max = 0.5;
  double max_log10_cond = 3.0;  // singular-value spread of the similarity
};

/// V diag(lambda) V^{-1} with random V of controlled conditioning.
MatrixOperator random_diagonalizable(int n, std::uint64_t seed, const CorpusOptions& opt = {});
MatrixOperator random_hermitian(int n, std::uint64_t seed, double scale = 1.0);
MatrixOperator from_eigenvalues(const CVector& lambda, std::uint64_t seed, double max_log10_cond);
CMatrix random_unitary(int n, std::uint64_t seed);

}  // namespace fc
