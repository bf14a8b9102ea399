#pragma once

#include <cstdint>
#include <vector>

#include "fc/calculus.hpp"
#include "fc/operator_core.hpp"
#include "fc/symbol.hpp"

namespace fc {

/// Cosine function generated by A, Cos(t) = cos(t sqrt(B)) with B = -A.
class CosineModel {
 public:
  explicit CosineModel(MatrixOperator A, double margin = 0.05);

  const MatrixOperator& generator() const { return a_; }
  const MatrixOperator& B() const { return b_; }
  const SpectralData& spectral_B() const { return sd_; }
  /// max |Im sqrt(lambda)| over sigma(B) (diagonalizable), else a log fit of ||Cos(t)||.
  double cos_type() const { return cos_type_; }
  /// cos_type + margin; the parabola Pi_w strictly containing sigma(B).
  double parabola_omega() const { return parabola_omega_; }

 private:
  MatrixOperator a_;
  MatrixOperator b_;
  SpectralData sd_;
  double cos_type_ = 0.0;
  double parabola_omega_ = 0.0;
};

enum class CosineRoute { Auto, Spectral, Series };

/// Series route uses halving plus the double-angle formula unless `allow_scaling`
/// is false, in which case ||t^2 B|| > 50 throws SeriesDivergence.
CMatrix cosine_at(const CosineModel& c, double t, CosineRoute route = CosineRoute::Auto, bool allow_scaling = true);

struct LaplaceReport {
  std::vector<double> lambdas;
  std::vector<double> residuals;  // relative, ||quad - lambda R(lambda^2, A)|| / ||lambda R||
  std::vector<double> T;
  double max_residual = 0.0;
};

LaplaceReport laplace_generator_check(const CosineModel& c, const std::vector<double>& lambdas);

/// [[0, I], [A, 0]] of size 2n.
CMatrix phase_space(const CMatrix& A);

struct PhaseReport {
  double square_residual = 0.0;  // ||calA^2 - diag(A, A)||, exact in floating point
  double block_residual = 0.0;   // ||exp(s calA)_{11} - Cos(s)||
  double ode_residual = 0.0;     // finite-difference u'' - A u
  double group_law = 0.0;
};

PhaseReport phase_space_check(const CosineModel& c, const std::vector<double>& s_list);

struct DalembertReport {
  double max_scaled_residual = 0.0;
  double even_residual = 0.0;
  double cos0_residual = 0.0;
};

/// Residual scaled by M^2 cosh(w0 t) cosh(w0 s) on an n x n grid of [-t_max, t_max].
DalembertReport dalembert_check(const CosineModel& c, int n = 20, double t_max = 3.0);

struct ParabolaTypeReport {
  double M_fit = 0.0;
  int samples = 0;
  bool certified = false;
};

/// Least M with ||R(mu, B)|| <= M / (sqrt|mu| (|Im sqrt mu| - w)) on mu = (t + iy)^2, |y| > w.
ParabolaTypeReport parabola_type_check(const MatrixOperator& B, double omega, int n_samples = 512);

struct ParabolaResult {
  CMatrix value;        // upper-left block
  double block_agreement = 0.0;
  double off_block = 0.0;
};

/// f(B) = upper-left block of g(i calA), g(z) = f(z^2), via the regularised strip contour.
ParabolaResult parabola_fc(const MatrixOperator& B, const Symbol& f);

/// cos(t sqrt(w)) on Parabola(omega).
Symbol cos_sqrt_symbol(double t, double omega);

struct SectorShiftReport {
  double shift = 0.0;
  double geometry_max_arg = 0.0;  // max |arg| over boundary samples of shift + Pi_w0
  bool geometry_ok = false;
  double spectral_angle = 0.0;    // max |arg| over sigma(B_theta)
  double sector_M = 0.0;          // sampled M(B_theta, w') for w' slightly above theta
  bool angle_ok = false;
  double route_residual = 0.0;    // sector route vs parabola route
  bool passed = false;
};

SectorShiftReport sector_shift_check(const CosineModel& c, double theta, double phi, int geometry_samples = 10000);

/// Seeded A with sqrt(-lambda) = x + iy, x in [0.3, 2], |y| <= w0.
MatrixOperator random_cosine_generator(int n, std::uint64_t seed, double omega0 = 0.5, double max_log10_cond = 1.5);

}  // namespace fc
