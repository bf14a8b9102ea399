#pragma once

#include <cstdint>
#include <vector>

#include "fc/calculus.hpp"
#include "fc/operator_core.hpp"
#include "fc/symbol.hpp"

namespace fc {

class SectorialData {
 public:
  explicit SectorialData(MatrixOperator A);

  const MatrixOperator& op() const { return a_; }
  const SpectralData& spectral() const { return sd_; }
  /// max |arg lambda| over the spectrum.
  double angle() const { return angle_; }
  bool injective() const;
  /// Sampled sup ||z R(z, A)|| over arg z in [w', pi] (128 angles x 64 log radii).
  double sector_constant(double omega_prime) const;
  std::vector<std::pair<double, double>> sector_constants(int n_omega = 8) const;

 private:
  MatrixOperator a_;
  SpectralData sd_;
  double angle_ = 0.0;
};

/// V diag(log lambda) V^{-1}, principal branch.
CMatrix matrix_log(const SectorialData& A);

struct LogCompositionReport {
  CMatrix lhs;  // f(log A) by the strip calculus
  CMatrix rhs;  // (f o log)(A) by the sector contour
  double residual = 0.0;
  double cond = 0.0;
};

LogCompositionReport log_composition_check(const SectorialData& A, const Symbol& f);

struct BipReport {
  std::vector<double> s;
  std::vector<double> norms;  // ||A^{-is}||
  double theta_A = 0.0;
  double theta_fit = 0.0;
  double omega_sect = 0.0;
  bool pruss_sohr = false;     // omega_sect <= theta_A + 1e-10
};

/// A^{-is} = V diag(lambda^{-is}) V^{-1}.
CMatrix imaginary_power(const SectorialData& A, double s);
BipReport bip_group(const SectorialData& A, const std::vector<double>& s_grid);

struct HinflogReport {
  std::vector<double> ratios;       // ||f(A)|| / hinflog_norm(f)
  std::vector<double> route_diff;   // spectral vs sector contour, relative
  double max_ratio = 0.0;
  double max_route_diff = 0.0;
};

HinflogReport hinflog_calculus_check(const SectorialData& A, const std::vector<Symbol>& family, double phi);

/// Seeded sectorial matrix with eigenvalues r e^{i a}, r in [0.5, 4], |a| <= angle.
MatrixOperator random_sectorial(int n, std::uint64_t seed, double angle, double max_log10_cond = 1.5);

}  // namespace fc
