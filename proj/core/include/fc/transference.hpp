#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fc/calculus.hpp"
#include "fc/measures.hpp"
#include "fc/operator_core.hpp"

namespace fc {

/// Uniform grid t_j = j h, |j| <= half, carrying C^n-valued functions.
struct DiscretizedLpSpace {
  double h = 1.0 / 128;
  int half = 4096;
  double p = 2.0;
  int fiber_dim = 1;
  FiberNorm fiber{};

  int size() const { return 2 * half + 1; }
  double S() const { return h * half; }
  double t(int j) const { return (j - half) * h; }
  /// Dyadic step not exceeding S / 2^13 so dyadic atom locations fall on grid points.
  static DiscretizedLpSpace standard(double omega, double p, int fiber_dim = 1);

  /// (h sum ||v_j||^p)^{1/p}; rows are grid points, columns fiber coordinates.
  double norm(const CMatrix& v) const;
};

/// Measure on the lattice h Z: taps[k] is the mass at (k + offset) h. Off-lattice atoms
/// are split linearly between neighbours; densities are resampled.
struct LatticeKernel {
  int offset = 0;
  std::vector<cplx> taps;
  double total_variation() const;
};
LatticeKernel to_lattice(const ExpWeightedMeasure& mu, double h);

struct ConvNorm {
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;   // exact for p = 2 (Plancherel), else the lower end
  bool exact = false;
  std::string method;
};

/// L_mu f = mu * f on the space; zero padded, no wrap-around.
CMatrix apply_convolution(const LatticeKernel& k, const DiscretizedLpSpace& space, const CMatrix& f);

ConvNorm conv_norm(const ExpWeightedMeasure& mu, const DiscretizedLpSpace& space, std::uint64_t seed = 7);

/// max_t |sum_k taps_k e^{-i (k + offset) h t}| over [-pi/h, pi/h], FFT then golden refinement.
double lattice_symbol_sup(const LatticeKernel& k, double h, double* argmax = nullptr);

/// c1 ||phi cosh(w0 .)||_{p'} with c1 = ||cosh(w0 s)/cosh(2ws)||_p.
double transference_constant(double p, double omega0, double omega);

struct TransferenceReport {
  std::string form;  // "strip", "compact", "multiplier", "bounded"
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double slack = 0.0;
  double M = 0.0;
  double omega0 = 0.0;
  double omega = 0.0;
  double p = 2.0;
  double conv_lower = 0.0;
  double conv_upper = 0.0;
  std::string grids;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  bool passed() const { return slack >= 1.0 - 1e-3; }
};

TransferenceReport verify_transference(const GroupModel& g, const ExpWeightedMeasure& mu, double p, double omega,
                                       std::uint64_t seed = 7);
TransferenceReport verify_compact_transference(const GroupModel& g, const ExpWeightedMeasure& mu, double p,
                                               std::uint64_t seed = 7);
TransferenceReport verify_multiplier_form(const GroupModel& g, const ExpWeightedMeasure& mu, double p, double omega,
                                          std::uint64_t seed = 7);
/// M^2 ||L_mu|| with M = sup ||U(s)|| for a bounded group.
TransferenceReport verify_bounded_transference(const GroupModel& g, const ExpWeightedMeasure& mu, double p,
                                               std::uint64_t seed = 7);

/// Discrete truncated Hilbert transform with kernel 1_{eps <= |t| <= S} / t.
CMatrix truncated_hilbert(const DiscretizedLpSpace& space, double eps, const CMatrix& f);
/// l2 operator norm of the discrete truncated Hilbert transform (symbol sup).
double truncated_hilbert_l2_norm(const DiscretizedLpSpace& space, double eps);

struct TransferenceCase {
  std::string name;
  std::string form;               // report form to run: strip, compact, multiplier, bounded
  GroupModel group;
  ExpWeightedMeasure mu;          // measure for the strip and multiplier forms
  ExpWeightedMeasure mu_compact;  // support in [-1, 1]
  double p;
  double omega;
};

/// 4 (form, group, measure) combinations times p in {1, 2, 4}.
std::vector<TransferenceCase> transference_core_cases(std::uint64_t seed);
TransferenceReport run_transference_case(const TransferenceCase& c, std::uint64_t seed);

}  // namespace fc
