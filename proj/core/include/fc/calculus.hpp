#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fc/measures.hpp"
#include "fc/operator_core.hpp"
#include "fc/symbol.hpp"

namespace fc {

struct ContourOptions {
  enum class Mode { Closed, TailBound };
  Mode mode = Mode::Closed;
  double rtol = 1e-10;
  int panels0 = 16;
  int max_panels = 1 << 14;
};

struct ContourResult {
  CMatrix value;
  double R = 0.0;        // truncation abscissa (strip) or outer radius (sector)
  double r_min = 0.0;    // sector inner radius
  int panels = 0;
  double change = 0.0;   // relative difference of the last doubling
  bool converged = false;
};

/// (1/2 pi i) int f(z) (z - A)^{-1} dz over the boundary of Strip(w'). Closed mode
/// joins the lines at |Re z| = R by vertical segments, which makes the truncated
/// contour exact; TailBound mode drops the ends with R from the |z|^-2 tail.
ContourResult contour_fc_strip(const MatrixOperator& A, const Symbol& f, double omega_prime,
                               const ContourOptions& opt = {});

/// Midpoint between the spectral strip and the symbol strip.
double default_omega_prime(const MatrixOperator& A, const Symbol& f);

/// e(A)^{-1} (e f)(A), both factors by contour_fc_strip.
CMatrix regularized_fc(const MatrixOperator& A, const Symbol& f, const Symbol& e, double omega_prime = 0.0,
                       const ContourOptions& opt = {});
/// (lambda - z)^{-2} on Strip(theta).
Symbol resolvent_square_regulariser(cplx lambda, double theta);

struct PhillipsResult {
  CMatrix value;
  double norm_bound = 0.0;  // M ||mu||_{M_omega0}
  double norm = 0.0;        // ||T_mu||
};

/// sum w_i U(s_i) + trapezoid int U(s) d(s) ds.
PhillipsResult phillips_fc(const GroupModel& g, const ExpWeightedMeasure& mu, FiberNorm fn = {});

struct PvTrace {
  std::vector<double> eps;
  std::vector<double> increments;  // ||I_{eps_{k+1}} - I_{eps_k}||
  std::vector<CMatrix> partial;    // I_eps for each eps
  CMatrix limit;                   // Richardson extrapolation of the last two levels
  bool monotone_tail = false;
};

std::vector<double> default_eps_schedule();

/// PV - int_{-1}^{1} g(s) U(s) ds / s as eps -> 0.
PvTrace pv_fc(const GroupModel& g, const BVFunction& gfun, const std::vector<double>& eps = default_eps_schedule());

struct ConvergenceTrace {
  std::vector<int> n;
  std::vector<double> norm_fn;       // ||f_n(A)||
  std::vector<double> probe_error;   // max over probes ||f_n(A)x - f(A)x||
  std::vector<double> hinf1_fn;      // sampled H-infinity-1 norm of f tau_n^2
  double sup_norm = 0.0;
  double final_error = 0.0;
};

/// f_n = f tau_n^2 in E(theta); f_n(A) by contour against f(A) by the spectral oracle.
ConvergenceTrace convergence_lemma_run(const MatrixOperator& A, const Symbol& f, const std::vector<int>& n_list,
                                       int probes = 8, std::uint64_t seed = 1, bool with_hinf1 = false);

/// Cauchy integral over rays arg z = +-w' (log-spaced), closed by arcs at r_min and
/// r_max around the spectrum. `regularise` applies z/(1+z)^2 and inverts it after.
ContourResult contour_fc_sector(const MatrixOperator& B, const Symbol& f, double omega_prime,
                                bool regularise = false, const ContourOptions& opt = {});

struct ShiftNormReport {
  double conv_norm = 0.0;   // weighted-l1 operator norm of the convolution
  double mw = 0.0;          // ||mu||_{M_omega}
  double rel_diff = 0.0;
  int argmax_column = 0;
};

/// Reflected-measure convolution on weighted l1 over h Z plus the atom locations, weight
/// e^{omega|t|}; the norm is the largest basis column over |t_j| <= T.
ShiftNormReport l1_weighted_shift_check(const ExpWeightedMeasure& mu, double omega, double h, double T);

}  // namespace fc
