#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fc/symbol.hpp"
#include "fc/types.hpp"

namespace fc {

struct Atom {
  double s = 0.0;
  cplx w{1.0, 0.0};
};

/// Samples of a density at start + k h, k = 0..size-1. Integrated with the
/// trapezoid rule; zero outside the sampled interval.
struct DensityGrid {
  double start = 0.0;
  double h = 0.0;
  std::vector<cplx> values;

  bool empty() const { return values.empty(); }
  std::size_t size() const { return values.size(); }
  double at_index(std::size_t k) const { return start + static_cast<double>(k) * h; }
  double end() const { return values.empty() ? start : at_index(values.size() - 1); }
  double weight(std::size_t k) const { return (k == 0 || k + 1 == values.size()) ? 0.5 * h : h; }
  /// Linear interpolation; zero outside [start, end].
  cplx interpolate(double s) const;
};

/// Finite complex measure: atoms plus a sum of gridded density components, with a
/// declared exponential weight omega.
class ExpWeightedMeasure {
 public:
  ExpWeightedMeasure() = default;
  ExpWeightedMeasure(std::vector<Atom> atoms, std::vector<DensityGrid> densities, double omega);

  static ExpWeightedMeasure dirac(double s0, cplx w = 1.0, double omega = 50.0);

  struct GridOptions {
    double h = 1.0 / 64.0;
    double S0 = 0.0;        // initial half-width; 0 means 30/omega (30 when omega = 0)
    double tail_tol = 1e-10;
    int max_doublings = 6;
  };
  /// Samples d on a symmetric grid, doubling S until e^{omega S}|d(+-S)| <= tail_tol.
  static ExpWeightedMeasure from_density(const std::function<cplx(double)>& d, double omega, GridOptions opt);
  static ExpWeightedMeasure from_density(const std::function<cplx(double)>& d, double omega) {
    return from_density(d, omega, GridOptions{});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityGrid>& densities() const { return dens_; }
  double omega() const { return omega_; }
  /// Density nonnegligible at a grid end under the declared weight.
  bool tail_flag() const { return tail_flag_; }
  double support_min() const;
  double support_max() const;
  bool has_density() const;

  ExpWeightedMeasure with_omega(double omega) const;
  ExpWeightedMeasure operator+(const ExpWeightedMeasure& o) const;
  ExpWeightedMeasure scaled(cplx c) const;
  /// Density values with |.| below `tol` relative to the max are trimmed from the ends.
  ExpWeightedMeasure trimmed(double tol = 0.0) const;

 private:
  void update_tail_flag();
  std::vector<Atom> atoms_;
  std::vector<DensityGrid> dens_;
  double omega_ = 0.0;
  bool tail_flag_ = false;
};

/// sum |w_i| e^{omega |s_i|} + trapezoid integral of |d| e^{omega |s|}.
double mw_norm(const ExpWeightedMeasure& mu, double omega);

/// mu^(z) = int e^{-isz} mu(ds), |Im z| <= mu.omega.
cplx fourier_stieltjes(const ExpWeightedMeasure& mu, cplx z);

/// mu * nu; omega of the result is the smaller of the two. Density grids must share h
/// (other grids are resampled by linear interpolation).
ExpWeightedMeasure convolve(const ExpWeightedMeasure& mu, const ExpWeightedMeasure& nu);

/// cosh(omega s) mu(ds); declared weight drops by omega.
ExpWeightedMeasure cosh_weight(const ExpWeightedMeasure& mu, double omega);
/// e^{c s} mu(ds) for real c; declared weight drops by |c|.
ExpWeightedMeasure tilt(const ExpWeightedMeasure& mu, double c);
/// mu(-ds).
ExpWeightedMeasure reflect(const ExpWeightedMeasure& mu);

struct InverseFourierOptions {
  double alpha = 0.0;        // declared weight; 0 means 2/3 of the strip width
  double out_h = 1.0 / 1024; // output grid step (must divide the FFT step pattern)
  int log2_n = 20;           // FFT length
  double T = 0.0;            // half-width of the t window; 0 picks t step 0.025
  double tail_tol = 1e-12;
};

/// Density g(s) = (1/2pi) int f(t) e^{ist} dt of an Eclass symbol, computed by FFT along
/// the shifted lines Im t = +-beta, beta = (alpha + theta)/2.
ExpWeightedMeasure inverse_fourier_symbol(const Symbol& f, const InverseFourierOptions& opt = {});

// Bounded-variation profiles on [-1, 1].

struct BVPiece {
  double breakpoint = -1.0;  // value holds on [breakpoint, next breakpoint)
  cplx value{0.0, 0.0};
};

/// g = piecewise constant part + absolutely continuous part (uniform grid on [-1, 1],
/// linear interpolation). Right-continuous; zero outside [-1, 1].
class BVFunction {
 public:
  BVFunction(std::vector<BVPiece> pieces, std::vector<cplx> ac_values = {});

  /// Even step profile: levels[k] on |t| in [edges[k], edges[k+1]), edges[0] = 0.
  static BVFunction even_steps(const std::vector<double>& edges, const std::vector<cplx>& levels);
  static BVFunction constant(cplx c);
  static BVFunction from_function(const std::function<cplx(double)>& g, int n);

  cplx operator()(double t) const;
  const std::vector<BVPiece>& pieces() const { return pieces_; }
  const std::vector<cplx>& ac_values() const { return ac_; }
  double ac_h() const { return ac_.size() > 1 ? 2.0 / static_cast<double>(ac_.size() - 1) : 0.0; }
  bool even_flag() const { return even_; }
  /// Breakpoints and AC nodes in (0, 1), sorted, with 0 and 1 added.
  std::vector<double> nodes_half() const;
  /// Var_{[0,1]} as jump sum plus integral of |g'|.
  double variation_half() const;
  /// |g(1-)|.
  double end_value() const;
  double l1_norm() const;

 private:
  bool check_even() const;
  std::vector<BVPiece> pieces_;
  std::vector<cplx> ac_;
  bool even_ = false;
};

/// f(z) = -2i int_0^1 sin(sz)/s g(s) ds, entire; derivative -i g^(z) with
/// g^(z) = 2 int_0^1 cos(sz) g(s) ds. Region Strip(theta).
Symbol pv_symbol(const BVFunction& g, double theta = 1.0);
/// g^(z) = 2 int_0^1 cos(sz) g(s) ds.
cplx bv_cos_transform(const BVFunction& g, cplx z);

struct BVBound {
  double bound = 0.0;
  double c_prime = 0.0;       // sampled sup of |int_0^1 sin(sz)/s ds| on Strip(theta)
  double variation = 0.0;
  double end_value = 0.0;
  double sampled_norm = 0.0;  // hinf1_norm of pv_symbol(g)
  bool dominates = false;
};

BVBound bv_hinf1_bound(const BVFunction& g, double theta, int grid_n = 1024);

/// phi(t) = (2a/pi) cos(pi w/(2a)) cosh(wt) / (cos(pi w/a) + cosh(2wt)), a > w > 0.
std::function<double(double)> transference_phi(double omega, double alpha);

/// int e^{-isz} / cosh(omega s) ds for |Im z| < omega by Gauss-Legendre on [0, L],
/// L chosen from the decay rate omega - |Im z|.
cplx sech_fourier_quadrature(double omega, cplx z);

/// (phi * sech(alpha .))(s) by quadrature.
double phi_sech_convolution(double omega, double alpha, double s);

}  // namespace fc
