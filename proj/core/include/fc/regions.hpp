#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fc/types.hpp"

namespace fc {

enum class RegionKind { Strip, Sector, DoubleSector, Parabola, Venturi, RealLine };

std::string_view to_string(RegionKind k) noexcept;

/// A boundary curve t -> z(t), t in R. Curves are inset relatively by 1e-6 so
/// every sample lies in the open region.
struct BoundaryCurve {
  std::function<cplx(double)> at;
  bool log_parameter = false;  // t is log|z| (rays)
};

/// Open regions. Strip(theta) = {|Im z| < theta}; Sector(w) = exp(Strip(w));
/// Parabola(w) = {z^2 : z in Strip(w)}; DoubleSector = Sector u -Sector;
/// Venturi(phi, theta) = Strip(theta) u DoubleSector(phi).
class Region {
 public:
  static Region strip(double theta);
  static Region sector(double omega);
  static Region double_sector(double omega);
  static Region parabola(double omega);
  static Region venturi(double phi, double theta);
  static Region real_line();

  RegionKind kind() const { return kind_; }
  /// Strip half-width, sector/parabola angle or parameter, Venturi strip width.
  double theta() const { return a_; }
  /// Venturi sector angle; equals theta() for other kinds.
  double phi() const { return b_; }

  bool contains(cplx z) const;
  /// Lower bound on dist(z, boundary); 0 outside.
  double distance_to_boundary(cplx z) const;
  /// True if every point of `other` lies in this region (parameter comparison).
  bool contains_region(const Region& other) const;

  std::vector<BoundaryCurve> boundary() const;
  std::vector<cplx> interior_samples() const;
  std::string describe() const;

 private:
  Region(RegionKind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  RegionKind kind_;
  double a_;
  double b_;
};

/// Nested boundary grid: t_k = tan(-pi/2 + k pi / n), k = 1..n-1. Doubling n keeps
/// every previous node.
std::vector<double> tan_grid(int n);

/// Principal square root with Re >= 0; branch cut on (-inf, 0].
inline cplx principal_sqrt(cplx z) { return std::sqrt(z); }

}  // namespace fc
