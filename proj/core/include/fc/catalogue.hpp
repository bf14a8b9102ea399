#pragma once

#include <vector>

#include "fc/symbol.hpp"

namespace fc {

/// e^{-isz} on Strip(theta).
Symbol exp_line(double s, double theta);

/// scale * prod_k (p_k - z)^{-m_k}. The region must avoid every pole; Eclass when
/// the total order is at least 2.
Symbol rational(const std::vector<cplx>& poles, const std::vector<int>& orders, cplx scale, Region region);
/// Strip variant with theta defaulting to 0.9 min |Im p_k|.
Symbol rational_strip(const std::vector<cplx>& poles, const std::vector<int>& orders, cplx scale = 1.0,
                      double theta = 0.0);

/// in / (in - z) on Strip(theta), theta < n.
Symbol tau_n(double n, double theta);

/// (pi/w) / cosh(pi z / (2w)) on Strip(theta), theta <= w.
Symbol cosh_pair(double w, double theta = 0.0);

/// (tanh(k(z+a)) - tanh(k(z-a))) / 2 on Strip(theta), theta < pi/(2k).
Symbol indicator_smoothed(double a, double kappa, double theta = 0.0);

/// z^{i c} = e^{i c log z} on Sector(phi).
Symbol imaginary_power(double c, double phi);

/// z / (1 + z)^2 on Sector(phi), phi < pi.
Symbol sector_regulariser(double phi);

/// z / (k + z) on Sector(phi) (or any region avoiding -k).
Symbol sector_ratio(double k, Region region);

/// Five Eclass symbols on Strip(theta) used by the route-equivalence corpus.
std::vector<Symbol> e_class_catalogue(double theta);

}  // namespace fc
