#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fc/regions.hpp"
#include "fc/types.hpp"

namespace fc {

using CFun = std::function<cplx(cplx)>;

enum class DecayClass { None, Eclass };

/// Holomorphic function on a region. Immutable; copies share the callables.
class Symbol {
 public:
  Symbol(Region region, CFun eval, std::optional<CFun> deriv, DecayClass decay, std::string description);

  static Symbol constant(Region region, cplx c);

  cplx operator()(cplx z) const { return eval_(z); }
  cplx deriv(cplx z) const;
  /// 32-node Cauchy circle of radius 0.4 dist(z, boundary).
  cplx cauchy_deriv(cplx z) const;
  bool has_deriv() const { return static_cast<bool>(deriv_); }

  const Region& region() const { return region_; }
  DecayClass decay() const { return decay_; }
  bool in_E() const { return decay_ == DecayClass::Eclass; }
  const std::string& description() const { return desc_; }

  const CFun& eval_fn() const { return eval_; }
  const std::optional<CFun>& deriv_fn() const { return deriv_; }

  /// Same function on a smaller region (must be contained in the current one).
  Symbol restricted(Region smaller) const;
  Symbol with_decay(DecayClass d) const;
  Symbol without_derivative() const;

 private:
  Region region_;
  CFun eval_;
  std::optional<CFun> deriv_;
  DecayClass decay_;
  std::string desc_;
};

/// f*g on the intersection region (both regions must be nested). Decay class is
/// Eclass if either factor is Eclass and the other is bounded.
Symbol product(const Symbol& f, const Symbol& g);
Symbol scaled(const Symbol& f, cplx c);
Symbol sum(const Symbol& f, const Symbol& g);
/// z -> f(z + r), region translated along the real axis (strip only).
Symbol shifted(const Symbol& f, double r);
/// z -> f(z^2) on Strip(w) for f on Parabola(w).
Symbol compose_square(const Symbol& f);
/// u -> f(e^u) on Strip(phi) for f on Sector(phi).
Symbol compose_exp(const Symbol& f);
/// z -> f(log z) on Sector(theta) for f on Strip(theta).
Symbol compose_log(const Symbol& f);
/// w -> f(sqrt w) on Parabola(w) for even f on Strip(w).
Symbol compose_sqrt_even(const Symbol& f);

/// Checks |f(z)| |z|^2 stays bounded along rays |Re z| -> inf at three heights.
bool check_E_decay(const CFun& f, double theta);

}  // namespace fc
