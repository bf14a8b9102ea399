#pragma once

#include <string>

#include "fc/symbol.hpp"

namespace fc {

struct SampleGrid {
  int n = 4096;           // tan-grid resolution per boundary curve
  bool interior = true;   // add the region's fixed interior spot checks
};

struct NormReport {
  double value = 0.0;
  std::string grid_spec;
  cplx attained_at{0.0, 0.0};
  bool lower_bound = true;
  bool divergent = false;  // sampled sup still growing at the grid edge
};

NormReport hinf_norm(const Symbol& f, const SampleGrid& grid = {});
/// sup |f| + |z f'| on a Strip or Parabola region.
NormReport hinf1_norm(const Symbol& f, const SampleGrid& grid = {});
/// sup |f| + |z log z f'| on a Sector.
NormReport hinflog_norm(const Symbol& f, const SampleGrid& grid = {});
/// Parabola H-infinity-1 norm via the strip: sup |f(z^2)| + |z d/dz f(z^2)| / 2.
NormReport parabola_hinf1_via_strip(const Symbol& f_on_parabola, const SampleGrid& grid = {});

struct MikhlinGrid {
  double t_min = 1e-8;
  double t_max = 1e8;
  int per_decade = 64;
};

/// c_m = sup |m(t)| + sup |t m'(t)| over +-[t_min, t_max], log-spaced.
NormReport mikhlin_constant(const Symbol& m, const MikhlinGrid& grid = {});

struct EmbeddingReport {
  double ratio = 0.0;
  NormReport inner_zf;
  NormReport outer_f;
};

/// sup_{inner} |z f'(z)| / sup_{outer} |f|, a per-instance lower bound on the
/// embedding constant.
EmbeddingReport venturi_embedding_check(const Symbol& f, const Region& inner, const SampleGrid& grid = {});

struct TailReport {
  bool bounded = false;
  bool tail_unbounded = false;
  double tail_plus = 0.0;   // sampled sup |f - a||z| on Re z -> +inf
  double tail_minus = 0.0;  // sampled sup |f - b||z| on Re z -> -inf
  NormReport hinf1;         // on Strip(theta), only if bounded
};

TailReport tail_class_check(const Symbol& f, cplx a, cplx b, double theta, const SampleGrid& grid = {});

}  // namespace fc
