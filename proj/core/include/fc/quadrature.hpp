#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace fc {

/// Gauss-Legendre rule on [-1, 1]. Rules are cached per order and shared read-only.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels. T must support
/// T + T and double * T; `zero` is the additive identity.
template <class T, class F>
T composite_gl(F&& f, double a, double b, int panels, int order, T zero) {
  const GaussRule& r = gauss_legendre(order);
  const double w = (b - a) / panels;
  T acc = zero;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * w;
    const double mid = lo + 0.5 * w;
    T part = zero;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) part = part + r.weights[j] * f(mid + 0.5 * w * r.nodes[j]);
    acc = acc + (0.5 * w) * part;
  }
  return acc;
}

struct DoublingResult {
  double change = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Doubles the panel count from `panels0` until the relative change is below `rtol`
/// (measured with `norm`) or `max_panels` is reached.
template <class T, class F, class N>
T doubling_gl(F&& f, double a, double b, int panels0, int max_panels, double rtol, T zero, N&& norm,
              DoublingResult* info = nullptr, int order = 16) {
  int n = std::max(1, panels0);
  T prev = composite_gl<T>(f, a, b, n, order, zero);
  DoublingResult res;
  while (true) {
    n *= 2;
    T cur = composite_gl<T>(f, a, b, n, order, zero);
    const double scale = std::max(norm(cur), 1e-300);
    res.change = norm(cur - prev) / scale;
    res.panels = n;
    prev = cur;
    if (res.change < rtol) {
      res.converged = true;
      break;
    }
    if (n >= max_panels) break;
  }
  if (info) *info = res;
  return prev;
}

/// Scalar integral over [a, b] with a fixed high-order composite rule.
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64, int order = 16);

/// Integral over [0, inf) of a function decaying at least exponentially, split into
/// dyadic panels [2^k, 2^{k+1}] until the panel contribution is below `tol` relative.
double integrate_halfline(const std::function<double(double)>& f, double tol = 1e-15, int order = 32);

}  // namespace fc
