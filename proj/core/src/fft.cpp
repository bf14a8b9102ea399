#include "fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace fc::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<cplx>& x, int sign) {
  if (x.empty()) return;
  auto* data = reinterpret_cast<fftw_complex*>(x.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(x.size()), data, data, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<cplx> linear_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  if (a.size() < 32 || b.size() < 32) {
    std::vector<cplx> c(n, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  }
  const std::size_t m = next_pow2(n);
  std::vector<cplx> fa(m, 0.0), fb(m, 0.0);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft(fa, -1);
  fft(fb, -1);
  for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
  fft(fa, +1);
  fa.resize(n);
  for (auto& v : fa) v /= static_cast<double>(m);
  return fa;
}

}  // namespace fc::detail
