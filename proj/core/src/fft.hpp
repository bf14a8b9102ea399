#pragma once

#include <vector>

#include "fc/types.hpp"

namespace fc::detail {

/// In-place DFT, sign -1 computes sum x_j e^{-2 pi i jk/N}, +1 the conjugate kernel.
/// Unnormalised. Planner calls are serialised internally.
void fft(std::vector<cplx>& x, int sign);

/// Linear convolution c_k = sum_j a_j b_{k-j}, size |a| + |b| - 1.
std::vector<cplx> linear_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

std::size_t next_pow2(std::size_t n);

}  // namespace fc::detail
