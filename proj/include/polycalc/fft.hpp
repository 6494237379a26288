#pragma once

#include <vector>

#include "polycalc/common.hpp"

namespace polycalc::fft {

/// In-place radix-2 FFT. n must be a power of two. inverse applies the
/// conjugate transform and the 1/n normalization.
void transform(std::vector<cplx>& data, bool inverse);

/// Strided in-place transform of one line of a multi-dimensional array.
void transform_line(cplx* base, std::size_t n, std::size_t stride, bool inverse);

bool is_pow2(std::size_t n);

}  // namespace polycalc::fft
