#include "polycalc/fft.hpp"

#include <cmath>

namespace polycalc::fft {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

void transform_strided(cplx* a, std::size_t n, std::size_t stride,
                       bool inverse) {
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i * stride], a[j * stride]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const cplx wl{std::cos(ang), std::sin(ang)};
    for (std::size_t i = 0; i < n; i += len) {
      cplx w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx& u = a[(i + k) * stride];
        cplx& v = a[(i + k + len / 2) * stride];
        const cplx t = v * w;
        v = u - t;
        u += t;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i * stride] *= inv;
  }
}

}  // namespace

void transform(std::vector<cplx>& data, bool inverse) {
  if (!is_pow2(data.size()))
    throw parameter_error("fft: length must be a power of two");
  transform_strided(data.data(), data.size(), 1, inverse);
}

void transform_line(cplx* base, std::size_t n, std::size_t stride,
                    bool inverse) {
  transform_strided(base, n, stride, inverse);
}

}  // namespace polycalc::fft
