#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

namespace smn::fft {

using cplx = std::complex<double>;

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace detail {

// Twiddle tables per (n, sign), built once. sign=-1 is the forward transform.
inline const std::vector<cplx>& twiddles(int n, int sign) {
  static thread_local std::map<std::pair<int, int>, std::vector<cplx>> cache;
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> w(static_cast<std::size_t>(n) / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double ang = sign * 2.0 * M_PI * k / n;
    w[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
  }
  return cache.emplace(key, std::move(w)).first->second;
}

}  // namespace detail

// In-place iterative radix-2 Cooley-Tukey. No normalization on either
// direction; callers apply 1/N^dims on the inverse.
inline void fft_pow2(cplx* a, int n, int sign) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto& w = detail::twiddles(n, sign);
  for (int len = 2; len <= n; len <<= 1) {
    const int step = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        const cplx t = a[i + k + len / 2] * w[static_cast<std::size_t>(k * step)];
        a[i + k + len / 2] = a[i + k] - t;
        a[i + k] = a[i + k] + t;
      }
    }
  }
}

// Direct O(N^2) transform for lengths that are not powers of two
// (correctness over speed; the paper's grids are powers of two, the 200x200
// regression grid is the main non-pow2 user).
inline void dft_direct(cplx* a, int n, int sign) {
  std::vector<cplx> out(static_cast<std::size_t>(n));
  std::vector<cplx> roots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = sign * 2.0 * M_PI * k / n;
    roots[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
  }
  for (int k = 0; k < n; ++k) {
    cplx acc{0.0, 0.0};
    for (int m = 0; m < n; ++m) {
      acc += a[m] * roots[static_cast<std::size_t>((static_cast<long long>(k) * m) % n)];
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  for (int k = 0; k < n; ++k) a[k] = out[static_cast<std::size_t>(k)];
}

inline void transform_1d(cplx* a, int n, int sign) {
  if (n == 1) return;
  if (is_power_of_two(n)) {
    fft_pow2(a, n, sign);
  } else {
    dft_direct(a, n, sign);
  }
}

// 2D transform over row-major data (x slowest, stride n in x). Transforms
// rows (y direction) in place, then columns through a scratch buffer.
inline void transform_2d(cplx* a, int n, int sign) {
  for (int ix = 0; ix < n; ++ix) {
    transform_1d(a + static_cast<std::size_t>(ix) * n, n, sign);
  }
  std::vector<cplx> col(static_cast<std::size_t>(n));
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix)
      col[static_cast<std::size_t>(ix)] = a[static_cast<std::size_t>(ix) * n + iy];
    transform_1d(col.data(), n, sign);
    for (int ix = 0; ix < n; ++ix)
      a[static_cast<std::size_t>(ix) * n + iy] = col[static_cast<std::size_t>(ix)];
  }
}

// Signed mode index for FFT bin i of an N-point transform: 0..N/2-1 stay,
// N/2..N-1 wrap to -N/2..-1.
inline int signed_mode(int i, int n) { return i < (n + 1) / 2 ? i : i - n; }

// FFT bin holding signed mode m.
inline int mode_bin(int m, int n) { return m >= 0 ? m : m + n; }

}  // namespace smn::fft
