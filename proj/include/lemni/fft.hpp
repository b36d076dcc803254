#ifndef LEMNI_FFT_HPP
#define LEMNI_FFT_HPP

#include <algorithm>
#include <cassert>
#include <vector>

#include "lemni/core.hpp"

namespace lemni {

// Iterative radix-2 complex FFT, forward = e^{-i...} convention.
// Sizes are powers of two; the library controls all sample counts, so this
// is all we need and it keeps the core dependency-free.
inline void fft_inplace(std::vector<cplx>& a, bool inverse = false) {
  const size_t n = a.size();
  assert(is_pow2(n));
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = two_pi / double(len) * (inverse ? 1.0 : -1.0);
    cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= double(n);
  }
}

// Trigonometric interpolant of 2pi-periodic samples f_j = f(2pi j / N):
//   f(t) = sum_{k} c_k e^{ikt},  k in [-N/2, N/2).
// Coefficients are stored in FFT order (index k mod N).
inline std::vector<cplx> trig_coeffs(std::vector<cplx> samples) {
  fft_inplace(samples, false);
  for (auto& c : samples) c /= double(samples.size());
  return samples;
}

inline int fft_mode(size_t idx, size_t n) {
  return idx < n / 2 ? int(idx) : int(idx) - int(n);
}

// Zero-pad a coefficient array (FFT order, length n) to length m >= n and
// return the resampled values at the fine grid t_j = 2pi j / m.
inline std::vector<cplx> trig_upsample(const std::vector<cplx>& coeffs, size_t m) {
  const size_t n = coeffs.size();
  assert(is_pow2(n) && is_pow2(m) && m >= n);
  if (m == n) {
    std::vector<cplx> big = coeffs;
    fft_inplace(big, true);
    for (auto& x : big) x *= double(m);
    return big;
  }
  std::vector<cplx> big(m, cplx(0.0, 0.0));
  for (size_t i = 0; i < n; ++i) {
    if (i == n / 2) continue;  // Nyquist handled below
    int k = fft_mode(i, n);
    size_t j = k >= 0 ? size_t(k) : m - size_t(-k);
    big[j] = coeffs[i];
  }
  // Split the Nyquist bin symmetrically (real-signal convention).
  big[n / 2] += coeffs[n / 2] * 0.5;
  big[m - n / 2] += coeffs[n / 2] * 0.5;
  fft_inplace(big, true);
  for (auto& x : big) x *= double(m);
  return big;
}

inline std::vector<double> trig_upsample_real(const std::vector<double>& samples, size_t m) {
  std::vector<cplx> s(samples.begin(), samples.end());
  auto coeffs = trig_coeffs(std::move(s));
  auto fine = trig_upsample(coeffs, m);
  std::vector<double> out(m);
  for (size_t i = 0; i < m; ++i) out[i] = fine[i].real();
  return out;
}

// Derivative of the trigonometric interpolant, sampled on the same grid.
inline std::vector<cplx> trig_derivative(const std::vector<cplx>& samples) {
  auto c = trig_coeffs(samples);
  const size_t n = c.size();
  for (size_t i = 0; i < n; ++i) {
    int k = fft_mode(i, n);
    if (size_t(i) == n / 2) k = 0;  // drop the unmatched Nyquist mode
    c[i] *= cplx(0.0, double(k));
  }
  fft_inplace(c, true);
  for (auto& x : c) x *= double(n);
  return c;
}

// Exact antiderivative of a real trigonometric polynomial given by samples:
//   C(t) = integral_0^t rho(s) ds, evaluated spectrally.
// Strictly increasing whenever rho > 0, which partition inversion relies on.
struct trig_cumulative {
  double mean = 0;                 // c_0
  std::vector<cplx> c;             // FFT-order coefficients of rho
  double eval(double t) const {
    const size_t n = c.size();
    cplx w(std::cos(t), std::sin(t));
    // sum over k != 0 of c_k (e^{ikt} - 1)/(ik)
    cplx acc(0.0, 0.0);
    cplx wk(1.0, 0.0);
    // positive modes
    for (size_t k = 1; k < n / 2; ++k) {
      wk *= w;
      acc += c[k] * (wk - 1.0) / cplx(0.0, double(k));
      acc += c[n - k] * (std::conj(wk) - 1.0) / cplx(0.0, -double(k));
    }
    return mean * t + acc.real();
  }
  double total() const { return mean * two_pi; }

  static trig_cumulative build(const std::vector<double>& rho_samples) {
    std::vector<cplx> s(rho_samples.begin(), rho_samples.end());
    trig_cumulative out;
    out.c = trig_coeffs(std::move(s));
    out.mean = out.c[0].real();
    return out;
  }
};

}  // namespace lemni

#endif
