#ifndef LEMNI_CURVE_HPP
#define LEMNI_CURVE_HPP

#include <algorithm>
#include <vector>

#include "lemni/core.hpp"
#include "lemni/fft.hpp"

namespace lemni {

// Closed analytic Jordan curve given by a finite Fourier series
//   gamma(t) = sum_{k=k_min}^{k_max} c_k e^{ikt},  t in [0, 2pi).
// Derivatives are exact, which the quadrature layers rely on.
class analytic_curve {
 public:
  analytic_curve() = default;

  analytic_curve(std::vector<cplx> coeffs, int k_min, size_t samples = 0)
      : coeffs_(std::move(coeffs)), k_min_(k_min) {
    if (coeffs_.empty()) fail(errc::malformed_document, "curve with no Fourier coefficients");
    size_t n = samples ? samples : default_samples();
    resample(n);
  }

  static analytic_curve circle(cplx center, double radius, int orientation = +1,
                               size_t samples = 0) {
    // c_0 = center, c_{+-1} = radius
    if (orientation >= 0) return analytic_curve({center, cplx(radius, 0.0)}, 0, samples);
    return analytic_curve({cplx(radius, 0.0), center}, -1, samples);
  }

  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + int(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx eval(double t) const {
    cplx w = std::polar(1.0, t);
    cplx wk = std::polar(1.0, k_min_ * t);
    cplx acc(0.0, 0.0);
    for (const cplx& c : coeffs_) {
      acc += c * wk;
      wk *= w;
    }
    return acc;
  }

  cplx deriv(double t, int order = 1) const {
    cplx w = std::polar(1.0, t);
    cplx wk = std::polar(1.0, k_min_ * t);
    cplx acc(0.0, 0.0);
    int k = k_min_;
    for (const cplx& c : coeffs_) {
      cplx f(1.0, 0.0);
      for (int o = 0; o < order; ++o) f *= cplx(0.0, double(k));
      acc += c * f * wk;
      wk *= w;
      ++k;
    }
    return acc;
  }

  size_t sample_count() const { return samples_.size(); }
  double node_t(size_t j) const { return two_pi * double(j) / double(sample_count()); }
  const std::vector<cplx>& samples() const { return samples_; }
  const std::vector<cplx>& d1() const { return d1_; }
  const std::vector<cplx>& d2() const { return d2_; }

  // Re-evaluates the sample tables at n equispaced nodes (n a power of two).
  void resample(size_t n) {
    n = next_pow2(std::max<size_t>(n, 16));
    samples_.resize(n);
    d1_.resize(n);
    d2_.resize(n);
    for (size_t j = 0; j < n; ++j) {
      double t = two_pi * double(j) / double(n);
      samples_[j] = eval(t);
      d1_[j] = deriv(t, 1);
      d2_[j] = deriv(t, 2);
    }
    max_spacing_ = 0;
    length_ = 0;
    for (size_t j = 0; j < n; ++j) {
      double seg = std::abs(samples_[(j + 1) % n] - samples_[j]);
      max_spacing_ = std::max(max_spacing_, seg);
      length_ += std::abs(d1_[j]);  // spectral trapezoid of |gamma'|
    }
    length_ *= two_pi / double(n);
  }

  double max_spacing() const { return max_spacing_; }
  double length() const { return length_; }

  // Reverses the parametrization, t -> -t (coefficients get mirrored).
  analytic_curve reversed() const {
    std::vector<cplx> rc(coeffs_.rbegin(), coeffs_.rend());
    return analytic_curve(std::move(rc), -k_max(), sample_count());
  }

  // Trapezoid winding number about z with adaptive refinement; the residual
  // of the rounded value certifies the quadrature.
  int winding(cplx z, double* residual_out = nullptr) const {
    size_t n = sample_count();
    const size_t n_cap = 1u << 16;
    double resid = inf;
    double w = 0;
    std::vector<cplx> pos, dp;
    const std::vector<cplx>* ppos = &samples_;
    const std::vector<cplx>* pdp = &d1_;
    while (true) {
      cplx acc(0.0, 0.0);
      for (size_t j = 0; j < n; ++j) acc += (*pdp)[j] / ((*ppos)[j] - z);
      w = (acc / cplx(0.0, two_pi)).real() * (two_pi / double(n));
      resid = std::abs(w - std::round(w));
      if (resid < 0.1 || n >= n_cap) break;
      n *= 4;
      pos.resize(n);
      dp.resize(n);
      for (size_t j = 0; j < n; ++j) {
        double t = two_pi * double(j) / double(n);
        pos[j] = eval(t);
        dp[j] = deriv(t, 1);
      }
      ppos = &pos;
      pdp = &dp;
    }
    if (residual_out) *residual_out = resid;
    if (resid >= 0.1)
      fail(errc::on_boundary, "winding number quadrature did not settle; point too close to curve");
    return int(std::lround(w));
  }

  // Distance from z to the sampled polyline (upper bound on curve distance
  // up to the sampling error).
  double polyline_distance(cplx z, double* t_nearest = nullptr) const {
    double best = inf;
    size_t jb = 0;
    size_t n = sample_count();
    for (size_t j = 0; j < n; ++j) {
      double d = std::abs(samples_[j] - z);
      if (d < best) {
        best = d;
        jb = j;
      }
    }
    double tb = node_t(jb);
    // two Newton steps on d/dt |gamma(t)-z|^2 refine the nearest parameter
    for (int it = 0; it < 3; ++it) {
      cplx g = eval(tb), g1 = deriv(tb, 1), g2 = deriv(tb, 2);
      cplx r = g - z;
      double f1 = (std::conj(r) * g1).real();
      double f2 = (std::conj(g1) * g1).real() + (std::conj(r) * g2).real();
      if (std::abs(f2) < 1e-300) break;
      tb -= f1 / f2;
    }
    double d = std::abs(eval(tb) - z);
    if (d < best) {
      best = d;
    } else {
      tb = node_t(jb);
    }
    if (t_nearest) *t_nearest = wrap_2pi(tb);
    return best;
  }

  // A point just inside (winding != 0 side) of the curve, used for
  // orientation probes and face identification.
  cplx interior_probe() const {
    size_t n = sample_count();
    for (double frac : {0.35, 0.18, 0.08, 0.03}) {
      double delta = frac * length_ / two_pi;
      for (size_t j : {size_t(0), n / 4, n / 2, 3 * n / 4, n / 8}) {
        cplx tang = d1_[j] / std::abs(d1_[j]);
        for (double side : {1.0, -1.0}) {
          cplx z = samples_[j] + side * delta * cplx(0.0, 1.0) * tang;
          if (polyline_distance(z) < 0.5 * delta) continue;
          double resid = 0;
          cplx acc(0.0, 0.0);
          for (size_t k = 0; k < n; ++k) acc += d1_[k] / (samples_[k] - z);
          double w = (acc / cplx(0.0, two_pi)).real() * (two_pi / double(n));
          resid = std::abs(w - std::round(w));
          if (resid < 0.05 && std::lround(w) != 0) return z;
        }
      }
    }
    fail(errc::malformed_document, "could not find an interior point; curve may be degenerate");
  }

  // Fits a band-limited curve through equispaced samples (FFT + truncation).
  // Coefficients below rel_tol of the peak are dropped; the caller is
  // responsible for supplying enough points for spectral decay.
  static analytic_curve fit(const std::vector<cplx>& pts, double rel_tol = 1e-12) {
    size_t n = pts.size();
    if (!is_pow2(n)) fail(errc::invalid_argument, "fit requires a power-of-two sample count");
    auto c = trig_coeffs(std::vector<cplx>(pts.begin(), pts.end()));
    double peak = 0;
    for (auto& x : c) peak = std::max(peak, std::abs(x));
    int keep = 0;
    for (size_t i = 0; i < n; ++i) {
      int k = fft_mode(i, n);
      if (k == -int(n) / 2) continue;
      if (std::abs(c[i]) > rel_tol * peak) keep = std::max(keep, std::abs(k));
    }
    keep = std::max(keep, 1);
    std::vector<cplx> coeffs(2 * keep + 1, cplx(0.0, 0.0));
    for (size_t i = 0; i < n; ++i) {
      int k = fft_mode(i, n);
      if (std::abs(k) <= keep && k != -int(n) / 2) coeffs[size_t(k + keep)] = c[i];
    }
    return analytic_curve(std::move(coeffs), -keep, n);
  }

  // Spectral tail mass relative to the peak; small values certify that the
  // sample count resolves the curve.
  double tail_indicator() const {
    size_t n = sample_count();
    std::vector<cplx> s = samples_;
    auto c = trig_coeffs(std::move(s));
    double peak = 0, tail = 0;
    for (size_t i = 0; i < n; ++i) {
      int k = fft_mode(i, n);
      peak = std::max(peak, std::abs(c[i]));
      if (std::abs(k) >= int(n) / 4) tail = std::max(tail, std::abs(c[i]));
    }
    return peak > 0 ? tail / peak : 0.0;
  }

  std::vector<cplx> dense_polyline(size_t n) const {
    std::vector<cplx> out(n);
    for (size_t j = 0; j < n; ++j) out[j] = eval(two_pi * double(j) / double(n));
    return out;
  }

 private:
  size_t default_samples() const {
    size_t modes = size_t(std::max(std::abs(k_min()), std::abs(k_max())));
    return std::max<size_t>(256, next_pow2(8 * modes));
  }

  std::vector<cplx> coeffs_;
  int k_min_ = 0;
  std::vector<cplx> samples_, d1_, d2_;
  double max_spacing_ = 0;
  double length_ = 0;
};

}  // namespace lemni

#endif
