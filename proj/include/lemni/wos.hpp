#ifndef LEMNI_WOS_HPP
#define LEMNI_WOS_HPP

#include <cstdint>
#include <vector>

#include "lemni/core.hpp"
#include "lemni/parallel.hpp"
#include "lemni/scene.hpp"

namespace lemni {

// Boundary arc given in curve parameter: points gamma(t), t in [t_lo, t_hi)
// (wrapping).  Direction-free membership test.
struct boundary_arc {
  int curve_id = 0;
  double t_lo = 0;
  double t_hi = two_pi;

  bool contains(double t) const {
    double a = wrap_2pi(t_lo), b = wrap_2pi(t_hi), x = wrap_2pi(t);
    if (std::abs(b - a) < 1e-15) return true;  // full circle
    if (a <= b) return x >= a && x < b;
    return x >= a || x < b;
  }
};

struct wos_estimate {
  double value = 0;
  double stderr_ = 0;
  size_t samples = 0;
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct xorshift_rng {
  uint64_t s;
  explicit xorshift_rng(uint64_t seed) : s(splitmix64(seed | 1)) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  double unit() { return double(next() >> 11) * 0x1.0p-53; }
};

// Dense polyline tables plus a conservative distance grid for one face.
struct wos_domain {
  struct curve_table {
    const analytic_curve* curve;
    std::vector<cplx> pts;
    double spacing_max = 0;
    size_t n = 0;
  };
  std::vector<curve_table> curves;
  double spacing_all = 0;  // max polyline spacing over every boundary curve
  // grid over the face bounding box
  double gx0, gy0, cell;
  int gnx, gny;
  std::vector<float> lb;        // conservative distance lower bound per cell
  std::vector<int32_t> near_c;  // nearest curve index per cell
  std::vector<int32_t> near_j;  // nearest sample index per cell

  wos_domain(const scene& s, int face_id) {
    const face& f = s.faces.at(size_t(face_id));
    if (f.unbounded()) fail(errc::invalid_argument, "walk-on-spheres needs a bounded face");
    bbox b{};
    bool first = true;
    for (int cid : f.boundary_curves()) {
      curve_table ct;
      ct.curve = &s.curves[size_t(cid)];
      size_t n = std::max<size_t>(2048, ct.curve->sample_count());
      ct.pts = ct.curve->dense_polyline(n);
      ct.n = n;
      for (size_t j = 0; j < n; ++j) {
        double seg = std::abs(ct.pts[(j + 1) % n] - ct.pts[j]);
        ct.spacing_max = std::max(ct.spacing_max, seg);
      }
      bbox cb = bbox::of(ct.pts);
      if (first) {
        b = cb;
        first = false;
      } else {
        b.expand(cplx(cb.x0, cb.y0));
        b.expand(cplx(cb.x1, cb.y1));
      }
      spacing_all = std::max(spacing_all, ct.spacing_max);
      curves.push_back(std::move(ct));
    }
    b = b.padded(0.02 * b.diag());
    gnx = gny = 192;
    gx0 = b.x0;
    gy0 = b.y0;
    cell = std::max(b.width() / gnx, b.height() / gny);
    lb.assign(size_t(gnx) * size_t(gny), 0.f);
    near_c.assign(lb.size(), 0);
    near_j.assign(lb.size(), 0);
    double diag_half = 0.5 * cell * std::sqrt(2.0);
    parallel_for(size_t(gny), [&](size_t lo, size_t hi) {
      for (size_t gy = lo; gy < hi; ++gy) {
        for (int gx = 0; gx < gnx; ++gx) {
          cplx c(gx0 + (gx + 0.5) * cell, gy0 + (double(gy) + 0.5) * cell);
          double best = inf;
          int bc = 0, bj = 0;
          for (size_t ci = 0; ci < curves.size(); ++ci) {
            const auto& ct = curves[ci];
            for (size_t j = 0; j < ct.n; ++j) {
              double d = std::abs(ct.pts[j] - c);
              if (d < best) {
                best = d;
                bc = int(ci);
                bj = int(j);
              }
            }
          }
          size_t idx = gy * size_t(gnx) + size_t(gx);
          double safe = best - diag_half - spacing_all;
          lb[idx] = float(std::max(safe, 0.0));
          near_c[idx] = bc;
          near_j[idx] = bj;
        }
      }
    });
  }

  size_t cell_of(cplx z) const {
    int gx = int((z.real() - gx0) / cell);
    int gy = int((z.imag() - gy0) / cell);
    gx = std::clamp(gx, 0, gnx - 1);
    gy = std::clamp(gy, 0, gny - 1);
    return size_t(gy) * size_t(gnx) + size_t(gx);
  }

  // exact-ish distance: local polyline search around a hint, Newton refined
  double exact_distance(cplx z, size_t cell_idx, int* curve_out, double* t_out) const {
    double best = inf;
    int bc = 0;
    size_t bj = 0;
    for (size_t ci = 0; ci < curves.size(); ++ci) {
      const auto& ct = curves[ci];
      size_t j0 = (ci == size_t(near_c[cell_idx])) ? size_t(near_j[cell_idx]) : 0;
      // local descent along the polyline from the hint; fall back to a
      // stride scan so distant curves cannot be missed
      size_t stride = std::max<size_t>(1, ct.n / 64);
      size_t cand = j0;
      double dc = std::abs(ct.pts[cand] - z);
      for (size_t j = 0; j < ct.n; j += stride) {
        double d = std::abs(ct.pts[j] - z);
        if (d < dc) {
          dc = d;
          cand = j;
        }
      }
      // walk downhill to the local minimizer
      while (true) {
        size_t l = (cand + ct.n - 1) % ct.n, r = (cand + 1) % ct.n;
        double dl = std::abs(ct.pts[l] - z), dr = std::abs(ct.pts[r] - z);
        if (dl < dc) {
          cand = l;
          dc = dl;
        } else if (dr < dc) {
          cand = r;
          dc = dr;
        } else {
          break;
        }
      }
      if (dc < best) {
        best = dc;
        bc = int(ci);
        bj = cand;
      }
    }
    // Newton refinement on the analytic curve
    const auto& ct = curves[size_t(bc)];
    double t = two_pi * double(bj) / double(ct.n);
    for (int it = 0; it < 3; ++it) {
      cplx g = ct.curve->eval(t), g1 = ct.curve->deriv(t, 1), g2 = ct.curve->deriv(t, 2);
      cplx r = g - z;
      double f1 = (std::conj(r) * g1).real();
      double f2 = (std::conj(g1) * g1).real() + (std::conj(r) * g2).real();
      if (std::abs(f2) < 1e-300) break;
      t -= f1 / f2;
    }
    if (curve_out) *curve_out = bc;
    if (t_out) *t_out = wrap_2pi(t);
    return std::abs(ct.curve->eval(t) - z);
  }
};

}  // namespace detail

struct wos_options {
  double stop_rel = 1e-5;  // termination distance relative to the face scale
  int max_steps = 100000;
  size_t batch = 8192;
};

// Monte Carlo harmonic measure of several arcs of the face boundary seen
// from `pole`, all estimated from one family of walks.  Deterministic for a
// given seed (integer hit counts, order-independent reduction).
inline std::vector<wos_estimate> wos_measure_multi(const scene& s, int face_id, cplx pole,
                                                   const std::vector<boundary_arc>& arcs,
                                                   size_t samples, uint64_t seed,
                                                   wos_options opt = {}) {
  if (s.face_of(pole) != face_id) fail(errc::pole_outside_face, "walk start must be in the face");
  detail::wos_domain dom(s, face_id);
  double scale = 0;
  for (const auto& ct : dom.curves) scale = std::max(scale, ct.curve->length() / two_pi);
  const double stop = opt.stop_rel * scale;

  size_t nbatches = (samples + opt.batch - 1) / opt.batch;
  std::vector<std::vector<uint64_t>> hits(nbatches, std::vector<uint64_t>(arcs.size(), 0));
  std::vector<uint64_t> counted(nbatches, 0);

  parallel_for(nbatches, [&](size_t blo, size_t bhi) {
    for (size_t b = blo; b < bhi; ++b) {
      detail::xorshift_rng rng(seed ^ detail::splitmix64(0x5151bea7ULL + b));
      size_t todo = std::min(opt.batch, samples - b * opt.batch);
      for (size_t w = 0; w < todo; ++w) {
        cplx z = pole;
        int curve_id = -1;
        double t_land = 0;
        for (int step = 0; step < opt.max_steps; ++step) {
          size_t ci = dom.cell_of(z);
          double r = dom.lb[ci];
          if (r <= 4 * stop) {
            int cv;
            double tt;
            double d = dom.exact_distance(z, ci, &cv, &tt);
            if (d < stop) {
              curve_id = int(dom.curves[size_t(cv)].curve - &s.curves[0]);
              t_land = tt;
              break;
            }
            r = 0.999 * d;
          }
          double ang = two_pi * rng.unit();
          z += r * cplx(std::cos(ang), std::sin(ang));
        }
        if (curve_id < 0) continue;  // walk did not terminate; drop it
        ++counted[b];
        for (size_t a = 0; a < arcs.size(); ++a) {
          if (arcs[a].curve_id == curve_id && arcs[a].contains(t_land)) ++hits[b][a];
        }
      }
    }
  });

  uint64_t total = 0;
  std::vector<uint64_t> tot_hits(arcs.size(), 0);
  for (size_t b = 0; b < nbatches; ++b) {
    total += counted[b];
    for (size_t a = 0; a < arcs.size(); ++a) tot_hits[a] += hits[b][a];
  }
  std::vector<wos_estimate> out(arcs.size());
  for (size_t a = 0; a < arcs.size(); ++a) {
    double p = total ? double(tot_hits[a]) / double(total) : 0.0;
    out[a].value = p;
    out[a].samples = size_t(total);
    out[a].stderr_ = total ? std::sqrt(std::max(p * (1 - p), 1e-300) / double(total)) : inf;
  }
  return out;
}

inline wos_estimate wos_measure(const scene& s, int face_id, cplx pole, const boundary_arc& arc,
                                size_t samples, uint64_t seed, wos_options opt = {}) {
  return wos_measure_multi(s, face_id, pole, {arc}, samples, seed, opt)[0];
}

}  // namespace lemni

#endif
