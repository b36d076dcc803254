#ifndef LEMNI_LEVELSET_HPP
#define LEMNI_LEVELSET_HPP

#include <functional>
#include <map>
#include <vector>

#include "lemni/core.hpp"
#include "lemni/parallel.hpp"

namespace lemni {

using field_fn = std::function<double(cplx)>;
using grad_fn = std::function<cplx(cplx)>;

// Scalar samples of a field over a rectangle; non-finite values (poles) are
// masked and their cells skipped during extraction.
struct scalar_grid {
  double x0 = 0, y0 = 0, dx = 1, dy = 1;
  int nx = 0, ny = 0;
  std::vector<double> v;  // row-major, v[j*nx + i] at (x0 + i dx, y0 + j dy)

  double at(int i, int j) const { return v[size_t(j) * size_t(nx) + size_t(i)]; }
  cplx point(double i, double j) const { return cplx(x0 + i * dx, y0 + j * dy); }

  static scalar_grid sample(const bbox& b, int nx, int ny, const field_fn& f) {
    scalar_grid g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = b.x0;
    g.y0 = b.y0;
    g.dx = b.width() / double(nx - 1);
    g.dy = b.height() / double(ny - 1);
    g.v.resize(size_t(nx) * size_t(ny));
    parallel_for(size_t(ny), [&](size_t lo, size_t hi) {
      for (size_t j = lo; j < hi; ++j)
        for (int i = 0; i < nx; ++i)
          g.v[j * size_t(nx) + size_t(i)] = f(g.point(double(i), double(j)));
    });
    return g;
  }

  double finite_min() const {
    double m = inf;
    for (double x : v)
      if (std::isfinite(x)) m = std::min(m, x);
    return m;
  }
  double finite_max() const {
    double m = -inf;
    for (double x : v)
      if (std::isfinite(x)) m = std::max(m, x);
    return m;
  }
};

// Extracted or traced level set: closed polylines plus their containment
// forest (parent/depth via point-in-polygon tests).
struct level_set {
  double level = 0;
  struct component {
    std::vector<cplx> pts;
    bool closed = true;
  };
  std::vector<component> comps;
  std::vector<int> parent;  // containing component index or -1
  std::vector<int> depth;

  size_t component_count() const { return comps.size(); }
  bool all_closed() const {
    for (const auto& c : comps)
      if (!c.closed) return false;
    return true;
  }
};

namespace detail {

// even-odd crossing test against a closed polyline
inline bool point_in_polygon(const std::vector<cplx>& poly, cplx z) {
  bool in = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double yi = poly[i].imag(), yj = poly[j].imag();
    double xi = poly[i].real(), xj = poly[j].real();
    if ((yi > z.imag()) != (yj > z.imag())) {
      double xc = xi + (z.imag() - yi) / (yj - yi) * (xj - xi);
      if (z.real() < xc) in = !in;
    }
  }
  return in;
}

inline void build_forest(level_set& ls) {
  size_t n = ls.comps.size();
  ls.parent.assign(n, -1);
  ls.depth.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (ls.comps[i].pts.empty()) continue;
    cplx probe = ls.comps[i].pts[0];
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !ls.comps[j].closed) continue;
      if (point_in_polygon(ls.comps[j].pts, probe)) ls.depth[i] += 1;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (ls.comps[i].pts.empty()) continue;
    cplx probe = ls.comps[i].pts[0];
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !ls.comps[j].closed) continue;
      if (ls.depth[j] == ls.depth[i] - 1 && point_in_polygon(ls.comps[j].pts, probe))
        ls.parent[i] = int(j);
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// marching squares

// Linear-interpolation marching squares with the bilinear-center rule on
// saddle cells.  Components are chained from cell segments; chains meeting
// the grid edge (or a masked cell) stay open and are flagged.
inline level_set extract_level(const scalar_grid& g, double c) {
  if (c <= g.finite_min() || c >= g.finite_max())
    fail(errc::level_out_of_range, "level outside the sampled value range");
  // perturb the level if it collides with a grid value exactly
  double eps = 1e-12 * (std::abs(c) + 1.0);
  bool collide = false;
  for (double x : g.v)
    if (x == c) collide = true;
  if (collide) c += eps;

  // edge key: horizontal edge (i,j)-(i+1,j) -> 2*(j*nx+i), vertical
  // (i,j)-(i,j+1) -> 2*(j*nx+i)+1
  auto hkey = [&](int i, int j) { return 2 * (int64_t(j) * g.nx + i); };
  auto vkey = [&](int i, int j) { return 2 * (int64_t(j) * g.nx + i) + 1; };

  std::map<int64_t, cplx> cut;  // edge -> crossing point
  auto cross_h = [&](int i, int j) {
    double a = g.at(i, j), b = g.at(i + 1, j);
    double t = (c - a) / (b - a);
    return g.point(double(i) + t, double(j));
  };
  auto cross_v = [&](int i, int j) {
    double a = g.at(i, j), b = g.at(i, j + 1);
    double t = (c - a) / (b - a);
    return g.point(double(i), double(j) + t);
  };

  // adjacency: edge -> up to two partner edges (same-cell segments)
  std::multimap<int64_t, int64_t> adj;
  auto link = [&](int64_t a, int64_t b) {
    adj.emplace(a, b);
    adj.emplace(b, a);
  };

  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      double f00 = g.at(i, j), f10 = g.at(i + 1, j), f01 = g.at(i, j + 1),
             f11 = g.at(i + 1, j + 1);
      if (!std::isfinite(f00) || !std::isfinite(f10) || !std::isfinite(f01) ||
          !std::isfinite(f11))
        continue;
      int idx = (f00 > c ? 1 : 0) | (f10 > c ? 2 : 0) | (f01 > c ? 4 : 0) | (f11 > c ? 8 : 0);
      if (idx == 0 || idx == 15) continue;
      int64_t bottom = hkey(i, j), top = hkey(i, j + 1), left = vkey(i, j),
              right = vkey(i + 1, j);
      auto ensure = [&](int64_t k) {
        if (cut.count(k)) return;
        if (k == bottom) cut[k] = cross_h(i, j);
        else if (k == top) cut[k] = cross_h(i, j + 1);
        else if (k == left) cut[k] = cross_v(i, j);
        else cut[k] = cross_v(i + 1, j);
      };
      auto seg = [&](int64_t a, int64_t b) {
        ensure(a);
        ensure(b);
        link(a, b);
      };
      switch (idx) {
        case 1: case 14: seg(left, bottom); break;   // corner 00
        case 2: case 13: seg(bottom, right); break;  // corner 10
        case 3: case 12: seg(left, right); break;    // bottom row
        case 4: case 11: seg(left, top); break;      // corner 01
        case 5: case 10: seg(bottom, top); break;    // left/right column
        case 7: case 8: seg(top, right); break;      // corner 11
        case 6: case 9: {
          // diagonal saddle: resolve by the bilinear value at the center
          double center = 0.25 * (f00 + f10 + f01 + f11);
          bool center_high = center > c;
          bool diag00 = (idx == 9);  // high corners on the 00-11 diagonal
          if (center_high == diag00) {
            // high region connects along 00-11: lines hug corners 10 and 01
            seg(bottom, right);
            seg(left, top);
          } else {
            // high region connects along 10-01: lines hug corners 00 and 11
            seg(left, bottom);
            seg(top, right);
          }
          break;
        }
        default: break;
      }
    }
  }

  // chain segments into polylines; every edge carries at most two segments,
  // so a visited-set walk is unambiguous
  level_set ls;
  ls.level = c;
  std::map<int64_t, bool> visited;
  for (const auto& [k, v] : adj) visited.emplace(k, false);
  auto degree = [&](int64_t k) { return int(adj.count(k)); };

  // open chains first (endpoints have degree 1), then loops
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [start, v0] : adj) {
      if (visited[start]) continue;
      if (pass == 0 && degree(start) != 1) continue;
      level_set::component comp;
      int64_t cur = start;
      visited[cur] = true;
      comp.pts.push_back(cut[cur]);
      while (true) {
        int64_t nxt = -1;
        auto range = adj.equal_range(cur);
        for (auto it = range.first; it != range.second; ++it) {
          if (!visited[it->second]) {
            nxt = it->second;
            break;
          }
        }
        if (nxt < 0) break;
        visited[nxt] = true;
        comp.pts.push_back(cut[nxt]);
        cur = nxt;
      }
      bool closed = false;
      auto range = adj.equal_range(cur);
      for (auto it = range.first; it != range.second; ++it)
        if (it->second == start && comp.pts.size() > 2) closed = true;
      comp.closed = closed;
      if (comp.pts.size() >= 2) ls.comps.push_back(std::move(comp));
    }
  }
  detail::build_forest(ls);
  return ls;
}

// ---------------------------------------------------------------------------
// predictor-corrector tracing

struct trace_options {
  double step = 0.01;
  double tol = 1e-10;
  double grad_min = 1e-8;
  size_t max_steps = 2000000;
};

namespace detail {

inline cplx newton_project(const field_fn& f, const grad_fn& g, cplx z, double c, double tol,
                           double grad_min) {
  for (int it = 0; it < 60; ++it) {
    double val = f(z) - c;
    if (std::abs(val) < tol) return z;
    cplx gr = g(z);
    double n2 = std::norm(gr);
    if (std::sqrt(n2) < grad_min)
      fail(errc::gradient_too_small, "gradient vanished during level projection");
    z -= val * gr / n2;
  }
  if (std::abs(f(z) - c) >= tol)
    fail(errc::failed_to_close, "Newton projection did not meet the residual tolerance");
  return z;
}

}  // namespace detail

// High-accuracy tracing of {field = c}: tangent predictor, Newton corrector,
// closure when the march returns to its start.  Interior of the level set
// (descending side of the field) stays on the left.
inline level_set trace_level(const field_fn& f, const grad_fn& g,
                             const std::vector<cplx>& seeds, double c, trace_options opt = {}) {
  level_set ls;
  ls.level = c;
  for (cplx seed : seeds) {
    cplx z0 = detail::newton_project(f, g, seed, c, opt.tol, opt.grad_min);
    // skip seeds that landed on an already-traced component
    bool dup = false;
    for (const auto& comp : ls.comps) {
      for (cplx p : comp.pts)
        if (std::abs(p - z0) < 2 * opt.step) dup = true;
      if (dup) break;
    }
    if (dup) continue;

    level_set::component comp;
    comp.pts.push_back(z0);
    cplx z = z0;
    bool closed = false;
    for (size_t k = 0; k < opt.max_steps; ++k) {
      cplx gr = g(z);
      double gn = std::abs(gr);
      if (gn < opt.grad_min)
        fail(errc::gradient_too_small, "gradient too small along the level curve");
      cplx tang = cplx(0, 1) * gr / gn;  // descending side on the left
      // midpoint predictor with step halving when the corrector struggles
      double h = opt.step;
      cplx z1;
      for (int half = 0;; ++half) {
        cplx zm = z + 0.5 * h * tang;
        cplx gm = g(zm);
        double gmn = std::abs(gm);
        if (gmn < opt.grad_min)
          fail(errc::gradient_too_small, "gradient too small at midpoint");
        cplx zp = z + h * (cplx(0, 1) * gm / gmn);
        try {
          z1 = detail::newton_project(f, g, zp, c, opt.tol, opt.grad_min);
          break;
        } catch (const error& e) {
          if (e.code() == errc::gradient_too_small || half >= 8) throw;
          h *= 0.5;
        }
      }
      if (k > 3 && std::abs(z1 - z0) < 1.2 * opt.step) {
        closed = true;
        break;
      }
      comp.pts.push_back(z1);
      z = z1;
    }
    if (!closed)
      fail(errc::failed_to_close, "trace exceeded the step budget without closing");
    comp.closed = true;
    ls.comps.push_back(std::move(comp));
  }
  detail::build_forest(ls);
  return ls;
}

}  // namespace lemni

#endif
