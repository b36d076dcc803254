#ifndef LEMNI_JULIA_HPP
#define LEMNI_JULIA_HPP

#include <cstdint>
#include <fstream>
#include <vector>

#include "lemni/core.hpp"
#include "lemni/hausdorff.hpp"
#include "lemni/parallel.hpp"
#include "lemni/rational.hpp"
#include "lemni/scene.hpp"

namespace lemni {

// Attracting fixed point of s by plain iteration, with a contraction
// surrogate check at the limit.
inline cplx find_finite_attractor(const rational_function& s, cplx start, double tol = 1e-9,
                                  int max_iter = 20000) {
  cplx z = start;
  for (int it = 0; it < max_iter; ++it) {
    cplx zn = s.eval(z);
    if (!std::isfinite(zn.real()) || !std::isfinite(zn.imag()) || std::abs(zn) > 1e12)
      fail(errc::no_convergence, "iterates escape; raise the power n");
    if (std::abs(zn - z) < tol) {
      // |s'| < 1 surrogate at the fixed point
      double h = 1e-6;
      double deriv = std::abs(s.eval(zn + h) - s.eval(zn)) / h;
      if (deriv >= 1.0 - 1e-9)
        fail(errc::no_convergence, "fixed point is not attracting (|s'| >= 1)");
      return zn;
    }
    z = zn;
  }
  fail(errc::no_convergence, "no attracting fixed point found; raise the power n");
}

// Escape/attraction classification of a pixel grid.  Sample points are
// corner-aligned (x = x0 + i dx with dx = width/(nx-1)) so that doubling the
// resolution keeps every coarse sample on the fine lattice.
struct basin_image {
  enum label : uint8_t { finite = 0, infinity = 1, unresolved = 2 };
  double x0 = 0, y0 = 0, dx = 1, dy = 1;
  int nx = 0, ny = 0;
  std::vector<uint8_t> labels;
  std::vector<uint16_t> iters;
  std::vector<uint8_t> boundary;  // 1 where a 4-neighbor label differs
  cplx attractor{0, 0};
  size_t unresolved_count = 0;

  cplx point(int i, int j) const { return cplx(x0 + i * dx, y0 + j * dy); }
  double pixel_diag() const { return std::hypot(dx, dy); }
  double unresolved_fraction() const {
    return double(unresolved_count) / double(size_t(nx) * size_t(ny));
  }
  std::vector<cplx> points_with(label l) const {
    std::vector<cplx> out;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (labels[size_t(j) * size_t(nx) + size_t(i)] == l) out.push_back(point(i, j));
    return out;
  }
  std::vector<cplx> boundary_points() const {
    std::vector<cplx> out;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (boundary[size_t(j) * size_t(nx) + size_t(i)]) out.push_back(point(i, j));
    return out;
  }
};

struct basin_options {
  double escape_radius = 0;  // 0: choose and validate automatically
  double finite_tol = 1e-6;
  int max_iter = 200;
};

namespace detail {

inline double validated_escape_radius(const rational_function& s, double requested,
                                      double scene_scale) {
  double E = requested > 0 ? requested : 100.0 * scene_scale;
  for (int tries = 0; tries < 12; ++tries) {
    bool ok = true;
    for (int k = 0; k < 32 && ok; ++k) {
      cplx z = std::polar(E, two_pi * k / 32.0);
      double la = s.log_abs(z);
      if (!(la > std::log(2.0 * E))) ok = false;
    }
    if (ok) return E;
    E *= 10.0;
  }
  fail(errc::no_convergence, "could not validate an escape radius; map may not fix infinity");
}

}  // namespace detail

inline basin_image classify_basins(const rational_function& s, cplx attractor, const bbox& box,
                                   int nx, int ny, basin_options opt = {},
                                   double scene_scale = 1.0) {
  basin_image img;
  img.x0 = box.x0;
  img.y0 = box.y0;
  img.nx = nx;
  img.ny = ny;
  img.dx = box.width() / double(nx - 1);
  img.dy = box.height() / double(ny - 1);
  img.attractor = attractor;
  img.labels.assign(size_t(nx) * size_t(ny), basin_image::unresolved);
  img.iters.assign(img.labels.size(), 0);
  img.boundary.assign(img.labels.size(), 0);

  const double E = detail::validated_escape_radius(s, opt.escape_radius, scene_scale);
  const double logE = std::log(E);

  parallel_for(size_t(ny), [&](size_t lo, size_t hi) {
    for (size_t j = lo; j < hi; ++j) {
      for (int i = 0; i < nx; ++i) {
        size_t idx = j * size_t(nx) + size_t(i);
        cplx z = img.point(i, int(j));
        uint8_t lab = basin_image::unresolved;
        uint16_t used = opt.max_iter;
        for (int it = 0; it < opt.max_iter; ++it) {
          if (std::abs(z - attractor) < opt.finite_tol) {
            lab = basin_image::finite;
            used = uint16_t(it);
            break;
          }
          cplx S = s.log_eval(z);
          if (S.real() > logE) {  // log-magnitude escape test, no overflow
            lab = basin_image::infinity;
            used = uint16_t(it);
            break;
          }
          if (S.real() == -inf) {
            z = cplx(0, 0);  // landed exactly on a zero of s
            continue;
          }
          z = std::exp(S);
        }
        img.labels[idx] = lab;
        img.iters[idx] = used;
      }
    }
  });

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      size_t idx = size_t(j) * size_t(nx) + size_t(i);
      uint8_t l = img.labels[idx];
      bool b = false;
      if (i > 0 && img.labels[idx - 1] != l) b = true;
      if (i + 1 < nx && img.labels[idx + 1] != l) b = true;
      if (j > 0 && img.labels[idx - size_t(nx)] != l) b = true;
      if (j + 1 < ny && img.labels[idx + size_t(nx)] != l) b = true;
      img.boundary[idx] = b ? 1 : 0;
      if (l == basin_image::unresolved) ++img.unresolved_count;
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// comparison against a target scene

struct basin_report {
  double dh_basin_infinity = inf;  // vs the grey region of the target
  double dh_basin_finite = inf;    // vs the white region
  double dh_julia = inf;           // boundary pixels vs the target curves
  double unresolved_fraction = 0;
  bool finite_covers_white = true;  // every white sample pixel got the finite label
};

namespace detail {

// per-pixel face color of the target scene by scanline parity counting
inline std::vector<uint8_t> rasterize_colors(const scene& s, const basin_image& img) {
  size_t npix = size_t(img.nx) * size_t(img.ny);
  std::vector<int> depth_in(npix, 0);
  std::vector<int> deepest(npix, -1);
  std::vector<int> deepest_depth(npix, -1);
  for (size_t ci = 0; ci < s.curves.size(); ++ci) {
    auto poly = s.curves[ci].dense_polyline(4096);
    std::vector<uint8_t> inside(npix, 0);
    for (int j = 0; j < img.ny; ++j) {
      double y = img.y0 + j * img.dy;
      std::vector<double> xs;
      size_t n = poly.size();
      for (size_t k = 0; k < n; ++k) {
        cplx a = poly[k], b = poly[(k + 1) % n];
        if ((a.imag() > y) != (b.imag() > y)) {
          double t = (y - a.imag()) / (b.imag() - a.imag());
          xs.push_back(a.real() + t * (b.real() - a.real()));
        }
      }
      std::sort(xs.begin(), xs.end());
      // parity fill along the row
      size_t xi = 0;
      bool in = false;
      for (int i = 0; i < img.nx; ++i) {
        double x = img.x0 + i * img.dx;
        while (xi < xs.size() && xs[xi] < x) {
          in = !in;
          ++xi;
        }
        if (in) inside[size_t(j) * size_t(img.nx) + size_t(i)] = 1;
      }
    }
    int d = s.curve_depth[ci];
    for (size_t p = 0; p < npix; ++p) {
      if (inside[p] && d > deepest_depth[p]) {
        deepest_depth[p] = d;
        deepest[p] = int(ci);
      }
    }
  }
  std::vector<uint8_t> colors(npix);
  for (size_t p = 0; p < npix; ++p) {
    const face& f =
        deepest[p] < 0 ? s.faces[0] : s.faces[size_t(s.face_inside_curve(deepest[p]))];
    colors[p] = f.color == face_color::grey ? 1 : 0;
  }
  return colors;
}

}  // namespace detail

inline basin_report compare_basins(const basin_image& img, const scene& target) {
  basin_report rep;
  rep.unresolved_fraction = img.unresolved_fraction();
  auto colors = detail::rasterize_colors(target, img);
  std::vector<cplx> grey_pts, white_pts;
  for (int j = 0; j < img.ny; ++j)
    for (int i = 0; i < img.nx; ++i) {
      size_t idx = size_t(j) * size_t(img.nx) + size_t(i);
      (colors[idx] ? grey_pts : white_pts).push_back(img.point(i, j));
    }
  auto inf_pts = img.points_with(basin_image::infinity);
  auto fin_pts = img.points_with(basin_image::finite);
  if (!grey_pts.empty() && !inf_pts.empty())
    rep.dh_basin_infinity = hausdorff_points(grey_pts, inf_pts);
  if (!white_pts.empty() && !fin_pts.empty())
    rep.dh_basin_finite = hausdorff_points(white_pts, fin_pts);

  std::vector<cplx> jpts;
  for (const auto& c : target.curves) {
    auto poly = c.dense_polyline(2048);
    jpts.insert(jpts.end(), poly.begin(), poly.end());
  }
  auto bpts = img.boundary_points();
  if (!jpts.empty() && !bpts.empty()) rep.dh_julia = hausdorff_points(jpts, bpts);

  for (int j = 0; j < img.ny && rep.finite_covers_white; ++j)
    for (int i = 0; i < img.nx; ++i) {
      size_t idx = size_t(j) * size_t(img.nx) + size_t(i);
      if (!colors[idx] && img.labels[idx] == basin_image::infinity &&
          !img.boundary[idx]) {
        // tolerate a one-pixel collar around the curves
        bool near_boundary = false;
        for (int dj = -1; dj <= 1 && !near_boundary; ++dj)
          for (int di = -1; di <= 1; ++di) {
            int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= img.nx || jj >= img.ny) continue;
            if (img.boundary[size_t(jj) * size_t(img.nx) + size_t(ii)]) near_boundary = true;
          }
        if (!near_boundary) {
          rep.finite_covers_white = false;
          break;
        }
      }
    }
  return rep;
}

// P6 image with the fixed palette: finite white, infinity grey(128),
// unresolved red, boundary overlay black.  Top row first; bit-exact.
inline void write_basin_ppm(const basin_image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::invalid_argument, "cannot open " + path + " for writing");
  out << "P6\n" << img.nx << " " << img.ny << "\n255\n";
  for (int j = img.ny - 1; j >= 0; --j) {
    for (int i = 0; i < img.nx; ++i) {
      size_t idx = size_t(j) * size_t(img.nx) + size_t(i);
      uint8_t rgb[3];
      if (img.boundary[idx]) {
        rgb[0] = rgb[1] = rgb[2] = 0;
      } else if (img.labels[idx] == basin_image::finite) {
        rgb[0] = rgb[1] = rgb[2] = 255;
      } else if (img.labels[idx] == basin_image::infinity) {
        rgb[0] = rgb[1] = rgb[2] = 128;
      } else {
        rgb[0] = 255;
        rgb[1] = 0;
        rgb[2] = 0;
      }
      out.write(reinterpret_cast<const char*>(rgb), 3);
    }
  }
}

}  // namespace lemni

#endif
