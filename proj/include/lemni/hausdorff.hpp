#ifndef LEMNI_HAUSDORFF_HPP
#define LEMNI_HAUSDORFF_HPP

#include <algorithm>
#include <vector>

#include "lemni/core.hpp"

namespace lemni {

// Densify a polyline so consecutive points are at most h apart; the induced
// Hausdorff error is at most h.
inline std::vector<cplx> resample_polyline(const std::vector<cplx>& poly, bool closed,
                                           double h) {
  std::vector<cplx> out;
  size_t n = poly.size();
  if (n == 0) return out;
  size_t segs = closed ? n : n - 1;
  for (size_t i = 0; i < segs; ++i) {
    cplx a = poly[i], b = poly[(i + 1) % n];
    double len = std::abs(b - a);
    size_t k = std::max<size_t>(1, size_t(std::ceil(len / h)));
    for (size_t j = 0; j < k; ++j) out.push_back(a + (b - a) * (double(j) / double(k)));
  }
  if (!closed) out.push_back(poly.back());
  return out;
}

// Uniform bucket grid for nearest-point queries (expanding ring search).
class point_grid {
 public:
  explicit point_grid(const std::vector<cplx>& pts) : pts_(pts) {
    if (pts.empty()) fail(errc::empty_set, "point grid over an empty set");
    b_ = bbox::of(pts);
    double target_cells = std::sqrt(double(pts.size()));
    nx_ = std::max(1, int(target_cells));
    ny_ = nx_;
    cw_ = std::max({b_.width() / nx_, b_.height() / ny_, 1e-300});
    cells_.assign(size_t(nx_) * size_t(ny_), {});
    for (size_t i = 0; i < pts.size(); ++i) cells_[cell_index(pts[i])].push_back(int(i));
  }

  double nearest_dist(cplx z) const {
    int gx = clampi(int(std::floor((z.real() - b_.x0) / cw_)), 0, nx_ - 1);
    int gy = clampi(int(std::floor((z.imag() - b_.y0) / cw_)), 0, ny_ - 1);
    double best = inf;
    for (int ring = 0; ring < std::max(nx_, ny_) + 2; ++ring) {
      // any point in a farther ring is at least (ring-1)*cw_ away
      if (best < double(ring - 1) * cw_) break;
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dx = -ring; dx <= ring; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          int cx = gx + dx, cy = gy + dy;
          if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) continue;
          for (int idx : cells_[size_t(cy) * size_t(nx_) + size_t(cx)])
            best = std::min(best, std::abs(pts_[size_t(idx)] - z));
        }
      }
    }
    return best;
  }

 private:
  static int clampi(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }
  size_t cell_index(cplx z) const {
    int gx = clampi(int(std::floor((z.real() - b_.x0) / cw_)), 0, nx_ - 1);
    int gy = clampi(int(std::floor((z.imag() - b_.y0) / cw_)), 0, ny_ - 1);
    return size_t(gy) * size_t(nx_) + size_t(gx);
  }
  const std::vector<cplx>& pts_;
  bbox b_{};
  int nx_ = 1, ny_ = 1;
  double cw_ = 1;
  std::vector<std::vector<int>> cells_;
};

inline double directed_hausdorff(const std::vector<cplx>& A, const point_grid& B) {
  double worst = 0;
  for (cplx a : A) worst = std::max(worst, B.nearest_dist(a));
  return worst;
}

inline double hausdorff_points(const std::vector<cplx>& A, const std::vector<cplx>& B) {
  if (A.empty() || B.empty()) fail(errc::empty_set, "Hausdorff distance of an empty set");
  point_grid ga(A), gb(B);
  return std::max(directed_hausdorff(A, gb), directed_hausdorff(B, ga));
}

struct polyline_set {
  // each entry: polyline + closed flag
  std::vector<std::pair<std::vector<cplx>, bool>> lines;
  void add(std::vector<cplx> pts, bool closed) { lines.emplace_back(std::move(pts), closed); }
};

inline double hausdorff(const polyline_set& A, const polyline_set& B, double resample_h) {
  std::vector<cplx> a, b;
  for (const auto& [pts, closed] : A.lines) {
    auto r = resample_polyline(pts, closed, resample_h);
    a.insert(a.end(), r.begin(), r.end());
  }
  for (const auto& [pts, closed] : B.lines) {
    auto r = resample_polyline(pts, closed, resample_h);
    b.insert(b.end(), r.begin(), r.end());
  }
  return hausdorff_points(a, b);
}

}  // namespace lemni

#endif
