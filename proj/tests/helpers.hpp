#ifndef LEMNI_TEST_HELPERS_HPP
#define LEMNI_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "lemni/scene.hpp"

namespace lemni_test {

using namespace lemni;

// unit circle, pole at the origin, grey disk
inline scene disk_scene() {
  return make_scene({analytic_curve::circle(cplx(0, 0), 1.0)}, {ext_point::finite(cplx(0, 0))},
                    face_color::white);
}

// |z|=1 and |z|=2, pole at 1.5: grey annulus between white disk and white
// unbounded face
inline scene nested_scene(cplx pole = cplx(1.5, 0.0)) {
  return make_scene(
      {analytic_curve::circle(cplx(0, 0), 1.0), analytic_curve::circle(cplx(0, 0), 2.0)},
      {ext_point::finite(pole)}, face_color::white);
}

// two disjoint grey disks with one finite pole each, white unbounded face
inline scene two_circle_scene(cplx c1 = cplx(-1.2, 0.0), cplx c2 = cplx(1.2, 0.0),
                              double r = 0.8) {
  return make_scene({analytic_curve::circle(c1, r), analytic_curve::circle(c2, r)},
                    {ext_point::finite(c1), ext_point::finite(c2)}, face_color::white);
}

// two white disks, grey unbounded face with the pole at infinity; the first
// disk holds the origin (the powered map sends white faces near zero)
inline scene two_circle_polynomial_scene(cplx c1 = cplx(0, 0), cplx c2 = cplx(3, 0),
                                         double r = 0.3) {
  return make_scene({analytic_curve::circle(c1, r), analytic_curve::circle(c2, r)},
                    {ext_point::infinity()}, face_color::grey);
}

// nested circles with pole 0 in the disk and a pole at infinity; annulus white
inline scene nested_two_pole_scene() {
  return make_scene(
      {analytic_curve::circle(cplx(0, 0), 1.0), analytic_curve::circle(cplx(0, 0), 2.0)},
      {ext_point::finite(cplx(0, 0)), ext_point::infinity()}, face_color::grey);
}

inline std::vector<cplx> random_probes(const scene& s, size_t count, unsigned seed,
                                       double min_dist = 0.05) {
  std::mt19937_64 rng(seed);
  bbox b = s.box.padded(0.5 * s.scale);
  std::uniform_real_distribution<double> ux(b.x0, b.x1), uy(b.y0, b.y1);
  std::vector<cplx> out;
  while (out.size() < count) {
    cplx z(ux(rng), uy(rng));
    double d = lemni::inf;
    for (const auto& c : s.curves) d = std::min(d, c.polyline_distance(z));
    if (d < min_dist * s.scale) continue;
    out.push_back(z);
  }
  return out;
}

}  // namespace lemni_test

#endif
