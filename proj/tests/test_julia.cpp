#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lemni/julia.hpp"
#include "lemni/partition.hpp"

using namespace lemni;

TEST_CASE("attractor of z^2 from 0.5 is the origin") {
  rational_function r = rational_function::monomial(cplx(0, 0));
  rational_function s = power(r, 2);
  cplx a = find_finite_attractor(s, cplx(0.5, 0));
  REQUIRE(std::abs(a) < 1e-8);
}

TEST_CASE("neutral start reports no convergence") {
  rational_function s = rational_function::monomial(cplx(0, 0));  // s(z) = z
  REQUIRE_THROWS_MATCHES(find_finite_attractor(s, cplx(1.0, 0)), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::no_convergence;
                         }));
}

TEST_CASE("z^8 basins split at the unit circle") {
  rational_function s = power(rational_function::monomial(cplx(0, 0)), 8);
  cplx attractor = find_finite_attractor(s, cplx(0.5, 0));
  basin_options opt;
  opt.escape_radius = 4.0;
  basin_image img = classify_basins(s, attractor, {-2, -2, 2, 2}, 257, 257, opt);

  REQUIRE(img.unresolved_fraction() < 0.01);
  // labels match |z| vs 1 away from a one-pixel collar
  double collar = 2 * img.pixel_diag();
  for (int j = 0; j < img.ny; j += 3) {
    for (int i = 0; i < img.nx; i += 3) {
      cplx z = img.point(i, j);
      if (std::abs(std::abs(z) - 1.0) < collar) continue;
      uint8_t expect = std::abs(z) < 1.0 ? basin_image::finite : basin_image::infinity;
      REQUIRE(img.labels[size_t(j) * size_t(img.nx) + size_t(i)] == expect);
    }
  }
  // boundary pixels hug the unit circle
  for (cplx b : img.boundary_points()) REQUIRE(std::abs(std::abs(b) - 1.0) < collar);

  // target comparison: all three Hausdorff distances within two pixel diagonals
  scene target = make_scene({analytic_curve::circle(cplx(0, 0), 1.0)}, {ext_point::infinity()},
                            face_color::grey);
  basin_report rep = compare_basins(img, target);
  REQUIRE(rep.dh_julia <= 2 * img.pixel_diag());
  REQUIRE(rep.dh_basin_finite <= 2 * img.pixel_diag());
  REQUIRE(rep.dh_basin_infinity <= 2 * img.pixel_diag());
  REQUIRE(rep.finite_covers_white);
}

TEST_CASE("labels are stable under grid refinement") {
  rational_function s = power(rational_function::monomial(cplx(0, 0)), 8);
  cplx attractor = find_finite_attractor(s, cplx(0.5, 0));
  basin_options opt;
  opt.escape_radius = 4.0;
  basin_image coarse = classify_basins(s, attractor, {-2, -2, 2, 2}, 129, 129, opt);
  basin_image fine = classify_basins(s, attractor, {-2, -2, 2, 2}, 257, 257, opt);
  size_t agree = 0, total = 0;
  for (int j = 0; j < coarse.ny; ++j) {
    for (int i = 0; i < coarse.nx; ++i) {
      uint8_t lc = coarse.labels[size_t(j) * 129 + size_t(i)];
      uint8_t lf = fine.labels[size_t(2 * j) * 257 + size_t(2 * i)];
      ++total;
      if (lc == lf) ++agree;
    }
  }
  REQUIRE(double(agree) / double(total) >= 0.99);
}

TEST_CASE("scene-driven basins: both white disks land in the finite basin") {
  scene s = lemni_test::two_circle_polynomial_scene();  // disks at 0 and 3, P = {inf}
  sampled_rational sr = build_sampled_rational(s, 32);
  // rescale to the small positive level c: |r| then stays below 1 on the
  // white faces with a uniform margin, as the basin construction needs
  double c = 0.028;
  rational_function r_hat = sr.r.scaled_by_log(-double(sr.r.m) * c);
  rational_function sn = power(r_hat, 8);
  cplx attractor = find_finite_attractor(sn, cplx(0, 0));
  REQUIRE(std::abs(attractor) < 0.3);
  basin_options opt;
  basin_image img = classify_basins(sn, attractor, {-1, -1.6, 4, 1.6}, 257, 257, opt,
                                    s.scale);
  // spot-check interior points of both disks and a far grey point
  auto label_at = [&](cplx z) {
    int i = int(std::lround((z.real() - img.x0) / img.dx));
    int j = int(std::lround((z.imag() - img.y0) / img.dy));
    return img.labels[size_t(j) * size_t(img.nx) + size_t(i)];
  };
  REQUIRE(label_at(cplx(0, 0)) == basin_image::finite);
  REQUIRE(label_at(cplx(3, 0)) == basin_image::finite);
  REQUIRE(label_at(cplx(-0.8, 1.4)) == basin_image::infinity);
  REQUIRE(img.unresolved_fraction() < 0.01);

  basin_report rep = compare_basins(img, s);
  REQUIRE(rep.dh_julia < 0.08);
  REQUIRE(rep.finite_covers_white);
}

TEST_CASE("basin image PPM output is bit-exact across runs") {
  rational_function s = power(rational_function::monomial(cplx(0, 0)), 8);
  cplx attractor = find_finite_attractor(s, cplx(0.5, 0));
  basin_options opt;
  opt.escape_radius = 4.0;
  basin_image img = classify_basins(s, attractor, {-2, -2, 2, 2}, 65, 65, opt);
  write_basin_ppm(img, "test_basins_a.ppm");
  write_basin_ppm(img, "test_basins_b.ppm");
  std::ifstream a("test_basins_a.ppm", std::ios::binary), b("test_basins_b.ppm", std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  REQUIRE(sa == sb);
  REQUIRE(sa.size() == std::string("P6\n65 65\n255\n").size() + 65 * 65 * 3);
  std::remove("test_basins_a.ppm");
  std::remove("test_basins_b.ppm");
}
