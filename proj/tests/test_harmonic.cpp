#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lemni/green.hpp"
#include "lemni/potential.hpp"

using namespace lemni;
using lemni_test::disk_scene;
using lemni_test::nested_scene;

TEST_CASE("disk Green's function matches -log|z|") {
  scene s = disk_scene();
  harmonic_solution sol = solve_green(s, 1, cplx(0, 0));
  REQUIRE(sol.boundary_residual < 1e-8);
  REQUIRE(std::abs(sol.green(cplx(0.5, 0)) - std::log(2.0)) < 1e-8);
  REQUIRE(std::abs(sol.green(cplx(0.25, 0)) - std::log(4.0)) < 1e-8);
  for (cplx z : {cplx(0.3, 0.4), cplx(-0.7, 0.1), cplx(0.05, -0.6)}) {
    REQUIRE(std::abs(sol.green(z) + std::log(std::abs(z))) < 1e-9);
  }
}

TEST_CASE("radius-2 disk with center pole: G = log(2/|z|)") {
  scene s = make_scene({analytic_curve::circle(cplx(0, 0), 2.0)}, {ext_point::finite(cplx(0, 0))},
                       face_color::white);
  harmonic_solution sol = solve_green(s, 1, cplx(0, 0));
  REQUIRE(std::abs(sol.green(cplx(1, 0)) - std::log(2.0)) < 1e-9);
}

TEST_CASE("green_eval conventions: zero outside, +inf at the pole") {
  scene s = disk_scene();
  harmonic_solution sol = solve_green(s, 1, cplx(0, 0));
  REQUIRE(green_eval(sol, cplx(2, 1)) == 0.0);
  REQUIRE(std::isinf(green_eval(sol, cplx(0, 0))));
}

TEST_CASE("off-center pole and an off-center disk") {
  // disk automorphism closed form: G(z, a) = log |(1 - conj(a) z) / (z - a)|
  scene s = disk_scene();
  cplx a(0.5, 0.0);
  harmonic_solution sol = solve_green(s, 1, a);
  for (cplx z : {cplx(0.2, 0.3), cplx(-0.5, -0.4), cplx(0.8, 0.05)}) {
    double exact = std::log(std::abs((1.0 - std::conj(a) * z) / (z - a)));
    REQUIRE(std::abs(sol.green(z) - exact) < 1e-9);
  }
}

TEST_CASE("exterior disk with pole at infinity evaluates through normalization") {
  // grey unbounded face: G(z, inf) = log|z| for the unit circle
  scene s = make_scene({analytic_curve::circle(cplx(0, 0), 1.0)}, {ext_point::infinity()},
                       face_color::grey);
  potential_field pf = solve_scene(s);
  REQUIRE(std::abs(pf.u(cplx(std::exp(1.0), 0)) - 1.0) < 1e-8);
  REQUIRE(std::abs(pf.u(cplx(0, 2)) - std::log(2.0)) < 1e-8);
  // white disk interior: u = 0
  REQUIRE(pf.u(cplx(0.3, 0.1)) == 0.0);
}

TEST_CASE("measure density: disk with center pole is uniform") {
  scene s = disk_scene();
  harmonic_solution sol = solve_green(s, 1, cplx(0, 0));
  measure_density md = compute_measure_density(sol);
  REQUIRE(md.comps.size() == 1);
  for (double r : md.comps[0].rho) REQUIRE(std::abs(r - 1.0 / two_pi) < 1e-9);
  REQUIRE(std::abs(md.total_mass - 1.0) < 1e-6);
}

TEST_CASE("measure density: Poisson kernel for pole 0.5") {
  scene s = disk_scene();
  harmonic_solution sol = solve_green(s, 1, cplx(0.5, 0));
  measure_density md = compute_measure_density(sol);
  // node 0 sits at zeta = 1
  double expected = (1.0 - 0.25) / (two_pi * std::norm(cplx(1, 0) - cplx(0.5, 0)));
  REQUIRE(std::abs(md.comps[0].rho[0] - expected) < 1e-7);
  REQUIRE(std::abs(expected - 3.0 / two_pi) < 1e-15);
  // every node against the Poisson kernel
  const auto& c = sol.comps[0];
  for (size_t j = 0; j < c.n; ++j) {
    cplx zeta = c.x[j];
    double exact = (1.0 - 0.25) / (two_pi * std::norm(zeta - cplx(0.5, 0)));
    REQUIRE(std::abs(md.comps[0].rho[j] - exact) < 1e-7);
  }
  REQUIRE(std::abs(md.total_mass - 1.0) < 1e-6);
}

TEST_CASE("annulus face: mass one and positive interior values") {
  scene s = nested_scene();
  int annulus = s.face_of(cplx(1.5, 0));
  harmonic_solution sol = solve_green(s, annulus, cplx(1.5, 0));
  REQUIRE(sol.boundary_residual < 1e-8);
  REQUIRE(sol.log_strength.size() == 1);
  measure_density md = compute_measure_density(sol);
  REQUIRE(std::abs(md.total_mass - 1.0) < 1e-6);
  for (cplx z : {cplx(-1.5, 0), cplx(0, 1.7), cplx(1.2, 0.3)}) {
    REQUIRE(sol.green(z) > 0.0);
  }
  REQUIRE(sol.green(cplx(0.5, 0)) == 0.0);  // inside the hole
  REQUIRE(sol.green(cplx(3, 0)) == 0.0);    // outside
}

TEST_CASE("conformal invariance of Green's values") {
  scene s = disk_scene();
  cplx p(0.3, 0.2);
  harmonic_solution sol = solve_green(s, 1, p);
  // random-ish disk automorphism followed by an affine map
  cplx a(0.31, -0.12);
  moebius aut{cplx(1, 0), -a, -std::conj(a), cplx(1, 0)};
  moebius aff{cplx(1.7, 0.4), cplx(0.3, -2.2), cplx(0, 0), cplx(1, 0)};
  moebius T = aff.compose_after(aut);
  scene s2 = transform_scene(s, T);
  harmonic_solution sol2 = solve_green(s2, 1, T(p));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(0.0, 0.92), ua(0.0, two_pi);
  size_t checked = 0;
  for (int i = 0; i < 50; ++i) {
    cplx z = std::polar(ur(rng), ua(rng));
    if (std::abs(z - p) < 0.03) continue;
    double g1 = sol.green(z);
    double g2 = sol2.green(T(z));
    REQUIRE(std::abs(g1 - g2) < 1e-6);
    ++checked;
  }
  REQUIRE(checked >= 45);
}

TEST_CASE("maximum principle: no interior zero of u inside the grey face") {
  scene s = disk_scene();
  potential_field pf = solve_scene(s);
  double min_inside = inf;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      cplx z(-0.95 + 1.9 * i / 63.0, -0.95 + 1.9 * j / 63.0);
      if (std::abs(z) > 0.9) continue;
      min_inside = std::min(min_inside, pf.u(z));
    }
  }
  REQUIRE(min_inside > 0.0);
}

TEST_CASE("harmonicity: five-point Laplacian decays like h^2") {
  scene s = nested_scene();
  int annulus = s.face_of(cplx(1.5, 0));
  harmonic_solution sol = solve_green(s, annulus, cplx(1.5, 0));
  auto lap = [&](cplx z, double h) {
    double c = sol.green_inside(z);
    double s4 = sol.green_inside(z + cplx(h, 0)) + sol.green_inside(z - cplx(h, 0)) +
                sol.green_inside(z + cplx(0, h)) + sol.green_inside(z - cplx(0, h));
    return (s4 - 4 * c) / (h * h);
  };
  for (cplx z : {cplx(-1.4, 0.2), cplx(0.1, 1.6)}) {
    double l1 = std::abs(lap(z, 2e-2));
    double l2 = std::abs(lap(z, 1e-2));
    REQUIRE(l1 < 1e-2);
    REQUIRE(l2 < l1 / 2.5);  // ~4x decay, slack for roundoff
  }
}

TEST_CASE("gradient of Green matches central differences") {
  scene s = nested_scene();
  int annulus = s.face_of(cplx(1.5, 0));
  harmonic_solution sol = solve_green(s, annulus, cplx(1.5, 0));
  double h = 1e-6;
  for (cplx z : {cplx(-1.5, 0.1), cplx(0.2, 1.5), cplx(1.1, -0.9)}) {
    cplx g = sol.grad(z);
    double gx = (sol.green_inside(z + h) - sol.green_inside(z - h)) / (2 * h);
    double gy =
        (sol.green_inside(z + cplx(0, h)) - sol.green_inside(z - cplx(0, h))) / (2 * h);
    REQUIRE(std::abs(g - cplx(gx, gy)) < 1e-7);
  }
}

TEST_CASE("u_field sums over poles with disjoint supports") {
  scene s = lemni_test::two_circle_scene();
  potential_field pf = solve_scene(s);
  cplx z(-1.2, 0.3);  // inside disk 1
  int fid = s.face_of(z);
  // contribution only from the pole of that face
  double expect = 0;
  for (size_t pi = 0; pi < pf.sols.size(); ++pi) {
    if (pf.inv_face_map[size_t(pf.sols[pi].face_id)] == fid)
      expect += pf.sols[pi].green(pf.to_solved(z));
  }
  REQUIRE(pf.u(z) == expect);
  REQUIRE(pf.u(cplx(0, 0)) == 0.0);  // white unbounded face
  // disk of radius 0.8 about -1.2: G = log(0.8/|z-c|)
  double exact = std::log(0.8 / std::abs(z - cplx(-1.2, 0))) ;
  REQUIRE(std::abs(pf.u(z) - exact) < 1e-9);
}
