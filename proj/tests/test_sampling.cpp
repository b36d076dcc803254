#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lemni/partition.hpp"

using namespace lemni;
using lemni_test::disk_scene;
using lemni_test::nested_scene;
using lemni_test::two_circle_polynomial_scene;
using lemni_test::two_circle_scene;

TEST_CASE("disk partition at m=8 gives the 8th roots of unity") {
  scene s = disk_scene();
  potential_field pf = solve_scene(s);
  boundary_partition bp = partition_boundary(pf, 1, 8);
  REQUIRE(bp.comps.size() == 1);
  REQUIRE(bp.comps[0].points.size() == 8);
  for (size_t j = 0; j < 8; ++j) {
    cplx expect = std::polar(1.0, two_pi * double(j) / 8.0);
    REQUIRE(std::abs(bp.comps[0].points[j] - expect) < 1e-8);
  }
}

TEST_CASE("offset-pole partition maps to rotated preimages of roots of unity") {
  scene s = disk_scene();
  // replace the pole by 0.5
  scene s2 = make_scene({analytic_curve::circle(cplx(0, 0), 1.0)},
                        {ext_point::finite(cplx(0.5, 0))}, face_color::white);
  potential_field pf = solve_scene(s2);
  boundary_partition bp = partition_boundary(pf, 1, 4);
  auto M = [](cplx z) { return (z - 0.5) / (1.0 - 0.5 * z); };
  auto Minv = [](cplx w) { return (w + 0.5) / (1.0 + 0.5 * w); };
  cplx w0 = M(bp.comps[0].points[0]);  // anchor image fixes the rotation
  for (size_t j = 0; j < 4; ++j) {
    cplx expect = Minv(w0 * std::polar(1.0, two_pi * double(j) / 4.0));
    REQUIRE(std::abs(bp.comps[0].points[j] - expect) < 1e-8);
  }
  (void)s;
}

TEST_CASE("arc measures telescope to the pole count") {
  for (long long m : {5LL, 12LL}) {
    scene s = nested_scene();
    potential_field pf = solve_scene(s);
    int annulus = s.face_of(cplx(1.5, 0));
    boundary_partition bp = partition_boundary(pf, annulus, m);
    double total = 0;
    size_t pts = 0;
    for (const auto& c : bp.comps) {
      for (double am : c.arc_measure) total += am;
      pts += c.points.size();
    }
    REQUIRE(std::abs(total - double(bp.pole_count)) < 1e-6);
    REQUIRE(pts == size_t(m));
    // all arcs except possibly one per component equal |P_B|/m
    double q = double(bp.pole_count) / double(m);
    for (const auto& c : bp.comps) {
      int odd = 0;
      for (double am : c.arc_measure)
        if (std::abs(am - q) > 1e-8) ++odd;
      REQUIRE(odd <= 1);
    }
  }
}

TEST_CASE("two-component allocation follows the floor rule") {
  scene s = two_circle_polynomial_scene();  // grey unbounded face, two boundary circles
  potential_field pf = solve_scene(s);
  boundary_partition bp = partition_boundary(pf, 0, 15);
  REQUIRE(bp.comps.size() == 2);
  size_t n0 = bp.comps[0].points.size(), n1 = bp.comps[1].points.size();
  REQUIRE(n0 + n1 == 15);
  // identical circles: masses are equal, tie broken by component index
  REQUIRE(n0 == 8);
  REQUIRE(n1 == 7);
}

TEST_CASE("partition is equivariant under rotations of a centered disk") {
  double theta = 0.7345;
  // gamma(t) = e^{i theta} e^{it}: same circle, rotated anchor
  analytic_curve rotated({cplx(0, 0), std::polar(1.0, theta)}, 0);
  scene s = make_scene({rotated}, {ext_point::finite(cplx(0, 0))}, face_color::white);
  potential_field pf = solve_scene(s);
  boundary_partition bp = partition_boundary(pf, 1, 8);
  for (size_t j = 0; j < 8; ++j) {
    cplx expect = std::polar(1.0, theta + two_pi * double(j) / 8.0);
    REQUIRE(std::abs(bp.comps[0].points[j] - expect) < 1e-8);
  }
}

TEST_CASE("build_rational: disk at m=3 is (z^3-1)/z^3") {
  scene s = disk_scene();
  sampled_rational sr = build_sampled_rational(s, 3);
  REQUIRE(sr.r.zeros.size() == 3);
  REQUIRE(sr.r.poles.size() == 1);
  REQUIRE(sr.r.poles[0].mult == 3);
  REQUIRE(sr.r.log_prefactor == cplx(0, 0));
  for (size_t k = 0; k < 3; ++k) {
    cplx expect = std::polar(1.0, two_pi * double(k) / 3.0);
    REQUIRE(std::abs(sr.r.zeros[k].z - expect) < 1e-9);
    REQUIRE(sr.r.zeros[k].mult == 1);
  }
  REQUIRE(sr.r.degree() == 3);
}

TEST_CASE("build_rational: degree bookkeeping over two faces") {
  scene s = two_circle_scene();
  sampled_rational sr = build_sampled_rational(s, 5);
  REQUIRE(sr.r.zeros.size() == 10);
  for (const auto& t : sr.r.zeros) REQUIRE(t.mult == 1);
  REQUIRE(sr.r.poles.size() == 2);
  for (const auto& t : sr.r.poles) REQUIRE(t.mult == 5);
  REQUIRE(sr.r.balanced());
}

TEST_CASE("two poles in one face give multiplicity-two zeros") {
  scene s = make_scene({analytic_curve::circle(cplx(0, 0), 1.0)},
                       {ext_point::finite(cplx(0.3, 0)), ext_point::finite(cplx(-0.3, 0))},
                       face_color::white);
  sampled_rational sr = build_sampled_rational(s, 6);
  REQUIRE(sr.partitions.size() == 1);
  REQUIRE(sr.partitions[0].pole_count == 2);
  REQUIRE(sr.r.zeros.size() == 6);
  for (const auto& t : sr.r.zeros) REQUIRE(t.mult == 2);
  REQUIRE(sr.r.poles.size() == 2);
  for (const auto& t : sr.r.poles) REQUIRE(t.mult == 6);
  REQUIRE(sr.r.balanced());
}

TEST_CASE("u_m approaches u at the closed-form disk rate") {
  scene s = disk_scene();
  for (long long m : {10LL, 20LL}) {
    sampled_rational sr = build_sampled_rational(s, m);
    double rho = 0.5;
    double bound = std::abs(std::log(1.0 - std::pow(rho, double(m)))) / double(m);
    double worst = 0;
    for (int k = 0; k < 64; ++k) {
      cplx z = std::polar(rho, two_pi * k / 64.0);
      worst = std::max(worst, std::abs(sr.r.u_m(z) + std::log(rho)));
    }
    REQUIRE(worst <= bound + 1e-10);
  }
}

TEST_CASE("weak-star convergence of the sampled measure (disk oracle)") {
  scene s = disk_scene();
  potential_field pf = solve_scene(s);
  cplx zeta0(1.5, 0.0);
  // integral of log|z - zeta0| d omega = log|zeta0| for the centered disk
  double integral = std::log(std::abs(zeta0));
  double prev = inf;
  for (long long m : {16LL, 32LL, 64LL, 128LL}) {
    boundary_partition bp = partition_boundary(pf, 1, m);
    double acc = 0;
    for (const auto& c : bp.comps)
      for (cplx z : c.points) acc += std::log(std::abs(z - zeta0)) / double(m);
    double err = std::abs(acc - integral);
    REQUIRE(err <= prev * 1.05 + 5e-13);
    if (m == 128) REQUIRE(err < 1e-10);
    prev = err;
  }
}

TEST_CASE("calibration removes the Robin offset for polynomial scenes") {
  scene s = two_circle_polynomial_scene();
  sampled_rational sr = build_sampled_rational(s, 24);
  // u_m must now hug u: near zero on the white disks, positive outside
  REQUIRE(std::abs(sr.r.u_m(cplx(0, 0))) < 0.05);
  REQUIRE(std::abs(sr.r.u_m(cplx(3, 0))) < 0.05);
  REQUIRE(sr.r.u_m(cplx(1.5, 3.0)) > 0.2);
  // and the raw (uncalibrated) version would not: prefactor is nonzero
  REQUIRE(sr.r.log_prefactor.real() != 0.0);
}
