#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lemni/wos.hpp"

using namespace lemni;
using lemni_test::disk_scene;

TEST_CASE("walk on spheres: quarter circle from the center") {
  scene s = disk_scene();
  boundary_arc quarter{0, 0.0, pi / 2};
  wos_estimate e = wos_measure(s, 1, cplx(0, 0), quarter, 200000, 42);
  REQUIRE(std::abs(e.value - 0.25) < 3 * e.stderr_ + 1e-4);
  REQUIRE(e.stderr_ < 2e-3);
}

TEST_CASE("walk on spheres: full boundary has measure one") {
  scene s = disk_scene();
  boundary_arc full{0, 0.0, two_pi};
  wos_estimate e = wos_measure(s, 1, cplx(0, 0), full, 20000, 7);
  REQUIRE(e.value == 1.0);
}

TEST_CASE("walk on spheres matches the Poisson kernel for an offset pole") {
  scene s = disk_scene();
  // right half circle seen from 0.5: integral of Poisson kernel over [-pi/2, pi/2]
  boundary_arc right{0, -pi / 2, pi / 2};
  cplx a(0.5, 0);
  double exact = 0;
  {
    int n = 20000;
    for (int i = 0; i < n; ++i) {
      double t = -pi / 2 + pi * (i + 0.5) / n;
      cplx zeta = std::polar(1.0, t);
      exact += (1 - std::norm(a)) / (two_pi * std::norm(zeta - a)) * (pi / n);
    }
  }
  wos_estimate e = wos_measure(s, 1, a, right, 200000, 99);
  REQUIRE(e.value > 0.5);
  REQUIRE(e.value < 1.0);
  REQUIRE(std::abs(e.value - exact) < 3 * e.stderr_ + 1e-4);
}

TEST_CASE("walk on spheres is deterministic for a fixed seed") {
  scene s = disk_scene();
  boundary_arc arc{0, 0.3, 2.1};
  wos_estimate a = wos_measure(s, 1, cplx(0.2, 0.1), arc, 50000, 1234);
  wos_estimate b = wos_measure(s, 1, cplx(0.2, 0.1), arc, 50000, 1234);
  REQUIRE(a.value == b.value);
  REQUIRE(a.stderr_ == b.stderr_);
}
