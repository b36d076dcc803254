#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lemni/scene.hpp"

using namespace lemni;
using lemni_test::disk_scene;
using lemni_test::nested_scene;
using lemni_test::nested_two_pole_scene;
using lemni_test::random_probes;

static std::string disk_json(double pole_re = 0.0, const char* color = "white") {
  nlohmann::json doc;
  doc["curves"] = {{{"fourier_re", {0.0, 1.0}},
                    {"fourier_im", {0.0, 0.0}},
                    {"k_min", 0},
                    {"orientation", 1}}};
  doc["poles"] = {{{"re", pole_re}, {"im", 0.0}}};
  doc["unbounded_color"] = color;
  return doc.dump();
}

TEST_CASE("parse_scene: unit circle with center pole") {
  scene s = parse_scene(disk_json());
  REQUIRE(s.faces.size() == 2);
  REQUIRE(s.faces[0].color == face_color::white);
  REQUIRE(s.faces[1].color == face_color::grey);
  REQUIRE(s.faces[1].pole_indices.size() == 1);
}

TEST_CASE("parse_scene: nested circles give a grey annulus") {
  scene s = nested_scene();
  REQUIRE(s.faces.size() == 3);
  int annulus = s.face_of(cplx(1.5, 0));
  REQUIRE(s.faces[size_t(annulus)].color == face_color::grey);
  REQUIRE(s.faces[size_t(s.face_of(cplx(0.1, 0)))].color == face_color::white);
  REQUIRE(s.faces[0].color == face_color::white);
  // annulus face is bounded by both circles
  REQUIRE(s.faces[size_t(annulus)].boundary_curves().size() == 2);
}

TEST_CASE("parse_scene: pole in white face is rejected") {
  REQUIRE_THROWS_MATCHES(parse_scene(disk_json(3.0)), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::pole_in_white_face;
                         }));
}

TEST_CASE("parse_scene: grey face without pole is rejected") {
  nlohmann::json doc = nlohmann::json::parse(disk_json());
  doc["poles"] = nlohmann::json::array();
  REQUIRE_THROWS_MATCHES(parse_scene(doc.dump()), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::grey_face_without_pole;
                         }));
}

TEST_CASE("parse_scene: malformed document") {
  REQUIRE_THROWS_MATCHES(parse_scene("{ not json"), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::malformed_document;
                         }));
}

TEST_CASE("parse_scene: intersecting curves are rejected") {
  nlohmann::json doc;
  doc["curves"] = {{{"fourier_re", {0.0, 1.0}},
                    {"fourier_im", {0.0, 0.0}},
                    {"k_min", 0},
                    {"orientation", 1}},
                   {{"fourier_re", {0.5, 1.0}},
                    {"fourier_im", {0.0, 0.0}},
                    {"k_min", 0},
                    {"orientation", 1}}};
  doc["poles"] = nlohmann::json::array();
  doc["unbounded_color"] = "white";
  REQUIRE_THROWS_MATCHES(parse_scene(doc.dump()), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::curves_intersect;
                         }));
}

TEST_CASE("face_of_point basics") {
  scene disk = disk_scene();
  REQUIRE(disk.face_of(cplx(0, 0)) == 1);
  REQUIRE(disk.face_of(cplx(5, 0)) == 0);
  scene nested = nested_scene();
  int annulus = nested.face_of(cplx(1.5, 0));
  REQUIRE(annulus == nested.face_inside_curve(1));
  REQUIRE_THROWS_AS(disk.face_of(cplx(1.0, 0.0)), error);
}

TEST_CASE("winding numbers of circles") {
  analytic_curve ccw = analytic_curve::circle(cplx(0, 0), 1.0, +1);
  analytic_curve cw = analytic_curve::circle(cplx(0, 0), 1.0, -1);
  REQUIRE(winding_number(ccw, cplx(0, 0)) == 1);
  REQUIRE(winding_number(ccw, cplx(2, 0)) == 0);
  REQUIRE(winding_number(cw, cplx(0, 0)) == -1);
}

TEST_CASE("winding number is invariant under resampling") {
  analytic_curve c({cplx(0, 0), cplx(1, 0), cplx(0.2, 0.1), cplx(0.0, 0.05)}, 0);
  analytic_curve dense = c;
  dense.resample(4 * c.sample_count());
  for (cplx z : {cplx(0.1, 0.2), cplx(3, 1), cplx(-0.4, 0.1), cplx(0.9, 1.1)}) {
    REQUIRE(c.winding(z) == dense.winding(z));
  }
}

TEST_CASE("parity coloring invariant") {
  for (const scene& s : {disk_scene(), nested_scene(), nested_two_pole_scene(),
                         lemni_test::two_circle_scene()}) {
    for (const face& f : s.faces) {
      face_color expect = (f.depth % 2 == 0) ? s.unbounded_color : flip(s.unbounded_color);
      REQUIRE(f.color == expect);
    }
    // colors alternate along every root-to-leaf path of the nesting forest
    for (const face& f : s.faces) {
      for (int hole : f.hole_curves) {
        REQUIRE(s.faces[size_t(s.face_inside_curve(hole))].color != f.color);
      }
    }
  }
}

TEST_CASE("moebius_normalize: already finite is the identity") {
  scene s = disk_scene();
  auto ns = moebius_normalize(s);
  REQUIRE_FALSE(ns.changed);
  REQUIRE(ns.T.is_identity());
}

TEST_CASE("moebius_normalize: pole at infinity becomes finite") {
  scene s = lemni_test::two_circle_polynomial_scene();
  auto ns = moebius_normalize(s);
  REQUIRE(ns.changed);
  // the transform is an inversion about a white-face point
  cplx z0 = -ns.T.d / ns.T.c;
  REQUIRE(s.faces[size_t(s.face_of(z0))].color == face_color::white);
  // image of the infinite pole is finite and sits in a grey image face
  REQUIRE(ns.sc.poles.size() == 1);
  REQUIRE_FALSE(ns.sc.poles[0].at_infinity);
  REQUIRE(ns.sc.unbounded_color == face_color::white);
  int fid = ns.sc.face_of(ns.sc.poles[0].z);
  REQUIRE(ns.sc.faces[size_t(fid)].color == face_color::grey);
}

TEST_CASE("moebius_normalize: mixed poles at infinity and zero") {
  scene s = nested_two_pole_scene();
  auto ns = moebius_normalize(s);
  REQUIRE(ns.changed);
  for (const auto& p : ns.sc.poles) {
    REQUIRE_FALSE(p.at_infinity);
    int fid = ns.sc.face_of(p.z);
    REQUIRE(ns.sc.faces[size_t(fid)].color == face_color::grey);
  }
}

TEST_CASE("face_of commutes with moebius_normalize on random probes") {
  scene s = nested_two_pole_scene();
  auto ns = moebius_normalize(s);
  // face correspondence via interior probes
  std::vector<int> face_map(s.faces.size(), -1);
  for (const face& f : s.faces) {
    cplx p = s.interior_probe(f.id);
    face_map[size_t(f.id)] = ns.sc.face_of(ns.T(p));
  }
  size_t checked = 0;
  for (cplx z : random_probes(s, 100, 20240817)) {
    int f0;
    try {
      f0 = s.face_of(z);
    } catch (const error&) {
      continue;
    }
    cplx w = ns.T(z);
    int f1;
    try {
      f1 = ns.sc.face_of(w);
    } catch (const error&) {
      continue;  // image point too close to an image curve at its tolerance
    }
    REQUIRE(f1 == face_map[size_t(f0)]);
    ++checked;
  }
  REQUIRE(checked >= 90);
}

TEST_CASE("curve fit reproduces a moebius image spectrally") {
  analytic_curve c = analytic_curve::circle(cplx(0, 0), 2.0);
  moebius T = moebius::inversion_about(cplx(0.5, 0.2));
  std::vector<cplx> pts(512);
  for (size_t j = 0; j < pts.size(); ++j)
    pts[j] = T(c.eval(two_pi * double(j) / double(pts.size())));
  analytic_curve img = analytic_curve::fit(pts);
  for (double t : {0.3, 1.7, 4.4}) {
    REQUIRE(std::abs(img.eval(t) - T(c.eval(t))) < 1e-10);
  }
}
