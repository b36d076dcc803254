#ifndef LEMNI_SCENE_HPP
#define LEMNI_SCENE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lemni/core.hpp"
#include "lemni/curve.hpp"
#include "lemni/moebius.hpp"

namespace lemni {

enum class face_color { white, grey };

inline face_color flip(face_color c) {
  return c == face_color::white ? face_color::grey : face_color::white;
}

inline const char* to_string(face_color c) { return c == face_color::white ? "white" : "grey"; }

// A face of the curve arrangement.  Face 0 is the unbounded face; face i+1
// is the region immediately inside curve i (inside i, outside its children).
struct face {
  int id = 0;
  int outer_curve = -1;           // -1 for the unbounded face
  std::vector<int> hole_curves;   // children of outer_curve in the nesting forest
  face_color color = face_color::white;
  int depth = 0;
  std::vector<int> pole_indices;  // poles contained in this face

  bool unbounded() const { return outer_curve < 0; }
  std::vector<int> boundary_curves() const {
    std::vector<int> out;
    if (outer_curve >= 0) out.push_back(outer_curve);
    out.insert(out.end(), hole_curves.begin(), hole_curves.end());
    return out;
  }
};

// Target configuration: disjoint analytic Jordan curves, parity 2-coloring,
// poles in grey faces.  Immutable after construction.
struct scene {
  std::vector<analytic_curve> curves;
  std::vector<int> orientation;   // parametrized winding of each curve (+1 ccw)
  std::vector<ext_point> poles;
  face_color unbounded_color = face_color::white;

  std::vector<face> faces;        // faces[0] = unbounded
  std::vector<int> curve_parent;  // containing curve id or -1
  std::vector<int> curve_depth;   // number of curves strictly containing it
  bbox box{};
  double scale = 1;
  double boundary_tol = 0;

  int face_inside_curve(int curve_id) const { return curve_id + 1; }

  const face& unbounded_face() const { return faces[0]; }

  // Winding-number face location.  Throws OnBoundary when z is within
  // boundary_tol of a curve.
  int face_of(cplx z) const {
    int deepest = -1;
    int best_depth = -1;
    for (size_t i = 0; i < curves.size(); ++i) {
      if (curves[i].polyline_distance(z) < boundary_tol)
        fail(errc::on_boundary, "query point lies on a scene curve");
      if (curves[i].winding(z) != 0 && curve_depth[i] > best_depth) {
        best_depth = curve_depth[i];
        deepest = int(i);
      }
    }
    return deepest < 0 ? 0 : face_inside_curve(deepest);
  }

  int face_of(const ext_point& p) const { return p.at_infinity ? 0 : face_of(p.z); }

  // A point well inside the given face (max-margin among a candidate set).
  cplx interior_probe(int face_id) const {
    if (face_id == 0) {
      // unbounded face: march outward from the bounding box corner
      cplx z(box.x1 + scale, box.y1 + scale);
      return z;
    }
    const face& f = faces.at(size_t(face_id));
    const analytic_curve& outer = curves[size_t(f.outer_curve)];
    cplx best(0, 0);
    double best_margin = -1;
    size_t n = outer.sample_count();
    for (double frac : {0.45, 0.3, 0.15, 0.07, 0.03, 0.01}) {
      double delta = frac * outer.length() / two_pi;
      for (size_t j = 0; j < n; j += n / 16) {
        cplx tang = outer.d1()[j] / std::abs(outer.d1()[j]);
        // the face lies on the winding!=0 side of its outer curve
        for (double side : {1.0, -1.0}) {
          cplx z = outer.samples()[j] + side * delta * cplx(0.0, 1.0) * tang;
          double margin = inf;
          for (const auto& c : curves) margin = std::min(margin, c.polyline_distance(z));
          if (margin < 0.4 * delta) continue;
          bool ok = false;
          try {
            ok = face_of(z) == face_id;
          } catch (const error&) {
            ok = false;
          }
          if (ok && margin > best_margin) {
            best_margin = margin;
            best = z;
          }
        }
      }
      if (best_margin > 0.05 * scale) break;
    }
    if (best_margin <= 0)
      fail(errc::malformed_document, "no interior probe found for face " + std::to_string(face_id));
    return best;
  }
};

// ---------------------------------------------------------------------------
// construction

namespace detail {

inline void validate_curve(const analytic_curve& c, int idx) {
  size_t n = c.sample_count();
  double len_scale = c.length() / two_pi;
  for (size_t j = 0; j < n; ++j) {
    if (std::abs(c.d1()[j]) < 1e-12 * len_scale)
      fail(errc::malformed_document,
           "curve " + std::to_string(idx) + " has a vanishing derivative (not immersed)");
  }
  // injectivity at resolution scale: distant parameters, close points.
  // The threshold is local (node spacing at the slower of the two points)
  // so that strongly nonuniform parametrizations are not flagged.
  double dt_node = two_pi / double(n);
  double tmin = 4.0 * dt_node;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double dt = param_dist(c.node_t(i), c.node_t(j));
      if (dt < tmin) continue;
      double local = dt_node * std::min(std::abs(c.d1()[i]), std::abs(c.d1()[j]));
      if (std::abs(c.samples()[i] - c.samples()[j]) < local)
        fail(errc::curves_intersect,
             "curve " + std::to_string(idx) + " nearly self-intersects (not a Jordan curve)");
    }
  }
}

}  // namespace detail

struct scene_options {
  double separation_factor = 10.0;  // min pairwise distance vs max sample spacing
  double boundary_tol_rel = 1e-9;
};

// Builds and fully validates a scene.  `declared_orientation` entries (+1/-1)
// request a parametrization direction; curves are reversed to match.  Pass
// empty to keep each curve's own direction.
inline scene make_scene(std::vector<analytic_curve> curves, std::vector<ext_point> poles,
                        face_color unbounded_color, std::vector<int> declared_orientation = {},
                        scene_options opt = {}) {
  if (curves.empty()) fail(errc::malformed_document, "scene has no curves");
  scene s;
  s.unbounded_color = unbounded_color;

  // orient
  s.orientation.resize(curves.size());
  for (size_t i = 0; i < curves.size(); ++i) {
    detail::validate_curve(curves[i], int(i));
    cplx probe = curves[i].interior_probe();
    int w = curves[i].winding(probe);
    if (std::abs(w) != 1)
      fail(errc::malformed_document,
           "curve " + std::to_string(i) + " winds " + std::to_string(w) + " about its interior");
    if (!declared_orientation.empty() && declared_orientation[i] != 0 &&
        w != declared_orientation[i]) {
      curves[i] = curves[i].reversed();
      w = -w;
    }
    s.orientation[i] = w;
  }
  s.curves = std::move(curves);

  // geometry box and tolerances
  std::vector<cplx> all;
  double max_spacing = 0;
  for (const auto& c : s.curves) {
    all.insert(all.end(), c.samples().begin(), c.samples().end());
    max_spacing = std::max(max_spacing, c.max_spacing());
  }
  s.box = bbox::of(all);
  s.scale = std::max({s.box.width(), s.box.height(), 1e-12});
  s.boundary_tol = opt.boundary_tol_rel * s.scale;

  // pairwise separation with certified margin
  for (size_t i = 0; i < s.curves.size(); ++i) {
    for (size_t j = i + 1; j < s.curves.size(); ++j) {
      double dmin = inf;
      for (cplx z : s.curves[i].samples())
        dmin = std::min(dmin, s.curves[j].polyline_distance(z));
      if (dmin <= opt.separation_factor * max_spacing)
        fail(errc::curves_intersect, "curves " + std::to_string(i) + " and " + std::to_string(j) +
                                         " are closer than the certified separation margin");
    }
  }

  // containment forest
  size_t nc = s.curves.size();
  std::vector<std::vector<bool>> inside(nc, std::vector<bool>(nc, false));
  s.curve_depth.assign(nc, 0);
  s.curve_parent.assign(nc, -1);
  for (size_t i = 0; i < nc; ++i) {
    for (size_t j = 0; j < nc; ++j) {
      if (i == j) continue;
      inside[i][j] = s.curves[j].winding(s.curves[i].samples()[0]) != 0;
      if (inside[i][j]) ++s.curve_depth[i];
    }
  }
  for (size_t i = 0; i < nc; ++i) {
    for (size_t j = 0; j < nc; ++j) {
      if (inside[i][j] && s.curve_depth[j] == s.curve_depth[i] - 1) s.curve_parent[i] = int(j);
    }
  }

  // faces: 0 = unbounded, i+1 = inside curve i
  s.faces.resize(nc + 1);
  s.faces[0].id = 0;
  s.faces[0].outer_curve = -1;
  s.faces[0].depth = 0;
  s.faces[0].color = unbounded_color;
  for (size_t i = 0; i < nc; ++i) {
    face& f = s.faces[i + 1];
    f.id = int(i + 1);
    f.outer_curve = int(i);
    f.depth = s.curve_depth[i] + 1;
    f.color = (f.depth % 2 == 0) ? unbounded_color : flip(unbounded_color);
    if (s.curve_parent[i] < 0)
      s.faces[0].hole_curves.push_back(int(i));
    else
      s.faces[size_t(s.curve_parent[i]) + 1].hole_curves.push_back(int(i));
  }

  // poles
  s.poles = std::move(poles);
  for (size_t pi = 0; pi < s.poles.size(); ++pi) {
    int fid = s.poles[pi].at_infinity ? 0 : s.face_of(s.poles[pi].z);
    face& f = s.faces[size_t(fid)];
    if (f.color != face_color::grey)
      fail(errc::pole_in_white_face, "pole " + std::to_string(pi) + " lies in white face " +
                                         std::to_string(fid));
    f.pole_indices.push_back(int(pi));
  }
  for (const face& f : s.faces) {
    if (f.color == face_color::grey && f.pole_indices.empty())
      fail(errc::grey_face_without_pole, "grey face " + std::to_string(f.id) + " has no pole");
  }
  return s;
}

// ---------------------------------------------------------------------------
// scene document (JSON)

inline scene parse_scene(const std::string& text, scene_options opt = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::malformed_document, std::string("not valid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("curves") || !doc["curves"].is_array() || doc["curves"].empty())
      fail(errc::malformed_document, "missing or empty 'curves' array");
    std::vector<analytic_curve> curves;
    std::vector<int> orient;
    for (const auto& jc : doc["curves"]) {
      auto re = jc.at("fourier_re").get<std::vector<double>>();
      auto im = jc.at("fourier_im").get<std::vector<double>>();
      if (re.size() != im.size() || re.empty())
        fail(errc::malformed_document, "fourier_re / fourier_im length mismatch");
      int k_min = jc.at("k_min").get<int>();
      std::vector<cplx> coeffs(re.size());
      for (size_t i = 0; i < re.size(); ++i) coeffs[i] = cplx(re[i], im[i]);
      curves.emplace_back(std::move(coeffs), k_min);
      orient.push_back(jc.value("orientation", 1));
    }
    std::vector<ext_point> poles;
    for (const auto& jp : doc.value("poles", nlohmann::json::array())) {
      if (jp.is_string()) {
        if (jp.get<std::string>() != "infinity")
          fail(errc::malformed_document, "pole string must be \"infinity\"");
        poles.push_back(ext_point::infinity());
      } else {
        poles.push_back(ext_point::finite(cplx(jp.at("re").get<double>(), jp.at("im").get<double>())));
      }
    }
    std::string col = doc.value("unbounded_color", "white");
    if (col != "white" && col != "grey")
      fail(errc::malformed_document, "unbounded_color must be \"white\" or \"grey\"");
    return make_scene(std::move(curves), std::move(poles),
                      col == "white" ? face_color::white : face_color::grey, orient, opt);
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    fail(errc::malformed_document, e.what());
  }
}

inline nlohmann::json scene_to_json(const scene& s) {
  nlohmann::json doc;
  doc["curves"] = nlohmann::json::array();
  for (size_t i = 0; i < s.curves.size(); ++i) {
    const auto& c = s.curves[i];
    nlohmann::json jc;
    std::vector<double> re, im;
    for (cplx z : c.coeffs()) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    jc["fourier_re"] = re;
    jc["fourier_im"] = im;
    jc["k_min"] = c.k_min();
    jc["orientation"] = s.orientation[i];
    doc["curves"].push_back(jc);
  }
  doc["poles"] = nlohmann::json::array();
  for (const auto& p : s.poles) {
    if (p.at_infinity)
      doc["poles"].push_back("infinity");
    else
      doc["poles"].push_back({{"re", p.z.real()}, {"im", p.z.imag()}});
  }
  doc["unbounded_color"] = to_string(s.unbounded_color);
  return doc;
}

// ---------------------------------------------------------------------------
// Moebius normalization

enum class normalize_mode {
  all_finite,        // infinity in a white face; every pole finite
  pole_at_infinity,  // one pole moved to infinity
};

struct normalized_scene {
  scene sc;
  moebius T;  // original -> normalized
  bool changed = false;
};

// Image of a scene under a Moebius map whose pole stays off all curves.
// Curves are refit through their transformed samples; parametrization (and
// hence boundary parameters) is preserved.
inline scene transform_scene(const scene& s, const moebius& T, scene_options opt = {}) {
  // color of the face whose image is unbounded (preimage of infinity)
  face_color unb;
  if (std::abs(T.c) == 0.0) {
    unb = s.unbounded_color;
  } else {
    cplx pre_inf = -T.d / T.c;
    unb = s.faces[size_t(s.face_of(pre_inf))].color;
  }
  std::vector<ext_point> poles;
  for (const auto& p : s.poles) poles.push_back(T.apply(p));

  size_t n0 = 512;
  for (int attempt = 0;; ++attempt) {
    std::vector<analytic_curve> imgs;
    bool resolved = true;
    for (const auto& c : s.curves) {
      std::vector<cplx> pts(n0);
      for (size_t j = 0; j < n0; ++j) pts[j] = T(c.eval(two_pi * double(j) / double(n0)));
      analytic_curve img = analytic_curve::fit(pts);
      if (img.tail_indicator() > 1e-10) resolved = false;
      imgs.push_back(std::move(img));
    }
    if (resolved || n0 >= (1u << 14)) {
      try {
        return make_scene(std::move(imgs), poles, unb, {}, opt);
      } catch (const error& e) {
        if (e.code() == errc::curves_intersect && n0 < (1u << 14)) {
          n0 *= 2;  // tighter geometry: certify separation at finer sampling
          continue;
        }
        throw;
      }
    }
    n0 *= 2;
  }
}

inline normalized_scene moebius_normalize(const scene& s,
                                          normalize_mode mode = normalize_mode::all_finite) {
  if (mode == normalize_mode::all_finite) {
    if (s.unbounded_color == face_color::white) return {s, moebius::identity(), false};
    // send a white interior point to infinity
    int white_face = -1;
    for (const face& f : s.faces)
      if (f.color == face_color::white && !f.unbounded()) white_face = f.id;
    if (white_face < 0) fail(errc::malformed_document, "scene has no bounded white face");
    cplx z0 = s.interior_probe(white_face);
    moebius T = moebius::inversion_about(z0);
    return {transform_scene(s, T), T, true};
  }
  // pole_at_infinity
  for (const auto& p : s.poles)
    if (p.at_infinity) return {s, moebius::identity(), false};
  if (s.poles.empty()) fail(errc::invalid_argument, "scene has no poles to send to infinity");
  moebius T = moebius::inversion_about(s.poles[0].z);
  return {transform_scene(s, T), T, true};
}

// Module-level convenience mirroring the public operation set.
inline int winding_number(const analytic_curve& c, cplx z) { return c.winding(z); }

}  // namespace lemni

#endif
