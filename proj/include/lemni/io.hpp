#ifndef LEMNI_IO_HPP
#define LEMNI_IO_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "lemni/core.hpp"
#include "lemni/green.hpp"
#include "lemni/homeo.hpp"
#include "lemni/levelset.hpp"
#include "lemni/partition.hpp"
#include "lemni/scene.hpp"

namespace lemni {

inline std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::invalid_argument, "cannot open " + path + " for writing");
  out << body;
}

// One solid path per traced component, target curves dashed.
inline std::string svg_overlay(const scene& target, const level_set& ls) {
  bbox b = target.box.padded(0.15 * target.scale);
  for (const auto& c : ls.comps)
    for (cplx z : c.pts) b.expand(z);
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt_g(b.x0) + " " +
       fmt_g(-b.y1) + " " + fmt_g(b.width()) + " " + fmt_g(b.height()) + "\">\n";
  double stroke = 0.004 * target.scale;
  auto path_of = [&](const std::vector<cplx>& pts, bool closed) {
    std::string d = "M";
    for (cplx z : pts) d += " " + fmt_g(z.real()) + " " + fmt_g(-z.imag());
    if (closed) d += " Z";
    return d;
  };
  for (const auto& c : target.curves) {
    s += "  <path d=\"" + path_of(c.dense_polyline(256), true) +
         "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"" + fmt_g(4 * stroke) + " " +
         fmt_g(3 * stroke) + "\" stroke-width=\"" + fmt_g(stroke) + "\"/>\n";
  }
  for (const auto& c : ls.comps) {
    s += "  <path d=\"" + path_of(c.pts, c.closed) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" + fmt_g(stroke) + "\"/>\n";
  }
  for (const auto& p : target.poles) {
    if (p.at_infinity) continue;
    s += "  <circle cx=\"" + fmt_g(p.z.real()) + "\" cy=\"" + fmt_g(-p.z.imag()) + "\" r=\"" +
         fmt_g(2 * stroke) + "\" fill=\"#000000\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

// node index, parameter, position, density, cumulative  (per component)
inline std::string density_csv(const measure_density& md,
                               const std::vector<boundary_component>& comps) {
  std::string s = "component,node,t,x,y,density,cumulative\n";
  for (size_t ci = 0; ci < md.comps.size(); ++ci) {
    const auto& cd = md.comps[ci];
    const auto& geom = comps[ci];
    for (size_t j = 0; j < cd.rho.size(); ++j) {
      double tau = two_pi * double(j) / double(cd.rho.size());
      s += std::to_string(ci) + "," + std::to_string(j) + "," + fmt_g(geom.curve_t(tau)) + "," +
           fmt_g(geom.x[j].real()) + "," + fmt_g(geom.x[j].imag()) + "," + fmt_g(cd.rho[j]) +
           "," + fmt_g(cd.cumulative.eval(tau)) + "\n";
    }
  }
  return s;
}

inline std::string partition_csv(const boundary_partition& bp) {
  std::string s = "face,component,j,t,x,y,arc_measure\n";
  for (size_t ci = 0; ci < bp.comps.size(); ++ci) {
    const auto& c = bp.comps[ci];
    for (size_t j = 0; j < c.points.size(); ++j) {
      s += std::to_string(bp.face_id) + "," + std::to_string(ci) + "," + std::to_string(j) +
           "," + fmt_g(c.t[j]) + "," + fmt_g(c.points[j].real()) + "," +
           fmt_g(c.points[j].imag()) + "," + fmt_g(c.arc_measure[j]) + "\n";
    }
  }
  return s;
}

inline std::string polyline_csv(const level_set& ls) {
  std::string s = "component,closed,k,x,y\n";
  for (size_t ci = 0; ci < ls.comps.size(); ++ci) {
    for (size_t k = 0; k < ls.comps[ci].pts.size(); ++k) {
      s += std::to_string(ci) + "," + std::to_string(int(ls.comps[ci].closed)) + "," +
           std::to_string(k) + "," + fmt_g(ls.comps[ci].pts[k].real()) + "," +
           fmt_g(ls.comps[ci].pts[k].imag()) + "\n";
    }
  }
  return s;
}

}  // namespace lemni

#endif
