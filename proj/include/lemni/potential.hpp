#ifndef LEMNI_POTENTIAL_HPP
#define LEMNI_POTENTIAL_HPP

#include <map>
#include <vector>

#include "lemni/green.hpp"
#include "lemni/scene.hpp"

namespace lemni {

// The potential u(z) = sum over poles of the Green's function of the pole's
// face, together with the per-pole boundary measure data.  All solves run on
// the Moebius-normalized scene (infinity in a white face, poles finite);
// evaluation maps through the transform, under which Green's values are
// invariant.
class potential_field {
 public:
  scene original;
  normalized_scene norm;                  // norm.sc is the solve-side scene
  std::vector<int> face_map;              // original face id -> solved face id
  std::vector<int> inv_face_map;          // solved face id -> original face id
  std::vector<harmonic_solution> sols;    // one per pole, original pole order
  std::vector<measure_density> densities;

  const scene& solved_scene() const { return norm.sc; }

  cplx to_solved(cplx z) const { return norm.T(z); }

  double u(cplx z) const {
    cplx w = norm.T(z);
    double acc = 0;
    for (const auto& s : sols) acc += s.green(w);
    return acc;
  }

  double u_at_infinity() const {
    ext_point w = norm.T.apply(ext_point::infinity());
    if (w.at_infinity) return 0.0;  // normalized scenes keep infinity white
    double acc = 0;
    for (const auto& s : sols) acc += s.green(w.z);
    return acc;
  }

  // gradient (u_x + i u_y) in original coordinates
  cplx grad(cplx z) const {
    cplx w = norm.T(z);
    cplx g(0, 0);
    for (const auto& s : sols) {
      if (s.inside_face(w)) g += s.grad(w);
    }
    return g * std::conj(norm.T.deriv(z));
  }

  // poles (indices into original.poles) whose face is the given solved face
  std::vector<int> poles_in_solved_face(int solved_face_id) const {
    std::vector<int> out;
    for (size_t pi = 0; pi < sols.size(); ++pi)
      if (sols[pi].face_id == solved_face_id) out.push_back(int(pi));
    return out;
  }
};

inline potential_field solve_scene(const scene& s, green_options opt = {}) {
  potential_field pf;
  pf.original = s;
  pf.norm = moebius_normalize(s, normalize_mode::all_finite);
  const scene& ns = pf.norm.sc;

  // face correspondence via interior probes
  pf.face_map.assign(s.faces.size(), -1);
  pf.inv_face_map.assign(ns.faces.size(), -1);
  for (const face& f : s.faces) {
    cplx probe = f.unbounded() && pf.norm.changed ? s.interior_probe(0) : s.interior_probe(f.id);
    int nf;
    if (f.unbounded() && !pf.norm.changed)
      nf = 0;
    else
      nf = ns.face_of(pf.norm.T(probe));
    pf.face_map[size_t(f.id)] = nf;
    pf.inv_face_map[size_t(nf)] = f.id;
  }

  // one factorization per face, one solve per pole
  std::map<int, face_system> systems;
  for (size_t pi = 0; pi < ns.poles.size(); ++pi) {
    const ext_point& p = ns.poles[pi];
    if (p.at_infinity) fail(errc::invalid_argument, "normalization left a pole at infinity");
    int fid = ns.face_of(p.z);
    auto it = systems.find(fid);
    if (it == systems.end()) it = systems.emplace(fid, face_system(ns, fid, opt)).first;
    pf.sols.push_back(it->second.solve(p.z));
    pf.densities.push_back(compute_measure_density(pf.sols.back()));
  }
  return pf;
}

// u_{H,P} as a plain callable pair (field, gradient), original coordinates.
struct potential_callbacks {
  const potential_field* pf;
  double operator()(cplx z) const { return pf->u(z); }
  cplx gradient(cplx z) const { return pf->grad(z); }
};

}  // namespace lemni

#endif
