#ifndef LEMNI_PARTITION_HPP
#define LEMNI_PARTITION_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "lemni/potential.hpp"
#include "lemni/rational.hpp"

namespace lemni {

// Points splitting the boundary of one grey face into arcs of equal summed
// harmonic measure |P_B|/m.  Points are reported in original coordinates
// (curve parametrization is preserved by normalization, so parameters are
// valid on both sides).
struct boundary_partition {
  int face_id = -1;         // original face
  int solved_face_id = -1;  // face in the solve-side scene
  long long m = 0;
  int pole_count = 0;       // |P_B|

  struct component_part {
    int curve_id = -1;
    int sign = +1;              // effective direction (face on the left)
    double anchor_t = 0;        // curve parameter of the first point
    std::vector<double> tau;    // effective parameters, increasing from 0
    std::vector<double> t;      // original curve parameters
    std::vector<cplx> points;
    std::vector<double> arc_measure;  // summed measure from point j to j+1
    double total_measure = 0;         // component mass (summed over poles)
  };
  std::vector<component_part> comps;

  size_t total_points() const {
    size_t n = 0;
    for (const auto& c : comps) n += c.points.size();
    return n;
  }
};

inline boundary_partition partition_boundary(const potential_field& pf, int face_id,
                                             long long m) {
  int solved_face = pf.face_map.at(size_t(face_id));
  std::vector<int> pole_idx = pf.poles_in_solved_face(solved_face);
  if (pole_idx.empty()) fail(errc::invalid_argument, "face has no poles to sample against");
  const harmonic_solution& ref = pf.sols[size_t(pole_idx[0])];
  size_t ncomp = ref.comps.size();
  if (m < (long long)(ncomp))
    fail(errc::invalid_argument, "m must be at least the number of boundary components");

  boundary_partition bp;
  bp.face_id = face_id;
  bp.solved_face_id = solved_face;
  bp.m = m;
  bp.pole_count = int(pole_idx.size());

  // summed density per component and its exact cumulative
  std::vector<trig_cumulative> cums(ncomp);
  std::vector<double> mass(ncomp, 0.0);
  double mass_all = 0;
  for (size_t ci = 0; ci < ncomp; ++ci) {
    const auto& geom = ref.comps[ci];
    std::vector<double> w(geom.n, 0.0);
    double min_density = inf;
    for (int pi : pole_idx) {
      const auto& cd = pf.densities[size_t(pi)].comps[ci];
      for (size_t j = 0; j < geom.n; ++j) w[j] += cd.rho[j] * geom.speed[j];
    }
    for (double v : w) min_density = std::min(min_density, v);
    if (min_density <= 0)
      fail(errc::resolution_too_low, "summed boundary density is not strictly positive");
    cums[ci] = trig_cumulative::build(w);
    mass[ci] = cums[ci].total();
    mass_all += mass[ci];
  }
  double alpha = double(bp.pole_count) / mass_all;  // normalizes total mass to |P_B|

  // per-component counts: floor allocation, remainders by largest fraction
  std::vector<long long> count(ncomp, 0);
  std::vector<double> frac(ncomp, 0.0);
  long long assigned = 0;
  for (size_t ci = 0; ci < ncomp; ++ci) {
    double ideal = double(m) * mass[ci] / mass_all;
    count[ci] = (long long)(std::floor(ideal + 1e-12));
    frac[ci] = ideal - double(count[ci]);
    assigned += count[ci];
  }
  std::vector<size_t> order(ncomp);
  std::iota(order.begin(), order.end(), size_t(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return frac[a] > frac[b]; });
  for (size_t k = 0; assigned < m; ++k, ++assigned) count[order[k % ncomp]] += 1;

  double step_raw = (double(bp.pole_count) / double(m)) / alpha;

  for (size_t ci = 0; ci < ncomp; ++ci) {
    const auto& geom = ref.comps[ci];
    boundary_partition::component_part part;
    part.curve_id = geom.curve_id;
    part.sign = geom.sign;
    part.anchor_t = 0.0;  // the minimal-parameter boundary point anchors the walk
    part.total_measure = alpha * mass[ci];
    const analytic_curve& curve = pf.original.curves[size_t(geom.curve_id)];

    long long n_c = count[ci];
    double prev_tau = 0.0;
    for (long long j = 0; j < n_c; ++j) {
      double tau;
      if (j == 0) {
        tau = 0.0;
      } else {
        double target = double(j) * step_raw;
        double lo = prev_tau, hi = two_pi;
        for (int it = 0; it < 90; ++it) {
          double mid = 0.5 * (lo + hi);
          if (cums[ci].eval(mid) < target)
            lo = mid;
          else
            hi = mid;
        }
        tau = 0.5 * (lo + hi);
      }
      part.tau.push_back(tau);
      double t = wrap_2pi(geom.sign >= 0 ? tau : -tau);
      part.t.push_back(t);
      part.points.push_back(curve.eval(t));
      prev_tau = tau;
    }
    for (long long j = 0; j < n_c; ++j) {
      double lo = part.tau[size_t(j)];
      double hi = (j + 1 < n_c) ? part.tau[size_t(j + 1)] : two_pi;
      part.arc_measure.push_back(alpha * (cums[ci].eval(hi) - cums[ci].eval(lo)));
    }
    bp.comps.push_back(std::move(part));
  }
  return bp;
}

// r_m: zeros at the partition points with multiplicity |P_B|, every pole of
// the scene with multiplicity m.  Poles at infinity contribute no factor.
inline rational_function build_rational(const scene& s,
                                        const std::vector<boundary_partition>& partitions,
                                        long long m) {
  rational_function r;
  r.m = m;
  for (const auto& bp : partitions) {
    if (bp.m != m) fail(errc::invalid_argument, "partitions disagree on m");
    for (const auto& comp : bp.comps)
      for (cplx z : comp.points) r.zeros.push_back({z, bp.pole_count});
  }
  for (const auto& p : s.poles) {
    if (p.at_infinity)
      r.inf_pole_mult += m;
    else
      r.poles.push_back({p.z, m});
  }
  return r;
}

// Shifts log|r| so that u_m matches the target potential on the probe set
// (median of the discrepancies).  Needed whenever a pole sits at infinity:
// the plain zero product carries the Robin-constant offset.
inline rational_function calibrate_u_m(const rational_function& r, const potential_field& pf,
                                       const std::vector<cplx>& probes) {
  std::vector<double> shifts;
  for (cplx z : probes) {
    double um = r.u_m(z);
    if (!std::isfinite(um)) continue;
    shifts.push_back(pf.u(z) - um);
  }
  if (shifts.empty()) fail(errc::invalid_argument, "no usable calibration probes");
  std::nth_element(shifts.begin(), shifts.begin() + long(shifts.size() / 2), shifts.end());
  double shift = shifts[shifts.size() / 2];
  return r.scaled_by_log(double(r.m) * shift);
}

// Full pipeline for one scene: solve, partition every grey face, assemble
// r_m (calibrated when a pole sits at infinity).
struct sampled_rational {
  potential_field pot;
  std::vector<boundary_partition> partitions;
  rational_function r;
};

inline std::vector<cplx> calibration_probes(const scene& s, double offset_rel = 0.08) {
  std::vector<cplx> probes;
  for (const auto& c : s.curves) {
    size_t n = c.sample_count();
    double off = offset_rel * s.scale;
    for (size_t j = 0; j < n; j += std::max<size_t>(1, n / 32)) {
      cplx nrm = cplx(0, 1) * c.d1()[j] / std::abs(c.d1()[j]);
      for (double side : {1.0, -1.0}) {
        cplx z = c.samples()[j] + side * off * nrm;
        bool clear = true;
        for (const auto& other : s.curves)
          if (other.polyline_distance(z) < 0.5 * off) clear = false;
        for (const auto& p : s.poles)
          if (!p.at_infinity && std::abs(p.z - z) < 0.5 * off) clear = false;
        if (clear) probes.push_back(z);
      }
    }
  }
  return probes;
}

inline sampled_rational build_sampled_rational(const scene& s, long long m,
                                               green_options opt = {}) {
  sampled_rational out;
  out.pot = solve_scene(s, opt);
  for (const face& f : s.faces) {
    if (f.color != face_color::grey) continue;
    out.partitions.push_back(partition_boundary(out.pot, f.id, m));
  }
  out.r = build_rational(s, out.partitions, m);
  bool has_inf = false;
  for (const auto& p : s.poles) has_inf = has_inf || p.at_infinity;
  if (has_inf) out.r = calibrate_u_m(out.r, out.pot, calibration_probes(s));
  return out;
}

}  // namespace lemni

#endif
