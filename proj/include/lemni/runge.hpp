#ifndef LEMNI_RUNGE_HPP
#define LEMNI_RUNGE_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lemni/hausdorff.hpp"
#include "lemni/levelset.hpp"
#include "lemni/parallel.hpp"
#include "lemni/partition.hpp"
#include "lemni/potential.hpp"
#include "lemni/rational.hpp"

namespace lemni {

// ---------------------------------------------------------------------------
// builtin test functions

struct analytic_fn {
  std::string name;
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> df;
  std::vector<cplx> singularities;  // empty for entire functions
  bool entire = false;
};

// Registry keys: "inv2mz" = 1/(2-z), "expz" = e^z, "inv_shift:a[,b]" = 1/(z-(a+bi)).
inline analytic_fn make_builtin(const std::string& key) {
  analytic_fn fn;
  fn.name = key;
  if (key == "inv2mz") {
    fn.f = [](cplx z) { return 1.0 / (2.0 - z); };
    fn.df = [](cplx z) { return 1.0 / ((2.0 - z) * (2.0 - z)); };
    fn.singularities = {cplx(2, 0)};
    return fn;
  }
  if (key == "expz") {
    fn.f = [](cplx z) { return std::exp(z); };
    fn.df = [](cplx z) { return std::exp(z); };
    fn.entire = true;
    return fn;
  }
  if (key.rfind("inv_shift:", 0) == 0) {
    std::string args = key.substr(10);
    double re = 0, im = 0;
    size_t comma = args.find(',');
    try {
      re = std::stod(comma == std::string::npos ? args : args.substr(0, comma));
      if (comma != std::string::npos) im = std::stod(args.substr(comma + 1));
    } catch (const std::exception&) {
      fail(errc::invalid_argument, "bad inv_shift argument: " + args);
    }
    cplx w(re, im);
    fn.f = [w](cplx z) { return 1.0 / (z - w); };
    fn.df = [w](cplx z) { return -1.0 / ((z - w) * (z - w)); };
    fn.singularities = {w};
    return fn;
  }
  fail(errc::invalid_argument, "unknown builtin function: " + key);
}

// sum of 1/(z - w) over several shifts: handy multi-singularity test case
inline analytic_fn make_inv_sum(const std::vector<cplx>& ws) {
  analytic_fn fn;
  fn.name = "inv_sum";
  fn.f = [ws](cplx z) {
    cplx acc(0, 0);
    for (cplx w : ws) acc += 1.0 / (z - w);
    return acc;
  };
  fn.df = [ws](cplx z) {
    cplx acc(0, 0);
    for (cplx w : ws) acc -= 1.0 / ((z - w) * (z - w));
    return acc;
  };
  fn.singularities = ws;
  return fn;
}

// ---------------------------------------------------------------------------
// level-curve contours fit for spectral quadrature

namespace detail {

// March along +/- grad u until the potential crosses `level`, then bisect.
inline std::optional<cplx> cross_level(const potential_field& pot, cplx z0, double level,
                                       double scale) {
  double u0 = pot.u(z0);
  cplx z = z0;
  double u = u0;
  bool up = u0 < level;
  for (int it = 0; it < 4000; ++it) {
    cplx g = pot.grad(z);
    double gn = std::abs(g);
    if (gn < 1e-12) return std::nullopt;
    double gap = level - u;
    double step = std::clamp(std::abs(gap) / gn, 1e-4 * scale, 0.05 * scale);
    cplx z1 = z + (gap > 0 ? 1.0 : -1.0) * step * g / gn;
    double u1 = pot.u(z1);
    if ((u1 >= level) != (u >= level)) {
      // bisect the bracket [z, z1]
      cplx a = z, b = z1;
      for (int k = 0; k < 60; ++k) {
        cplx mid = 0.5 * (a + b);
        if ((pot.u(mid) >= level) == (u >= level))
          a = mid;
        else
          b = mid;
      }
      return 0.5 * (a + b);
    }
    z = z1;
    u = u1;
    if (!std::isfinite(u)) return std::nullopt;
  }
  (void)up;
  return std::nullopt;
}

inline std::vector<cplx> level_seeds(const potential_field& pot, double level) {
  const scene& s = pot.original;
  std::vector<cplx> seeds;
  for (const face& f : s.faces) {
    if (f.color != face_color::grey) continue;
    // from each pole outward
    for (int pi : f.pole_indices) {
      cplx start;
      if (s.poles[size_t(pi)].at_infinity)
        start = cplx(s.box.x1 + 2.5 * s.scale, s.box.y1 + 2.0 * s.scale);
      else {
        // slight offset; u is huge near the pole
        start = s.poles[size_t(pi)].z + cplx(1e-3 * s.scale, 0);
      }
      if (auto z = cross_level(pot, start, level, s.scale)) seeds.push_back(*z);
    }
    // from each boundary component inward
    for (int cid : f.boundary_curves()) {
      const analytic_curve& c = s.curves[size_t(cid)];
      for (size_t j : {size_t(0), c.sample_count() / 3}) {
        cplx nrm = cplx(0, 1) * c.d1()[j] / std::abs(c.d1()[j]);
        for (double side : {1.0, -1.0}) {
          cplx z0 = c.samples()[j] + side * 0.02 * s.scale * nrm;
          bool in_face = false;
          try {
            in_face = s.face_of(z0) == f.id;
          } catch (const error&) {
            continue;
          }
          if (!in_face) continue;
          if (auto z = cross_level(pot, z0, level, s.scale)) seeds.push_back(*z);
        }
      }
    }
  }
  return seeds;
}

// Equal-arclength resampling of a closed polyline to n points.
inline std::vector<cplx> resample_closed(const std::vector<cplx>& pts, size_t n) {
  size_t m = pts.size();
  std::vector<double> cum(m + 1, 0.0);
  for (size_t i = 0; i < m; ++i)
    cum[i + 1] = cum[i] + std::abs(pts[(i + 1) % m] - pts[i]);
  double total = cum[m];
  std::vector<cplx> out(n);
  size_t seg = 0;
  for (size_t k = 0; k < n; ++k) {
    double target = total * double(k) / double(n);
    while (seg + 1 < m + 1 && cum[seg + 1] < target) ++seg;
    double t = (target - cum[seg]) / std::max(cum[seg + 1] - cum[seg], 1e-300);
    out[k] = pts[seg % m] + t * (pts[(seg + 1) % m] - pts[seg % m]);
  }
  return out;
}

}  // namespace detail

// Traces {u = level}, fits each component as an analytic curve, and Newton-
// projects the fit back onto the level set so the parametrization is smooth
// and the nodes sit on the curve to tracing tolerance.
inline std::vector<analytic_curve> trace_potential_contour(const potential_field& pot,
                                                           double level, double step_rel = 5e-3) {
  const scene& s = pot.original;
  field_fn f = [&](cplx z) { return pot.u(z); };
  grad_fn g = [&](cplx z) { return pot.grad(z); };
  trace_options topt;
  topt.step = step_rel * s.scale;
  topt.tol = 1e-11;
  level_set ls = trace_level(f, g, detail::level_seeds(pot, level), level, topt);
  std::vector<analytic_curve> out;
  for (const auto& comp : ls.comps) {
    std::vector<cplx> nodes = detail::resample_closed(comp.pts, 1024);
    analytic_curve fit = analytic_curve::fit(nodes, 1e-11);
    // project the smooth parametrization back onto the level set twice
    for (int round = 0; round < 2; ++round) {
      std::vector<cplx> proj(1024);
      for (size_t k = 0; k < 1024; ++k) {
        cplx z = fit.eval(two_pi * double(k) / 1024.0);
        proj[k] = detail::newton_project(f, g, z, level, 1e-12, 1e-12);
      }
      fit = analytic_curve::fit(proj, 1e-12);
    }
    out.push_back(std::move(fit));
  }
  return out;
}

// ---------------------------------------------------------------------------
// the Runge problem

struct runge_options {
  long long m0 = 16;           // initial sampling parameter for the separating r
  int max_doublings = 5;
  size_t contour_nodes = 512;  // starting quadrature nodes per contour component
  double quad_tol = 1e-12;
  size_t max_contour_nodes = 8192;
  long long certify_n = 8;     // quadrature certified up to this power
  bool taylor_r = false;           // r(z) = z - taylor_zero instead of the pipeline
  cplx taylor_zero{0, 0};
  green_options green;
};

struct runge_problem {
  scene K;
  analytic_fn f;
  double R = 0, rho = 0;
  long long m = 0;
  rational_function r;
  long long d = 0;
  potential_field pot;

  struct contour_comp {
    analytic_curve curve;
    size_t nodes = 0;
    std::vector<cplx> x, dx, S, fx;  // quadrature tables; S = log r
  };
  std::vector<contour_comp> CR;

  // measured geometry
  double length_CR = 0, dist_K_CR = 0, sup_f_K = 0;
  double sup_logr_K = 0, min_logr_CR = 0;
  double B_measured = 0;  // exp((min_CR log|r| - sup_K log|r|) / d)
  double B_theory = 0;    // R / rho
  double A_paper = 0;     // sup|f| length / (2 pi dist B)

  std::vector<cplx> boundary_probes;  // dense samples of every K curve
  std::vector<cplx> interior_probes;  // coarse grid over the white faces

  int contour_winding(cplx z) const {
    double acc = 0;
    for (const auto& c : CR) {
      for (size_t k = 0; k < c.nodes; ++k) acc += (c.dx[k] / (c.x[k] - z)).imag();
    }
    // all components share the node count by construction
    return int(std::lround(acc / double(CR[0].nodes)));
  }
};

namespace detail {

inline void build_quadrature(runge_problem& prob, size_t nodes) {
  for (auto& comp : prob.CR) {
    comp.nodes = nodes;
    comp.x.resize(nodes);
    comp.dx.resize(nodes);
    comp.S.resize(nodes);
    comp.fx.resize(nodes);
    for (size_t k = 0; k < nodes; ++k) {
      double t = two_pi * double(k) / double(nodes);
      comp.x[k] = comp.curve.eval(t);
      comp.dx[k] = comp.curve.deriv(t, 1);
      comp.S[k] = prob.r.log_eval(comp.x[k]);
      comp.fx[k] = prob.f.f(comp.x[k]);
    }
  }
}

// core quadrature: winding * f(z) - (1/2pi i) sum f(zeta)/(zeta-z) e^{n(S(z)-S(zeta))} dzeta
inline cplx approximant_quadrature(const runge_problem& prob, long long n, cplx z, int winding) {
  cplx Sz = prob.r.log_eval(z);
  cplx acc(0, 0);
  for (const auto& comp : prob.CR) {
    cplx part(0, 0);
    for (size_t k = 0; k < comp.nodes; ++k) {
      cplx expo = double(n) * (Sz - comp.S[k]);
      cplx bracket;
      if (expo.real() == -inf)
        bracket = cplx(0, 0);
      else if (expo.real() > 690.0)
        bracket = cplx(inf, 0);
      else
        bracket = std::exp(expo);
      part += comp.fx[k] / (comp.x[k] - z) * bracket * comp.dx[k];
    }
    acc += part / (cplx(0, 1) * double(comp.nodes));
  }
  return double(winding) * prob.f.f(z) - acc;
}

}  // namespace detail

// Builds u_{bd K, P}, chooses the separating rational map (Section-4 pipeline
// aimed at the level curve C_rho, or r = z - a in Taylor mode), traces C_R,
// and verifies the two-sided separation, doubling m until it holds.
inline runge_problem setup_problem(const scene& K, const analytic_fn& f, double R, double rho,
                                   runge_options opt = {}) {
  if (!(1.0 < rho && rho < R))
    fail(errc::invalid_argument, "need 1 < rho < R");
  if (K.unbounded_color != face_color::grey)
    fail(errc::invalid_argument, "K-scenes need a grey unbounded face (K compact)");
  for (const face& fc : K.faces) {
    if (fc.color == face_color::grey && fc.pole_indices.size() != 1)
      fail(errc::invalid_argument, "exactly one pole per grey face is required here");
  }

  runge_problem prob;
  prob.K = K;
  prob.f = f;
  prob.R = R;
  prob.rho = rho;
  prob.pot = solve_scene(K, opt.green);

  // probe sets over K
  for (const auto& c : K.curves) {
    auto pts = c.dense_polyline(256);
    prob.boundary_probes.insert(prob.boundary_probes.end(), pts.begin(), pts.end());
  }
  {
    bbox b = K.box.padded(0.05 * K.scale);
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) {
        cplx z(b.x0 + b.width() * (i + 0.5) / 24.0, b.y0 + b.height() * (j + 0.5) / 24.0);
        try {
          if (K.faces[size_t(K.face_of(z))].color == face_color::white)
            prob.interior_probes.push_back(z);
        } catch (const error&) {
        }
      }
    }
  }

  // f must be analytic on a neighborhood of the region C_R encloses;
  // singularities must sit strictly beyond C_R (u > log R)
  if (!f.entire) {
    for (cplx w : f.singularities) {
      double uw;
      try {
        int fid = K.face_of(w);
        uw = (K.faces[size_t(fid)].color == face_color::white) ? 0.0 : prob.pot.u(w);
      } catch (const error&) {
        uw = 0.0;
      }
      if (uw <= std::log(R) + 1e-9)
        fail(errc::function_not_analytic_on_contour,
             "singularity at u = " + std::to_string(uw) + " is not beyond C_R");
    }
  }

  // trace C_R once; r changes with m but the contour does not
  std::vector<analytic_curve> cr = trace_potential_contour(prob.pot, std::log(R));
  for (auto& c : cr) {
    runge_problem::contour_comp comp;
    comp.curve = std::move(c);
    prob.CR.push_back(std::move(comp));
  }

  prob.length_CR = 0;
  prob.dist_K_CR = inf;
  for (const auto& comp : prob.CR) {
    prob.length_CR += comp.curve.length();
    for (cplx z : comp.curve.samples())
      for (cplx w : prob.boundary_probes)
        prob.dist_K_CR = std::min(prob.dist_K_CR, std::abs(z - w));
  }
  for (cplx z : prob.boundary_probes) prob.sup_f_K = std::max(prob.sup_f_K, std::abs(f.f(z)));
  for (cplx z : prob.interior_probes) prob.sup_f_K = std::max(prob.sup_f_K, std::abs(f.f(z)));

  // choose r, doubling m until the measured separation supports a usable B.
  // With |P| poles the per-degree rate tops out at (R/rho)^{1/|P|}.
  long long m = opt.m0;
  double log_B_need = 0.5 * std::log(R / rho) / double(K.poles.size());
  for (int attempt = 0;; ++attempt) {
    if (opt.taylor_r) {
      prob.r = rational_function::monomial(opt.taylor_zero);
      prob.m = 1;
    } else {
      // zeros equal-spaced in harmonic measure along C_rho: the flux of
      // grad u through each component carries the measure density
      std::vector<analytic_curve> crho = trace_potential_contour(prob.pot, std::log(rho));
      rational_function r;
      r.m = m;
      // group components by grey face (via a point just outside the curve...
      // the pole each component encloses identifies its face)
      std::vector<double> mass(crho.size(), 0.0);
      std::vector<trig_cumulative> cums(crho.size());
      for (size_t ci = 0; ci < crho.size(); ++ci) {
        const analytic_curve& c = crho[ci];
        size_t nn = c.sample_count();
        std::vector<double> w(nn);
        for (size_t k = 0; k < nn; ++k)
          w[k] = std::abs(prob.pot.grad(c.samples()[k])) * std::abs(c.d1()[k]) / two_pi;
        cums[ci] = trig_cumulative::build(w);
        mass[ci] = cums[ci].total();
      }
      // allocate m zeros per grey face across that face's components
      for (const face& fc : K.faces) {
        if (fc.color != face_color::grey) continue;
        std::vector<size_t> mine;
        double face_mass = 0;
        for (size_t ci = 0; ci < crho.size(); ++ci) {
          cplx probe = crho[ci].samples()[0];
          int fid;
          try {
            fid = K.face_of(probe);
          } catch (const error&) {
            continue;
          }
          if (fid == fc.id) {
            mine.push_back(ci);
            face_mass += mass[ci];
          }
        }
        if (mine.empty()) fail(errc::separation_failed, "no C_rho component in a grey face");
        // floor allocation by mass, remainders by largest fraction
        std::vector<long long> cnt(mine.size(), 0);
        std::vector<double> frac(mine.size());
        long long assigned = 0;
        for (size_t i = 0; i < mine.size(); ++i) {
          double ideal = double(m) * mass[mine[i]] / face_mass;
          cnt[i] = (long long)std::floor(ideal + 1e-12);
          frac[i] = ideal - double(cnt[i]);
          assigned += cnt[i];
        }
        std::vector<size_t> ord(mine.size());
        std::iota(ord.begin(), ord.end(), size_t(0));
        std::stable_sort(ord.begin(), ord.end(),
                         [&](size_t a, size_t b) { return frac[a] > frac[b]; });
        for (size_t k = 0; assigned < m; ++k, ++assigned) cnt[ord[k % ord.size()]] += 1;
        for (size_t i = 0; i < mine.size(); ++i) {
          size_t ci = mine[i];
          double step = mass[ci] / std::max<double>(1.0, double(cnt[i]));
          for (long long j = 0; j < cnt[i]; ++j) {
            double target = double(j) * step;
            double lo = 0, hi = two_pi;
            for (int it = 0; it < 80; ++it) {
              double mid = 0.5 * (lo + hi);
              if (cums[ci].eval(mid) < target)
                lo = mid;
              else
                hi = mid;
            }
            r.zeros.push_back({crho[ci].eval(0.5 * (lo + hi)), 1});
          }
        }
      }
      for (const auto& p : K.poles) {
        if (p.at_infinity)
          r.inf_pole_mult += m;
        else
          r.poles.push_back({p.z, m});
      }
      // calibrate so that sup_K log|r| = 0 exactly: L_r(1) then separates
      double sup_raw = -inf;
      for (cplx z : prob.boundary_probes) sup_raw = std::max(sup_raw, r.log_abs(z));
      r.log_prefactor = -sup_raw;
      prob.r = r;
      prob.m = m;
    }
    prob.d = prob.r.degree();

    // measured separation
    prob.sup_logr_K = -inf;
    for (cplx z : prob.boundary_probes)
      prob.sup_logr_K = std::max(prob.sup_logr_K, prob.r.log_abs(z));
    for (cplx z : prob.interior_probes)
      prob.sup_logr_K = std::max(prob.sup_logr_K, prob.r.log_abs(z));
    prob.min_logr_CR = inf;
    for (const auto& comp : prob.CR)
      for (cplx z : comp.curve.samples())
        prob.min_logr_CR = std::min(prob.min_logr_CR, prob.r.log_abs(z));
    double logB = (prob.min_logr_CR - prob.sup_logr_K) / double(prob.d);
    prob.B_measured = std::exp(logB);
    bool separated = prob.sup_logr_K <= 1e-9 && logB >= log_B_need;
    if (separated) break;
    if (opt.taylor_r || attempt >= opt.max_doublings)
      fail(errc::separation_failed,
           "lemniscate separation not achieved (sup_K log|r| = " +
               std::to_string(prob.sup_logr_K) + ", log B = " + std::to_string(logB) + ")");
    m *= 2;
  }

  // Constants of the bound from the traced geometry.  B is the certified
  // per-degree separation ratio; it equals R/rho (up to discretization) when
  // P is a single pole, which is the configuration the R/rho formula is
  // normalized for.
  prob.B_theory = R / rho;
  prob.A_paper = prob.sup_f_K * prob.length_CR / (two_pi * prob.dist_K_CR * prob.B_measured);

  // quadrature tables, certified by node doubling at interior probes and at
  // the largest power the caller intends to use
  size_t nodes = opt.contour_nodes;
  detail::build_quadrature(prob, nodes);
  std::vector<cplx> certify(prob.interior_probes.begin(),
                            prob.interior_probes.begin() +
                                std::min<size_t>(5, prob.interior_probes.size()));
  while (true) {
    std::vector<cplx> vals;
    for (cplx z : certify) {
      vals.push_back(detail::approximant_quadrature(prob, 1, z, 1));
      vals.push_back(detail::approximant_quadrature(prob, opt.certify_n, z, 1));
    }
    runge_problem doubled = prob;
    detail::build_quadrature(doubled, nodes * 2);
    double worst = 0;
    size_t vi = 0;
    for (cplx z : certify) {
      worst = std::max(worst,
                       std::abs(detail::approximant_quadrature(doubled, 1, z, 1) - vals[vi++]));
      worst = std::max(worst, std::abs(detail::approximant_quadrature(doubled, opt.certify_n,
                                                                      z, 1) -
                                       vals[vi++]));
    }
    if (worst < opt.quad_tol) break;
    nodes *= 2;
    detail::build_quadrature(prob, nodes);
    if (nodes > opt.max_contour_nodes)
      fail(errc::quadrature_not_converged,
           "contour quadrature did not settle below tolerance");
  }
  return prob;
}

// winding-aware evaluation valid on and off the interior (used by the pole
// containment checks); the public operation enforces the interior contract
inline cplx approximant_eval_extended(const runge_problem& prob, long long n, cplx z) {
  if (n < 1) fail(errc::invalid_argument, "approximant order n must be >= 1");
  return detail::approximant_quadrature(prob, n, z, prob.contour_winding(z));
}

inline cplx approximant_eval(const runge_problem& prob, long long n, cplx z) {
  if (n < 1) fail(errc::invalid_argument, "approximant order n must be >= 1");
  int w = prob.contour_winding(z);
  if (w != 1)
    fail(errc::point_outside_contour,
         "z must be interior to C_R (winding 1, got " + std::to_string(w) + ")");
  return detail::approximant_quadrature(prob, n, z, 1);
}

// ---------------------------------------------------------------------------
// reports

struct runge_report {
  std::vector<long long> n_list;
  std::vector<long long> degree;      // dn - 1
  std::vector<double> sup_error;
  std::vector<double> bound_paper;    // A_paper / B_measured^{dn-1}
  std::vector<double> ratio;          // sup_error / bound_paper
  double A_paper = 0, B_measured = 0, B_theory = 0;
  double B_fit = 0, B_fit_stderr = 0, A_fit = 0;
};

inline runge_report error_scan(const runge_problem& prob, const std::vector<long long>& n_list) {
  runge_report rep;
  rep.A_paper = prob.A_paper;
  rep.B_measured = prob.B_measured;
  rep.B_theory = prob.B_theory;
  std::vector<cplx> probes = prob.boundary_probes;
  probes.insert(probes.end(), prob.interior_probes.begin(), prob.interior_probes.end());
  for (long long n : n_list) {
    std::vector<double> errs(probes.size(), 0.0);
    parallel_for(probes.size(), [&](size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i) {
        cplx v = detail::approximant_quadrature(prob, n, probes[i], 1);
        errs[i] = std::abs(v - prob.f.f(probes[i]));
      }
    });
    double sup = 0;
    for (double e : errs) sup = std::max(sup, e);
    long long N = prob.d * n - 1;
    rep.n_list.push_back(n);
    rep.degree.push_back(N);
    rep.sup_error.push_back(sup);
    double bound = rep.A_paper / std::pow(rep.B_measured, double(N));
    rep.bound_paper.push_back(bound);
    rep.ratio.push_back(sup / bound);
  }
  // log-linear fit: log err = log A - N log B
  size_t k = rep.n_list.size();
  if (k >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t used = 0;
    for (size_t i = 0; i < k; ++i) {
      if (rep.sup_error[i] <= 0 || rep.sup_error[i] < 1e-15) continue;
      double x = double(rep.degree[i]), y = std::log(rep.sup_error[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++used;
    }
    if (used >= 2) {
      double denom = double(used) * sxx - sx * sx;
      double slope = (double(used) * sxy - sx * sy) / denom;
      double icept = (sy - slope * sx) / double(used);
      rep.B_fit = std::exp(-slope);
      rep.A_fit = std::exp(icept);
      double ss = 0;
      for (size_t i = 0; i < k; ++i) {
        if (rep.sup_error[i] <= 0 || rep.sup_error[i] < 1e-15) continue;
        double pred = icept + slope * double(rep.degree[i]);
        ss += sqr(std::log(rep.sup_error[i]) - pred);
      }
      double var = used > 2 ? ss / double(used - 2) : 0.0;
      double slope_se = std::sqrt(var * double(used) / denom);
      rep.B_fit_stderr = rep.B_fit * slope_se;  // first-order in the exponent
    }
  }
  return rep;
}

struct interpolation_row {
  cplx zero;
  double residual_value = 0;   // |R(a) - f(a)|
  double residual_deriv = -1;  // |R'(a) - f'(a)| via central differences (n >= 2)
};

inline std::vector<interpolation_row> interpolation_check(const runge_problem& prob,
                                                          long long n) {
  std::vector<interpolation_row> rows;
  const double h = 1e-5;
  for (const auto& t : prob.r.zeros) {
    interpolation_row row;
    row.zero = t.z;
    cplx v = detail::approximant_quadrature(prob, n, t.z, prob.contour_winding(t.z));
    row.residual_value = std::abs(v - prob.f.f(t.z));
    if (n >= 2) {
      cplx vp = detail::approximant_quadrature(prob, n, t.z + h, prob.contour_winding(t.z));
      cplx vm = detail::approximant_quadrature(prob, n, t.z - h, prob.contour_winding(t.z));
      row.residual_deriv = std::abs((vp - vm) / (2 * h) - prob.f.df(t.z));
    }
    rows.push_back(row);
  }
  return rows;
}

struct sharpness_report {
  bool applicable = false;
  double D = 0;  // exp(u at the nearest singularity)
  std::vector<long long> n_list;
  std::vector<double> sup_error;
  std::vector<double> factor;  // sup_error * D^{dn-1}
  double factor_min = inf, factor_max = 0;
};

// Empirical direction of the sharpness statement: the constructed sequence
// cannot beat geometric decay at rate D determined by where f stops being
// holomorphic (u(w) = log D).
inline sharpness_report sharpness_experiment(const runge_problem& prob,
                                             const std::vector<long long>& n_list) {
  sharpness_report rep;
  if (prob.f.entire || prob.f.singularities.empty()) return rep;  // flagged inapplicable
  double umin = inf;
  for (cplx w : prob.f.singularities) {
    double uw;
    try {
      int fid = prob.K.face_of(w);
      uw = (prob.K.faces[size_t(fid)].color == face_color::white) ? 0.0 : prob.pot.u(w);
    } catch (const error&) {
      uw = 0.0;
    }
    if (uw > 0) umin = std::min(umin, uw);
  }
  if (!std::isfinite(umin)) return rep;
  rep.applicable = true;
  rep.D = std::exp(umin);
  runge_report scan = error_scan(prob, n_list);
  rep.n_list = scan.n_list;
  rep.sup_error = scan.sup_error;
  for (size_t i = 0; i < scan.n_list.size(); ++i) {
    double fac = scan.sup_error[i] * std::pow(rep.D, double(scan.degree[i]));
    rep.factor.push_back(fac);
    rep.factor_min = std::min(rep.factor_min, fac);
    rep.factor_max = std::max(rep.factor_max, fac);
  }
  return rep;
}

}  // namespace lemni

#endif
