#ifndef LEMNI_GREEN_HPP
#define LEMNI_GREEN_HPP

#include <Eigen/Dense>
#include <vector>

#include "lemni/core.hpp"
#include "lemni/fft.hpp"
#include "lemni/scene.hpp"

namespace lemni {

// Boundary component of a face, in the orientation that keeps the face on
// the left (outer curve counterclockwise, holes clockwise).  Node j sits at
// effective parameter tau_j = 2pi j / n; the underlying curve parameter is
// t = sign * tau.
struct boundary_component {
  int curve_id = -1;
  int sign = +1;  // +1: same direction as the stored curve, -1: reversed
  size_t n = 0;
  std::vector<cplx> x;    // gamma at nodes
  std::vector<cplx> dx;   // d gamma / d tau (sign applied)
  std::vector<cplx> ddx;  // d^2 gamma / d tau^2
  std::vector<double> speed;
  std::vector<double> mu;  // layer density at nodes (after solve)
  double length = 0;
  double speed_max = 0;

  // upsampled tables for near-boundary evaluation
  struct level {
    size_t n = 0;
    std::vector<cplx> x, dx;
    std::vector<double> mu;
  };
  level mid, fine;

  double curve_t(double tau) const { return wrap_2pi(sign >= 0 ? tau : -tau); }
  double tau_of_curve_t(double t) const { return wrap_2pi(sign >= 0 ? t : -t); }

  cplx inward_normal(size_t j) const { return cplx(0, 1) * dx[j] / std::abs(dx[j]); }
};

namespace detail {

inline boundary_component make_component(const analytic_curve& c, int curve_id, int sign,
                                         size_t n) {
  boundary_component bc;
  bc.curve_id = curve_id;
  bc.sign = sign;
  bc.n = n;
  bc.x.resize(n);
  bc.dx.resize(n);
  bc.ddx.resize(n);
  bc.speed.resize(n);
  for (size_t j = 0; j < n; ++j) {
    double tau = two_pi * double(j) / double(n);
    double t = sign >= 0 ? tau : -tau;
    bc.x[j] = c.eval(t);
    bc.dx[j] = double(sign) * c.deriv(t, 1);
    bc.ddx[j] = c.deriv(t, 2);
    bc.speed[j] = std::abs(bc.dx[j]);
    bc.speed_max = std::max(bc.speed_max, bc.speed[j]);
  }
  bc.length = c.length();
  return bc;
}

inline void fill_level(const analytic_curve& c, const boundary_component& bc,
                       boundary_component::level& lv, size_t m) {
  lv.n = m;
  lv.x.resize(m);
  lv.dx.resize(m);
  for (size_t j = 0; j < m; ++j) {
    double tau = two_pi * double(j) / double(m);
    double t = bc.sign >= 0 ? tau : -tau;
    lv.x[j] = c.eval(t);
    lv.dx[j] = double(bc.sign) * c.deriv(t, 1);
  }
  lv.mu = trig_upsample_real(bc.mu, m);
}

struct level_view {
  const std::vector<cplx>* x;
  const std::vector<cplx>* dx;
  const std::vector<double>* mu;
  size_t n;
};

// Double-layer sum over one component level: (1/2pi) int mu Im[g'/(g-z)] dtau
inline double layer_sum(const level_view& v, cplx z) {
  double acc = 0;
  for (size_t j = 0; j < v.n; ++j) {
    cplx q = (*v.dx)[j] / ((*v.x)[j] - z);
    acc += (*v.mu)[j] * q.imag();
  }
  return acc / double(v.n);
}

inline double winding_sum(const level_view& v, cplx z) {
  double acc = 0;
  for (size_t j = 0; j < v.n; ++j) acc += ((*v.dx)[j] / ((*v.x)[j] - z)).imag();
  return acc / double(v.n);
}

// d/dz of the Cauchy transform Psi(z) = (1/2pi i) int mu dzeta/(zeta - z)
inline cplx cauchy_deriv_sum(const level_view& v, cplx z) {
  cplx acc(0, 0);
  for (size_t j = 0; j < v.n; ++j) {
    cplx d = (*v.x)[j] - z;
    acc += (*v.mu)[j] * (*v.dx)[j] / (d * d);
  }
  return acc / (cplx(0, 1) * double(v.n));
}

}  // namespace detail

struct green_options {
  size_t nodes_per_component = 256;
  double solver_tol = 1e-8;     // boundary residual gate
  double offset_param = 4e-3;   // density offsets, in parameter units
  size_t mid_level = 4096;
  size_t fine_level = 32768;
};

// Green's function of one bounded face with one interior pole, from a
// second-kind double-layer solve augmented with one log source per hole.
class harmonic_solution {
 public:
  int face_id = -1;
  cplx pole{0, 0};
  std::vector<boundary_component> comps;
  std::vector<double> log_strength;  // one per hole
  std::vector<cplx> log_center;
  double boundary_residual = 0;
  green_options opt;

  // harmonic extension h of log|.-pole|, valid inside the face
  double eval_h(cplx z) const {
    double acc = 0;
    for (const auto& c : comps) acc += detail::layer_sum(pick_level(c, z), z);
    for (size_t h = 0; h < log_strength.size(); ++h)
      acc += log_strength[h] * std::log(std::abs(z - log_center[h]));
    return acc;
  }

  // winding of the oriented face boundary about z: 1 exactly inside the face
  int boundary_winding(cplx z) const {
    double w = 0;
    for (const auto& c : comps) w += detail::winding_sum(pick_level(c, z), z);
    return int(std::lround(w));
  }

  bool inside_face(cplx z) const { return boundary_winding(z) == 1; }

  // G_B(z, pole) with the zero-outside convention; +inf at the pole itself.
  double green(cplx z) const {
    double dz = std::abs(z - pole);
    if (dz == 0.0) return inf;
    if (boundary_distance(z) < 1e-12 * comps[0].length) return 0.0;
    if (!inside_face(z)) return 0.0;
    return green_inside(z);
  }

  // same, without the face-membership test (caller knows z is inside)
  double green_inside(cplx z) const { return eval_h(z) - std::log(std::abs(z - pole)); }

  // gradient (g_x + i g_y) of G at an interior point
  cplx grad(cplx z) const {
    cplx psi(0, 0);
    for (const auto& c : comps) psi += detail::cauchy_deriv_sum(pick_level(c, z, true), z);
    cplx g = std::conj(psi);
    for (size_t h = 0; h < log_strength.size(); ++h) {
      cplx d = z - log_center[h];
      g += log_strength[h] * d / std::norm(d);
    }
    cplx dp = z - pole;
    g -= dp / std::norm(dp);
    return g;
  }

  double boundary_distance(cplx z) const {
    double d = inf;
    for (const auto& c : comps)
      for (size_t j = 0; j < c.n; ++j) d = std::min(d, std::abs(c.x[j] - z));
    return d;
  }

 private:
  detail::level_view pick_level(const boundary_component& c, cplx z, bool sharp = false) const {
    double d = inf;
    for (size_t j = 0; j < c.n; ++j) d = std::min(d, std::abs(c.x[j] - z));
    double coarse_spacing = c.length / double(c.n);
    double delta = std::max(d - coarse_spacing, 0.0) / c.speed_max;  // parameter units
    const double need = sharp ? 40.0 : 36.0;
    if (delta * double(c.n) >= need) return {&c.x, &c.dx, &c.mu, c.n};
    if (delta * double(c.mid.n) >= need) return {&c.mid.x, &c.mid.dx, &c.mid.mu, c.mid.n};
    return {&c.fine.x, &c.fine.dx, &c.fine.mu, c.fine.n};
  }
};

// Assembled geometry plus LU factorization for one face, reusable across
// poles of that face.
class face_system {
 public:
  face_system(const scene& s, int face_id, green_options opt = {})
      : opt_(opt), face_id_(face_id) {
    const face& f = s.faces.at(size_t(face_id));
    if (f.unbounded())
      fail(errc::invalid_argument, "solver needs a bounded face; run moebius_normalize first");
    auto add = [&](int cid, bool outer) {
      int o = s.orientation[size_t(cid)];
      int sign = outer ? o : -o;
      curves_.push_back(s.curves[size_t(cid)]);
      comps_.push_back(
          detail::make_component(s.curves[size_t(cid)], cid, sign, opt.nodes_per_component));
    };
    add(f.outer_curve, true);
    for (int hole : f.hole_curves) {
      add(hole, false);
      log_center_.push_back(s.curves[size_t(hole)].interior_probe());
    }

    size_t total = 0;
    for (const auto& c : comps_) total += c.n;
    size_t holes = log_center_.size();
    Eigen::MatrixXd A(total + holes, total + holes);
    A.setZero();
    size_t row0 = 0;
    for (const auto& tc : comps_) {
      for (size_t i = 0; i < tc.n; ++i) {
        size_t row = row0 + i;
        cplx xi = tc.x[i];
        size_t col0 = 0;
        for (const auto& sc : comps_) {
          for (size_t j = 0; j < sc.n; ++j) {
            double k;
            if (&sc == &tc && j == i)
              k = (tc.ddx[i] / (2.0 * tc.dx[i])).imag() / double(tc.n);
            else
              k = (sc.dx[j] / (sc.x[j] - xi)).imag() / double(sc.n);
            A(long(row), long(col0 + j)) = k;
          }
          col0 += sc.n;
        }
        A(long(row), long(row)) += 0.5;
        for (size_t h = 0; h < holes; ++h)
          A(long(row), long(total + h)) = std::log(std::abs(xi - log_center_[h]));
      }
      row0 += tc.n;
    }
    // closure conditions: zero mean density on each hole boundary
    size_t col0 = comps_[0].n;
    for (size_t h = 0; h + 1 < comps_.size(); ++h) {
      for (size_t j = 0; j < comps_[h + 1].n; ++j)
        A(long(total + h), long(col0 + j)) = comps_[h + 1].speed[j] * two_pi /
                                             double(comps_[h + 1].n);
      col0 += comps_[h + 1].n;
    }
    lu_.compute(A);
    if (lu_.rcond() < 1e-14)
      fail(errc::solver_singular, "boundary system nearly singular");
  }

  harmonic_solution solve(cplx pole) const {
    size_t total = 0;
    for (const auto& c : comps_) total += c.n;
    size_t holes = log_center_.size();
    Eigen::VectorXd rhs(total + holes);
    size_t row0 = 0;
    for (const auto& c : comps_) {
      for (size_t i = 0; i < c.n; ++i) rhs(long(row0 + i)) = std::log(std::abs(c.x[i] - pole));
      row0 += c.n;
    }
    for (size_t h = 0; h < holes; ++h) rhs(long(total + h)) = 0.0;
    Eigen::VectorXd sol = lu_.solve(rhs);

    harmonic_solution hs;
    hs.face_id = face_id_;
    hs.pole = pole;
    hs.opt = opt_;
    hs.comps = comps_;
    hs.log_center = log_center_;
    hs.log_strength.assign(sol.data() + long(total), sol.data() + long(total + holes));

    size_t off = 0;
    for (size_t ci = 0; ci < hs.comps.size(); ++ci) {
      auto& c = hs.comps[ci];
      c.mu.assign(sol.data() + long(off), sol.data() + long(off + c.n));
      detail::fill_level(curves_[ci], c, c.mid, std::max(opt_.mid_level, 4 * c.n));
      detail::fill_level(curves_[ci], c, c.fine, std::max(opt_.fine_level, 8 * c.n));
      off += c.n;
    }

    hs.boundary_residual = residual(hs, pole);
    if (hs.boundary_residual > opt_.solver_tol)
      fail(errc::resolution_too_low,
           "boundary residual " + std::to_string(hs.boundary_residual) +
               " exceeds solver tolerance; raise nodes_per_component");
    return hs;
  }

 private:
  // interpolated-equation residual at node midpoints
  double residual(const harmonic_solution& hs, cplx pole) const {
    double worst = 0;
    for (size_t ci = 0; ci < hs.comps.size(); ++ci) {
      const auto& c = hs.comps[ci];
      const auto& lv = c.mid;
      size_t ratio = lv.n / c.n;
      for (size_t i = 0; i < c.n; ++i) {
        size_t jm = i * ratio + ratio / 2;
        cplx xm = lv.x[jm];
        double acc = 0;
        for (size_t cj = 0; cj < hs.comps.size(); ++cj) {
          const auto& src = hs.comps[cj].mid;
          double part = 0;
          for (size_t j = 0; j < src.n; ++j) {
            if (cj == ci && j == jm) continue;
            part += src.mu[j] * (src.dx[j] / (src.x[j] - xm)).imag();
          }
          if (cj == ci) {
            double t = c.sign >= 0 ? two_pi * double(jm) / double(lv.n)
                                   : -two_pi * double(jm) / double(lv.n);
            cplx d2 = curves_[ci].deriv(t, 2);
            part += lv.mu[jm] * (d2 / (2.0 * lv.dx[jm])).imag();
          }
          acc += part / double(src.n);
        }
        double lhs = 0.5 * lv.mu[jm] + acc;
        for (size_t h = 0; h < hs.log_strength.size(); ++h)
          lhs += hs.log_strength[h] * std::log(std::abs(xm - hs.log_center[h]));
        worst = std::max(worst, std::abs(lhs - std::log(std::abs(xm - pole))));
      }
    }
    return worst;
  }

  green_options opt_;
  int face_id_;
  std::vector<analytic_curve> curves_;  // aligned with comps_
  std::vector<boundary_component> comps_;
  std::vector<cplx> log_center_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline harmonic_solution solve_green(const scene& s, int face_id, cplx pole,
                                     green_options opt = {}) {
  int pf = s.face_of(pole);
  if (pf != face_id)
    fail(errc::pole_outside_face,
         "pole lies in face " + std::to_string(pf) + ", not " + std::to_string(face_id));
  face_system sys(s, face_id, opt);
  return sys.solve(pole);
}

inline double green_eval(const harmonic_solution& sol, cplx z) { return sol.green(z); }

// ---------------------------------------------------------------------------
// harmonic measure density

struct measure_density {
  int face_id = -1;
  cplx pole{0, 0};
  struct component_density {
    int curve_id = -1;
    int sign = +1;
    std::vector<double> rho;        // d omega / ds at the nodes
    trig_cumulative cumulative;     // integral of rho ds in effective parameter
    double mass = 0;
  };
  std::vector<component_density> comps;
  double total_mass = 0;

  double mass_of_arc(size_t comp, double tau_lo, double tau_hi) const {
    const auto& c = comps.at(comp);
    double lo = wrap_2pi(tau_lo), hi = wrap_2pi(tau_hi);
    if (hi >= lo) return c.cumulative.eval(hi) - c.cumulative.eval(lo);
    return c.mass - (c.cumulative.eval(lo) - c.cumulative.eval(hi));
  }
};

// Inward-normal derivative of G via small interior offsets with Richardson
// extrapolation (offsets eps, eps/2, eps/4 in parameter units).
inline measure_density compute_measure_density(const harmonic_solution& sol) {
  measure_density md;
  md.face_id = sol.face_id;
  md.pole = sol.pole;
  for (const auto& c : sol.comps) {
    measure_density::component_density cd;
    cd.curve_id = c.curve_id;
    cd.sign = c.sign;
    cd.rho.resize(c.n);
    for (size_t j = 0; j < c.n; ++j) {
      cplx nin = c.inward_normal(j);
      double eps = sol.opt.offset_param * c.speed[j];
      double d1 = eps, d2 = eps / 2, d3 = eps / 4;
      double g1 = sol.green_inside(c.x[j] + d1 * nin);
      double g2 = sol.green_inside(c.x[j] + d2 * nin);
      double g3 = sol.green_inside(c.x[j] + d3 * nin);
      // fit G(d) = a d + b d^2 + c d^3 and read off a = dG/dn
      Eigen::Matrix3d V;
      V << d1, d1 * d1, d1 * d1 * d1, d2, d2 * d2, d2 * d2 * d2, d3, d3 * d3, d3 * d3 * d3;
      Eigen::Vector3d rhs(g1, g2, g3);
      Eigen::Vector3d abc = V.partialPivLu().solve(rhs);
      cd.rho[j] = abc(0) / two_pi;
      if (cd.rho[j] < 0) {
        if (cd.rho[j] < -1e-9)
          fail(errc::resolution_too_low, "negative harmonic-measure density");
        cd.rho[j] = 0;
      }
    }
    // cumulative in effective parameter: integrand rho * |dgamma/dtau|
    std::vector<double> w(c.n);
    for (size_t j = 0; j < c.n; ++j) w[j] = cd.rho[j] * c.speed[j];
    cd.cumulative = trig_cumulative::build(w);
    cd.mass = cd.cumulative.total();
    md.total_mass += cd.mass;
    md.comps.push_back(std::move(cd));
  }
  if (std::abs(md.total_mass - 1.0) > 1e-4)
    fail(errc::resolution_too_low, "harmonic measure mass " + std::to_string(md.total_mass) +
                                       " deviates from 1 beyond tolerance");
  return md;
}

}  // namespace lemni

#endif
