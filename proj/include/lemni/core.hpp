#ifndef LEMNI_CORE_HPP
#define LEMNI_CORE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lemni {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();

// Failure categories surfaced by the library.  The CLI maps these onto
// process exit codes: validation failures -> 2, convergence failures -> 3.
enum class errc {
  malformed_document,
  curves_intersect,
  pole_in_white_face,
  grey_face_without_pole,
  on_boundary,
  pole_outside_face,
  solver_singular,
  resolution_too_low,
  level_out_of_range,
  gradient_too_small,
  failed_to_close,
  empty_set,
  separation_failed,
  function_not_analytic_on_contour,
  point_outside_contour,
  quadrature_not_converged,
  no_convergence,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_document: return "MalformedDocument";
    case errc::curves_intersect: return "CurvesIntersect";
    case errc::pole_in_white_face: return "PoleInWhiteFace";
    case errc::grey_face_without_pole: return "GreyFaceWithoutPole";
    case errc::on_boundary: return "OnBoundary";
    case errc::pole_outside_face: return "PoleOutsideFace";
    case errc::solver_singular: return "SolverSingular";
    case errc::resolution_too_low: return "ResolutionTooLow";
    case errc::level_out_of_range: return "LevelOutOfRange";
    case errc::gradient_too_small: return "GradientTooSmall";
    case errc::failed_to_close: return "FailedToClose";
    case errc::empty_set: return "EmptySet";
    case errc::separation_failed: return "SeparationFailed";
    case errc::function_not_analytic_on_contour: return "FunctionNotAnalyticOnContour";
    case errc::point_outside_contour: return "PointOutsideContour";
    case errc::quadrature_not_converged: return "QuadratureNotConverged";
    case errc::no_convergence: return "NoConvergence";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

// True for failures of an iterative/numerical process (as opposed to bad input).
inline bool is_convergence_error(errc c) {
  switch (c) {
    case errc::solver_singular:
    case errc::resolution_too_low:
    case errc::gradient_too_small:
    case errc::failed_to_close:
    case errc::separation_failed:
    case errc::quadrature_not_converged:
    case errc::no_convergence:
      return true;
    default:
      return false;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline double sqr(double x) { return x * x; }

inline double wrap_2pi(double t) {
  t = std::fmod(t, two_pi);
  if (t < 0) t += two_pi;
  return t;
}

// Shortest circular distance between two parameters in [0, 2pi).
inline double param_dist(double a, double b) {
  double d = std::abs(wrap_2pi(a) - wrap_2pi(b));
  return std::min(d, two_pi - d);
}

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct bbox {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diag() const { return std::hypot(width(), height()); }
  bool contains(cplx z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  void expand(cplx z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  static bbox of(const std::vector<cplx>& pts) {
    bbox b{pts.at(0).real(), pts.at(0).imag(), pts.at(0).real(), pts.at(0).imag()};
    for (cplx z : pts) b.expand(z);
    return b;
  }
  bbox padded(double margin) const { return {x0 - margin, y0 - margin, x1 + margin, y1 + margin}; }
};

}  // namespace lemni

#endif
