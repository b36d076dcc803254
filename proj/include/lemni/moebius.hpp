#ifndef LEMNI_MOEBIUS_HPP
#define LEMNI_MOEBIUS_HPP

#include "lemni/core.hpp"

namespace lemni {

// Point of the extended plane.
struct ext_point {
  cplx z{0.0, 0.0};
  bool at_infinity = false;

  static ext_point infinity() { return {cplx(0, 0), true}; }
  static ext_point finite(cplx w) { return {w, false}; }
  bool operator==(const ext_point& o) const {
    return at_infinity == o.at_infinity && (at_infinity || z == o.z);
  }
};

// Fractional-linear map T(z) = (a z + b) / (c z + d), ad - bc != 0.
struct moebius {
  cplx a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

  static moebius identity() { return {}; }
  static moebius translation(cplx t) { return {cplx(1, 0), t, cplx(0, 0), cplx(1, 0)}; }
  // w = 1 / (z - z0)
  static moebius inversion_about(cplx z0) { return {cplx(0, 0), cplx(1, 0), cplx(1, 0), -z0}; }

  bool is_identity() const {
    return c == cplx(0, 0) && b == cplx(0, 0) && a == d;
  }

  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }

  ext_point apply(const ext_point& p) const {
    if (p.at_infinity) {
      if (c == cplx(0, 0)) return ext_point::infinity();
      return ext_point::finite(a / c);
    }
    cplx den = c * p.z + d;
    if (std::abs(den) == 0.0) return ext_point::infinity();
    return ext_point::finite((a * p.z + b) / den);
  }

  moebius inverse() const { return {d, -b, -c, a}; }

  moebius compose_after(const moebius& inner) const {
    // (*this) o inner
    return {a * inner.a + b * inner.c, a * inner.b + b * inner.d,
            c * inner.a + d * inner.c, c * inner.b + d * inner.d};
  }

  cplx deriv(cplx z) const {
    cplx den = c * z + d;
    return (a * d - b * c) / (den * den);
  }
};

}  // namespace lemni

#endif
