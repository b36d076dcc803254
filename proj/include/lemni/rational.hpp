#ifndef LEMNI_RATIONAL_HPP
#define LEMNI_RATIONAL_HPP

#include <json.hpp>
#include <vector>

#include "lemni/core.hpp"

namespace lemni {

// Rational function held as zeros and poles with multiplicities.  All
// magnitude work happens in the log domain: multiplicities in the hundreds
// would overflow any naive product immediately.  Poles at infinity carry no
// factor (they only enter the degree count).  An optional log-domain
// prefactor exp(S0) supports level calibration; it cancels in the ratios
// the quadrature routines use.
struct rational_function {
  struct term {
    cplx z;
    long long mult = 1;
  };
  std::vector<term> zeros;
  std::vector<term> poles;      // finite poles only
  long long inf_pole_mult = 0;  // multiplicity of the pole at infinity
  long long m = 1;              // discretization parameter when sampling-built
  cplx log_prefactor{0, 0};     // S0: the function includes a factor exp(S0)

  long long zero_degree() const {
    long long d = 0;
    for (const auto& t : zeros) d += t.mult;
    return d;
  }
  long long pole_degree() const {
    long long d = inf_pole_mult;
    for (const auto& t : poles) d += t.mult;
    return d;
  }
  long long degree() const { return std::max(zero_degree(), pole_degree()); }
  bool balanced() const { return zero_degree() == pole_degree() && inf_pole_mult == 0; }

  // log |r(z)|; -inf at zeros, +inf at poles
  double log_abs(cplx z) const {
    double acc = log_prefactor.real();
    for (const auto& t : zeros) {
      double d = std::abs(z - t.z);
      if (d == 0.0) return -inf;
      acc += double(t.mult) * std::log(d);
    }
    for (const auto& t : poles) {
      double d = std::abs(z - t.z);
      if (d == 0.0) return inf;
      acc -= double(t.mult) * std::log(d);
    }
    return acc;
  }

  double u_m(cplx z) const { return log_abs(z) / double(m); }

  // S with exp(S) = r(z) (principal logs; the 2 pi i ambiguities vanish
  // under exp)
  cplx log_eval(cplx z) const {
    cplx acc = log_prefactor;
    for (const auto& t : zeros) acc += double(t.mult) * std::log(z - t.z);
    for (const auto& t : poles) acc -= double(t.mult) * std::log(z - t.z);
    return acc;
  }

  // r(z) via exp; overflows saturate to infinity
  cplx eval(cplx z) const {
    for (const auto& t : zeros)
      if (z == t.z) return cplx(0, 0);
    for (const auto& t : poles)
      if (z == t.z) return cplx(inf, 0);
    cplx s = log_eval(z);
    if (s.real() > 700.0) return cplx(inf, 0);
    return std::exp(s);
  }

  // gradient (u_x + i u_y) of u_m = (1/m) log|r|
  cplx grad_u(cplx z) const {
    cplx acc(0, 0);
    for (const auto& t : zeros) {
      cplx d = z - t.z;
      acc += double(t.mult) * d / std::norm(d);
    }
    for (const auto& t : poles) {
      cplx d = z - t.z;
      acc -= double(t.mult) * d / std::norm(d);
    }
    return acc / double(m);
  }

  rational_function powered(long long n) const {
    rational_function out = *this;
    for (auto& t : out.zeros) t.mult *= n;
    for (auto& t : out.poles) t.mult *= n;
    out.inf_pole_mult *= n;
    out.log_prefactor *= double(n);
    return out;
  }

  // multiplies r by the real constant exp(shift)
  rational_function scaled_by_log(double shift) const {
    rational_function out = *this;
    out.log_prefactor += shift;
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["zeros"] = nlohmann::json::array();
    for (const auto& t : zeros)
      j["zeros"].push_back({{"re", t.z.real()}, {"im", t.z.imag()}, {"mult", t.mult}});
    j["poles"] = nlohmann::json::array();
    for (const auto& t : poles)
      j["poles"].push_back({{"re", t.z.real()}, {"im", t.z.imag()}, {"mult", t.mult}});
    j["m"] = m;
    if (inf_pole_mult) j["inf_pole_mult"] = inf_pole_mult;
    if (log_prefactor != cplx(0, 0))
      j["log_prefactor"] = {{"re", log_prefactor.real()}, {"im", log_prefactor.imag()}};
    return j;
  }

  static rational_function from_json(const nlohmann::json& j) {
    rational_function r;
    for (const auto& t : j.value("zeros", nlohmann::json::array()))
      r.zeros.push_back({cplx(t.at("re").get<double>(), t.at("im").get<double>()),
                         t.value("mult", 1LL)});
    for (const auto& t : j.value("poles", nlohmann::json::array()))
      r.poles.push_back({cplx(t.at("re").get<double>(), t.at("im").get<double>()),
                         t.value("mult", 1LL)});
    r.m = j.value("m", 1LL);
    r.inf_pole_mult = j.value("inf_pole_mult", 0LL);
    if (j.contains("log_prefactor"))
      r.log_prefactor = cplx(j["log_prefactor"].at("re").get<double>(),
                             j["log_prefactor"].at("im").get<double>());
    return r;
  }

  // r(z) = z - a (a simple builtin for Taylor-style problems)
  static rational_function monomial(cplx a = cplx(0, 0)) {
    rational_function r;
    r.zeros.push_back({a, 1});
    r.inf_pole_mult = 1;
    r.m = 1;
    return r;
  }
};

inline double log_abs(const rational_function& r, cplx z) { return r.log_abs(z); }
inline double u_m_eval(const rational_function& r, cplx z) { return r.u_m(z); }
inline cplx complex_log_eval(const rational_function& r, cplx z) { return r.log_eval(z); }
inline cplx grad_u(const rational_function& r, cplx z) { return r.grad_u(z); }
inline rational_function power(const rational_function& r, long long n) { return r.powered(n); }

}  // namespace lemni

#endif
