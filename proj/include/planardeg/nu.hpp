#pragma once

// Concentration value nu(n, k) for the maximum load of k balls in n bins and
// the predicted two-point intervals built on it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "planardeg/errors.hpp"

namespace planardeg {

inline constexpr double kDefaultNuTolerance = 1e-9;

struct ConcentrationQuery {
  std::uint64_t n_bins = 1;   // n
  std::uint64_t n_balls = 1;  // k

  void validate() const {
    if (n_bins < 1 || n_balls < 1) throw DomainError("concentration query needs n_bins >= 1 and n_balls >= 1");
  }
};

/// f(x) = x ln k + x - (x + 1/2) ln x - (x - 1) ln n.
inline double f_eval(double x, const ConcentrationQuery& q) {
  if (!(x > 0.0)) throw DomainError("f_eval requires x > 0");
  q.validate();
  const double ln_k = std::log(static_cast<double>(q.n_balls));
  const double ln_n = std::log(static_cast<double>(q.n_bins));
  return x * ln_k + x - (x + 0.5) * std::log(x) - (x - 1.0) * ln_n;
}

/// The unique positive zero of f. f(1) = ln k + 1 > 0 and f is concave on
/// [1, inf) tending to -inf, so [1, hi] with f(hi) <= 0 always brackets it.
inline double nu(const ConcentrationQuery& q, double tol = kDefaultNuTolerance) {
  if (!(tol > 0.0)) throw DomainError("nu requires tol > 0");
  q.validate();
  double lo = 1.0;
  double hi = 2.0;
  while (f_eval(hi, q) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    if (f_eval(mid, q) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

inline double nu(std::uint64_t n_bins, std::uint64_t n_balls, double tol = kDefaultNuTolerance) {
  return nu(ConcentrationQuery{n_bins, n_balls}, tol);
}

/// nu_hat(n) = nu(n, n).
inline double nu_hat(std::uint64_t n, double tol = kDefaultNuTolerance) { return nu(n, n, tol); }

enum class Regime { A_supercritical, B_intermediate, C_below_n, D_critical_t, E_above_n };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::A_supercritical: return "A";
    case Regime::B_intermediate: return "B";
    case Regime::C_below_n: return "C";
    case Regime::D_critical_t: return "D";
    case Regime::E_above_n: return "E";
  }
  return "?";
}

inline Regime parse_regime(std::string_view s) {
  if (s == "A" || s == "a" || s == "A_supercritical") return Regime::A_supercritical;
  if (s == "B" || s == "b" || s == "B_intermediate") return Regime::B_intermediate;
  if (s == "C" || s == "c" || s == "C_below_n") return Regime::C_below_n;
  if (s == "D" || s == "d" || s == "D_critical_t") return Regime::D_critical_t;
  if (s == "E" || s == "e" || s == "E_above_n") return Regime::E_above_n;
  throw ValidationError("unknown regime '" + std::string(s) + "'");
}

/// Edge-density regime above the critical window. For A, `s_or_t` is s with
/// m = n/2 + s; for C, D, E it is t with m = n + t; B uses `d` with m = dn/2.
struct RegimeSpec {
  Regime regime = Regime::B_intermediate;
  std::uint64_t n = 1;
  std::int64_t s_or_t = 0;
  double d = 1.5;

  void validate() const {
    if (n < 1) throw ValidationError("regime spec needs n >= 1");
    switch (regime) {
      case Regime::A_supercritical:
        if (s_or_t <= 0) throw ValidationError("regime A requires s > 0");
        break;
      case Regime::B_intermediate:
        if (!(d > 1.0 && d < 2.0)) throw ValidationError("regime B requires d in (1, 2)");
        break;
      case Regime::C_below_n:
        if (s_or_t >= 0) throw ValidationError("regime C requires t < 0");
        break;
      case Regime::D_critical_t:
        break;
      case Regime::E_above_n:
        if (s_or_t <= 0) throw ValidationError("regime E requires t > 0");
        break;
    }
  }
};

struct RegimeParameters {
  double left = 0;   // N_L
  double right = 0;  // N_R
};

inline RegimeParameters regime_parameters(const RegimeSpec& spec) {
  spec.validate();
  const auto n = static_cast<double>(spec.n);
  const auto p = static_cast<double>(spec.s_or_t);
  switch (spec.regime) {
    case Regime::A_supercritical: return {p, n};
    case Regime::B_intermediate: return {n, n};
    case Regime::C_below_n: return {n, std::fabs(p)};
    case Regime::D_critical_t: return {n, std::pow(n, 0.6)};
    case Regime::E_above_n: return {n, std::pow(n, 1.5) * std::pow(p, -1.5)};
  }
  return {n, n};
}

struct PredictedInterval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t delta_star = 0;
};

/// Window [floor(nu - eps), floor(nu + eps)] with nu = nu(n, 2m), and the
/// two-point anchor floor(nu - 1/3).
inline PredictedInterval predicted_interval_sparse(std::uint64_t n, std::uint64_t m, double eps,
                                                   double tol = kDefaultNuTolerance) {
  if (m < 1) throw DomainError("predicted_interval_sparse requires m >= 1");
  if (eps < 0.0) throw DomainError("predicted_interval_sparse requires eps >= 0");
  const double v = nu(n, 2 * m, tol);
  return {static_cast<std::int64_t>(std::floor(v - eps)), static_cast<std::int64_t>(std::floor(v + eps)),
          static_cast<std::int64_t>(std::floor(v - 1.0 / 3.0))};
}

inline std::uint64_t ceil_to_count(double x) {
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(x)));
}

/// max{ floor(nu_hat(ceil N_L) + 2/3), floor(nu_hat(ceil N_R) - 1/3) }.
inline std::int64_t predicted_two_point(const RegimeSpec& spec, double tol = kDefaultNuTolerance) {
  const RegimeParameters p = regime_parameters(spec);
  const double left = nu_hat(ceil_to_count(p.left), tol);
  const double right = nu_hat(ceil_to_count(p.right), tol);
  return std::max(static_cast<std::int64_t>(std::floor(left + 2.0 / 3.0)),
                  static_cast<std::int64_t>(std::floor(right - 1.0 / 3.0)));
}

}  // namespace planardeg
