#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace greenpc {

enum class EfficiencyFamily { ExponentialOutage, Goodman };

/// Block-success-rate curve f: [0,inf) -> [0,1).
///
/// Both supported families are sigmoidal: f(0) = 0, f strictly increasing,
/// f(x) -> 1 as x -> inf, exactly one inflection point on (0, inf).
///   exponential-outage: f(x) = exp(-c/x), continuously extended by f(0) = 0,
///                       optionally parameterized by spectral efficiency r
///                       via c = 2^r - 1;
///   goodman:            f(x) = (1 - exp(-x))^M  (sigmoidal for M >= 2).
class EfficiencyFunction {
public:
  static EfficiencyFunction exponential_outage(double c);
  static EfficiencyFunction from_spectral_efficiency(double r);
  static EfficiencyFunction goodman(int M);

  EfficiencyFamily family() const { return family_; }
  double c() const { return c_; }
  int M() const { return M_; }

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  /// lim_{x->0+} f''(x)/f'(x); +inf for both families when sigmoidal.
  double curvature_ratio_limit_at_zero() const;

private:
  EfficiencyFunction() = default;
  EfficiencyFamily family_ = EfficiencyFamily::ExponentialOutage;
  double c_ = 0.0;
  int M_ = 0;
};

/// Unique positive root of x f'(x) = f(x): the SINR at which f(x)/x is
/// maximal, i.e. the operating point of every equilibrium transmitter.
/// Residual is driven to |x f'(x) - f(x)| <= 1e-12 * f(x).
/// Throws NumericError if no bracket is found (non-sigmoidal input).
double beta_star(const EfficiencyFunction& f);

/// Positive root of x (1 - eps*x) f'(x) = f(x) in (0, beta*].
/// eps = 0 reduces to beta_star. For the exponential-outage family the
/// closed form c / (1 + eps*c) is returned after a cross-check against the
/// numeric root at 1e-9 relative. Throws NumericError when no root exists
/// in (0, beta*] (infeasible eps).
double gamma_star(const EfficiencyFunction& f, double eps);

/// Diagnostics for the sigmoidal-shape assumptions on a user grid.
struct SigmoidCheck {
  bool monotone_ok = false;     // strictly increasing along the grid
  bool origin_ok = false;       // f(0) == 0
  bool limit_ok = false;        // f(grid.back()) close to 1
  bool inflection_ok = false;   // f'' changes sign exactly once
  double limit_deviation = 0.0; // 1 - f(grid.back())
  int curvature_sign_changes = 0;
  std::size_t first_monotone_violation = static_cast<std::size_t>(-1);
  bool pass() const { return monotone_ok && origin_ok && limit_ok && inflection_ok; }
};

/// Grid must be nonempty and increasing. The callable overload exists for
/// test harness negative controls; curvature is probed by central
/// differences there, analytically for the family overload.
SigmoidCheck check_sigmoidal(const EfficiencyFunction& f, std::span<const double> grid);
SigmoidCheck check_sigmoidal(const std::function<double(double)>& f,
                             std::span<const double> grid);

} // namespace greenpc
