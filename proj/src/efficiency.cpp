#include "greenpc/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "greenpc/errors.hpp"

namespace greenpc {

EfficiencyFunction EfficiencyFunction::exponential_outage(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("exponential_outage: c must be a positive real");
  EfficiencyFunction f;
  f.family_ = EfficiencyFamily::ExponentialOutage;
  f.c_ = c;
  return f;
}

EfficiencyFunction EfficiencyFunction::from_spectral_efficiency(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("from_spectral_efficiency: r must be a positive real");
  return exponential_outage(std::exp2(r) - 1.0);
}

EfficiencyFunction EfficiencyFunction::goodman(int M) {
  if (M < 1) throw std::invalid_argument("goodman: M must be a positive integer");
  EfficiencyFunction f;
  f.family_ = EfficiencyFamily::Goodman;
  f.M_ = M;
  return f;
}

double EfficiencyFunction::value(double x) const {
  if (x <= 0.0) return 0.0;
  if (family_ == EfficiencyFamily::ExponentialOutage) return std::exp(-c_ / x);
  const double u = -std::expm1(-x); // 1 - e^-x
  return std::pow(u, M_);
}

double EfficiencyFunction::deriv(double x) const {
  if (x <= 0.0) return 0.0;
  if (family_ == EfficiencyFamily::ExponentialOutage)
    return (c_ / (x * x)) * std::exp(-c_ / x);
  const double u = -std::expm1(-x);
  return M_ * std::pow(u, M_ - 1) * std::exp(-x);
}

double EfficiencyFunction::deriv2(double x) const {
  if (x <= 0.0) return 0.0;
  if (family_ == EfficiencyFamily::ExponentialOutage)
    return (c_ / (x * x * x)) * std::exp(-c_ / x) * (c_ / x - 2.0);
  const double u = -std::expm1(-x);
  return M_ * std::pow(u, M_ - 2) * std::exp(-x) * (M_ * std::exp(-x) - 1.0);
}

double EfficiencyFunction::curvature_ratio_limit_at_zero() const {
  // exp-outage: f''/f' = (c - 2x)/x^2 -> +inf.
  // goodman:    f''/f' = (M e^-x - 1)/(1 - e^-x) -> +inf for M >= 2, -1 for M = 1.
  if (family_ == EfficiencyFamily::ExponentialOutage)
    return std::numeric_limits<double>::infinity();
  return M_ >= 2 ? std::numeric_limits<double>::infinity() : -1.0;
}

namespace {

constexpr double kResidualRelTol = 1e-12;

// Bracketed root of a residual that is positive left of the root and
// negative right of it. Bisection with a false-position step each
// iteration; stops when |residual| <= rel_tol * scale(x).
double refine_root(const std::function<double(double)>& resid,
                   const std::function<double(double)>& scale, double lo, double hi,
                   double r_lo, double r_hi) {
  double best_x = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    double x;
    if (it % 2 == 0 && r_lo != r_hi) {
      // false position, clamped away from the bracket ends
      x = (lo * r_hi - hi * r_lo) / (r_hi - r_lo);
      const double margin = 1e-3 * (hi - lo);
      x = std::clamp(x, lo + margin, hi - margin);
    } else {
      x = 0.5 * (lo + hi);
    }
    const double r = resid(x);
    best_x = x;
    if (std::abs(r) <= kResidualRelTol * std::max(scale(x), 1e-300)) return x;
    if (r > 0.0) {
      lo = x;
      r_lo = r;
    } else {
      hi = x;
      r_hi = r;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
  }
  return best_x;
}

} // namespace

double beta_star(const EfficiencyFunction& f) {
  const auto resid = [&f](double x) { return x * f.deriv(x) - f.value(x); };
  const auto scale = [&f](double x) { return f.value(x); };

  // a probe can land on a residual of exactly zero either at the root or
  // deep in an underflow/cancellation tail; only a local sign change marks
  // the root
  const auto genuine_root = [&](double x) {
    return resid(x * (1.0 - 1e-3)) > 0.0 && resid(x * (1.0 + 1e-3)) < 0.0;
  };

  // geometric expansion from x = 1 until the residual changes sign
  double lo = 1.0, hi = 1.0;
  double r1 = resid(1.0);
  double r_lo = r1, r_hi = r1;
  if (r1 > 0.0) {
    for (int i = 0; i < 300 && r_hi > 0.0; ++i) {
      hi *= 2.0;
      r_hi = resid(hi);
    }
  } else if (r1 < 0.0) {
    for (int i = 0; i < 300 && r_lo < 0.0; ++i) {
      lo *= 0.5;
      r_lo = resid(lo);
    }
  }
  if (r_lo == 0.0 || r_hi == 0.0) {
    const double x = r_lo == 0.0 ? lo : hi;
    if (!genuine_root(x))
      throw NumericError("beta_star: bracketing failure, x f'(x) - f(x) never changes sign "
                         "(non-sigmoidal efficiency function?)");
    lo = x * (1.0 - 1e-3);
    hi = x * (1.0 + 1e-3);
    r_lo = resid(lo);
    r_hi = resid(hi);
  }
  if (!(r_lo > 0.0 && r_hi < 0.0))
    throw NumericError("beta_star: bracketing failure, x f'(x) - f(x) never changes sign "
                       "(non-sigmoidal efficiency function?)");
  return refine_root(resid, scale, lo, hi, r_lo, r_hi);
}

namespace {

double gamma_star_numeric(const EfficiencyFunction& f, double eps, double bstar) {
  const auto resid = [&f, eps](double x) {
    return x * (1.0 - eps * x) * f.deriv(x) - f.value(x);
  };
  const auto scale = [&f](double x) { return f.value(x); };

  double hi = bstar;
  double r_hi = resid(hi);
  if (r_hi >= 0.0) {
    // residual at beta* is -eps * beta* * f(beta*); >= 0 only by rounding,
    // in which case the root is beta* itself
    return bstar;
  }
  double lo = bstar, r_lo = r_hi;
  for (int i = 0; i < 80 && !(r_lo > 0.0); ++i) {
    lo *= 0.5;
    r_lo = resid(lo);
  }
  if (!(r_lo > 0.0))
    throw NumericError("gamma_star: no root in (0, beta*], infeasible eps");
  return refine_root(resid, scale, lo, hi, r_lo, r_hi);
}

} // namespace

double gamma_star(const EfficiencyFunction& f, double eps) {
  if (eps < 0.0) throw std::invalid_argument("gamma_star: eps must be nonnegative");
  const double bstar = beta_star(f);
  if (eps == 0.0) return bstar;

  const double numeric = gamma_star_numeric(f, eps, bstar);
  if (f.family() == EfficiencyFamily::ExponentialOutage) {
    const double closed = f.c() / (1.0 + eps * f.c());
    if (std::abs(closed - numeric) > 1e-9 * closed)
      throw NumericError("gamma_star: closed form and numeric root disagree");
    return closed;
  }
  return numeric;
}

namespace {

SigmoidCheck check_impl(const std::function<double(double)>& f,
                        const std::function<double(double)>& second_deriv,
                        std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("check_sigmoidal: grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("check_sigmoidal: grid must be increasing");

  SigmoidCheck rep;
  rep.monotone_ok = true;
  double prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    // ties are tolerated only where the curve has saturated in floating
    // point (underflow at 0, limit at 1); anywhere else they violate
    // strict monotonicity
    const bool ok = cur > prev || (cur == prev && (prev == 0.0 || prev == 1.0));
    if (!ok) {
      rep.monotone_ok = false;
      rep.first_monotone_violation = i;
      break;
    }
    prev = cur;
  }

  rep.origin_ok = f(0.0) == 0.0;
  rep.limit_deviation = 1.0 - f(grid.back());
  rep.limit_ok = std::abs(rep.limit_deviation) < 2e-2;

  // f'' must change sign exactly once along the grid (zeros/underflow skipped)
  int changes = 0, last_sign = 0;
  for (double x : grid) {
    const double d2 = second_deriv(x);
    const int s = d2 > 0.0 ? 1 : (d2 < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  rep.curvature_sign_changes = changes;
  rep.inflection_ok = changes == 1;
  return rep;
}

} // namespace

SigmoidCheck check_sigmoidal(const EfficiencyFunction& f, std::span<const double> grid) {
  return check_impl([&f](double x) { return f.value(x); },
                    [&f](double x) { return f.deriv2(x); }, grid);
}

SigmoidCheck check_sigmoidal(const std::function<double(double)>& f,
                             std::span<const double> grid) {
  const auto d2 = [&f](double x) {
    const double h = 1e-5 * std::max(x, 1.0);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  };
  return check_impl(f, d2, grid);
}

} // namespace greenpc
