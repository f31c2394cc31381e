#include "greenpc/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "greenpc/errors.hpp"

namespace greenpc {

namespace {

EquilibriumReport equilibrium_for(const NetworkConfig& cfg, int L, const EfficiencyFunction& f) {
  if (L < 1 || L > cfg.K)
    throw std::invalid_argument("leader count must lie in [1, K]");
  if (L == cfg.K) return nash_powers(cfg, f);
  return stackelberg_powers(cfg, RolePartition::first_leaders(cfg.K, L), f);
}

} // namespace

double social_welfare(const NetworkConfig& cfg, int L, const EfficiencyFunction& f) {
  const EquilibriumReport rep = equilibrium_for(cfg, L, f);
  return std::accumulate(rep.utilities.begin(), rep.utilities.end(), 0.0);
}

double social_welfare_symmetric_closed_form(const NetworkConfig& cfg, int L,
                                            const EfficiencyFunction& f) {
  if (!cfg.is_symmetric())
    throw std::invalid_argument("closed-form welfare requires a symmetric configuration");
  const double mu = cfg.mu(0);
  const double n = cfg.N;
  if (L == cfg.K) {
    const double bstar = beta_star(f);
    if (!((cfg.K - 1) * bstar / n < 1.0)) throw InfeasibleError("InfeasibleLoad");
    return cfg.K * mu * f.value(bstar) * (n - (cfg.K - 1) * bstar) / (n * bstar);
  }
  const int F = cfg.K - L;
  const RoleValues rv = role_values(cfg.K, cfg.N, F, f);
  const double bstar = rv.constants.beta_star, gstar = rv.constants.gamma_star_L;
  const double a_L = rv.constants.a_L;
  if (!(a_L > 0.0)) throw InfeasibleError("InfeasibleHierarchy");
  // sum utility via a_L; the follower term carries the sensing-cost factor
  return mu * a_L *
         (L * f.value(gstar) / (gstar * (n + bstar)) +
          (1.0 - cfg.alpha) * F * f.value(bstar) / (bstar * (n + gstar)));
}

double total_power(const NetworkConfig& cfg, int L, const EfficiencyFunction& f) {
  return equilibrium_for(cfg, L, f).total_power();
}

LeaderSweepResult optimal_leaders_exact(const NetworkConfig& cfg, const EfficiencyFunction& f) {
  const EquilibriumReport ne = nash_powers(cfg, f); // throws when the sweep is meaningless
  const double w_ne = std::accumulate(ne.utilities.begin(), ne.utilities.end(), 0.0);

  LeaderSweepResult res;
  res.rows.reserve(static_cast<std::size_t>(cfg.K));
  double best_w = -std::numeric_limits<double>::infinity();
  res.best_L = 0;
  for (int L = 1; L <= cfg.K; ++L) {
    WelfareSweepRow row;
    row.L = L;
    row.F = cfg.K - L;
    row.w_ne = w_ne;
    try {
      const EquilibriumReport rep = equilibrium_for(cfg, L, f);
      row.w = std::accumulate(rep.utilities.begin(), rep.utilities.end(), 0.0);
      row.total_power = rep.total_power();
      row.gain_pct = 100.0 * (row.w - w_ne) / w_ne;
      row.feasible = true;
    } catch (const InfeasibleError&) {
      row.feasible = false;
    }
    if (row.feasible && row.w > best_w) {
      best_w = row.w;
      res.best_L = L;
    }
    res.rows.push_back(row);
  }
  return res;
}

ApproxLeaderCount optimal_leaders_approx(int K, int N, double c, double kappa) {
  if (K < 2) throw std::invalid_argument("optimal_leaders_approx: need K >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("optimal_leaders_approx: need c > 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("optimal_leaders_approx: need kappa > 0");

  ApproxLeaderCount out;
  out.kappa = kappa;
  const double n = N;
  if ((K - 1) / n <= 1.0 / c) {
    const double radicand = 1.0 - (K / n) * c / (c / n + 1.0);
    if (radicand < 0.0)
      throw NumericError("optimal_leaders_approx: negative radicand, assumptions violated");
    out.lambda_star = (1.0 + n / c) * (1.0 - std::sqrt(radicand));
    out.regime = ApproxLeaderCount::Regime::Interior;
  } else {
    out.lambda_star = K - kappa;
    out.regime = ApproxLeaderCount::Regime::Boundary;
  }

  const auto clamp_L = [K](int L) { return std::max(1, std::min(K - 1, L)); };
  const int lo = clamp_L(static_cast<int>(std::floor(out.lambda_star)));
  const int hi = clamp_L(static_cast<int>(std::ceil(out.lambda_star)));
  if (lo == hi) {
    out.L_star = lo;
    return out;
  }
  const NetworkConfig unit = NetworkConfig::symmetric(K, N);
  const EfficiencyFunction f = EfficiencyFunction::exponential_outage(c);
  const double w_lo = social_welfare_symmetric_closed_form(unit, lo, f);
  const double w_hi = social_welfare_symmetric_closed_form(unit, hi, f);
  out.L_star = w_hi > w_lo ? hi : lo;
  return out;
}

} // namespace greenpc
