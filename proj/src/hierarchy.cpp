#include "greenpc/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "greenpc/errors.hpp"

namespace greenpc {

NetworkConfig NetworkConfig::symmetric(int K, int N, double sigma2, double gain, double rate,
                                       double alpha) {
  NetworkConfig cfg;
  cfg.K = K;
  cfg.N = N;
  cfg.sigma2 = sigma2;
  cfg.g.assign(static_cast<std::size_t>(K), gain);
  cfg.R.assign(static_cast<std::size_t>(K), rate);
  cfg.p_max.assign(static_cast<std::size_t>(K), std::numeric_limits<double>::infinity());
  cfg.alpha = alpha;
  cfg.validate();
  return cfg;
}

bool NetworkConfig::is_symmetric() const {
  for (int k = 1; k < K; ++k)
    if (g[static_cast<std::size_t>(k)] != g[0] || R[static_cast<std::size_t>(k)] != R[0])
      return false;
  return true;
}

void NetworkConfig::validate() const {
  const auto fail = [](const std::string& m) { throw std::invalid_argument("NetworkConfig: " + m); };
  if (K < 1) fail("K must be >= 1");
  if (N < 1) fail("N must be >= 1");
  if (!(sigma2 > 0.0)) fail("sigma2 must be positive");
  const auto sz = static_cast<std::size_t>(K);
  if (g.size() != sz || R.size() != sz || p_max.size() != sz)
    fail("g, R, p_max must have length K");
  for (double v : g)
    if (!(v > 0.0)) fail("gains must be positive");
  for (double v : R)
    if (!(v > 0.0)) fail("rates must be positive");
  for (double v : p_max)
    if (!(v > 0.0)) fail("power caps must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0,1]");
  if (!(T > 0.0)) fail("T must be positive");
  if (xi_min < 0.0) fail("xi_min must be nonnegative");
  if (!g_cross.empty()) {
    if (g_cross.size() != sz) fail("g_cross must be K x K");
    for (const auto& row : g_cross) {
      if (row.size() != sz) fail("g_cross must be K x K");
      for (double v : row)
        if (!(v > 0.0)) fail("cross gains must be positive");
    }
  }
}

RolePartition RolePartition::first_leaders(int K, int L) {
  RolePartition p;
  for (int k = 0; k < L; ++k) p.leaders.push_back(k);
  for (int k = L; k < K; ++k) p.followers.push_back(k);
  return p;
}

void RolePartition::validate(int K) const {
  std::vector<char> seen(static_cast<std::size_t>(K), 0);
  const auto mark = [&](int k) {
    if (k < 0 || k >= K) throw std::invalid_argument("RolePartition: index out of range");
    if (seen[static_cast<std::size_t>(k)]++)
      throw std::invalid_argument("RolePartition: leaders and followers must be disjoint");
  };
  for (int k : leaders) mark(k);
  for (int k : followers) mark(k);
  if (L() + F() != K)
    throw std::invalid_argument("RolePartition: leaders and followers must cover all users");
}

double EquilibriumReport::total_power() const {
  return std::accumulate(powers.begin(), powers.end(), 0.0);
}

std::vector<double> sinr_of(std::span<const double> powers, const NetworkConfig& cfg) {
  if (powers.size() != static_cast<std::size_t>(cfg.K))
    throw std::invalid_argument("sinr_of: power vector must have length K");
  double weighted = 0.0;
  for (int j = 0; j < cfg.K; ++j)
    weighted += cfg.g[static_cast<std::size_t>(j)] * powers[static_cast<std::size_t>(j)];
  std::vector<double> out(static_cast<std::size_t>(cfg.K));
  for (int k = 0; k < cfg.K; ++k) {
    const double own = cfg.g[static_cast<std::size_t>(k)] * powers[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] = own / (cfg.sigma2 + (weighted - own) / cfg.N);
  }
  return out;
}

double epsilon_L(int N, int F, double beta_star) {
  if (F < 0) throw std::invalid_argument("epsilon_L: F must be nonnegative");
  if (F == 0) return 0.0;
  const double n = N;
  const double den = n * n - n * (F - 1) * beta_star;
  if (!(den > 0.0))
    throw InfeasibleError("NonpositiveDenominator: N^2 - N (F-1) beta* <= 0 for F = " +
                          std::to_string(F));
  return F * beta_star / den;
}

namespace {

// Common denominator of the two-level power profile; positive iff feasible.
double power_denominator(int N, int F, int L, double bstar, double gstar) {
  const double n = N;
  return n * n - n * (F - 1) * bstar - ((n + bstar) * (L - 1) + F * bstar) * gstar;
}

} // namespace

EquilibriumReport nash_powers(const NetworkConfig& cfg, const EfficiencyFunction& f) {
  cfg.validate();
  const double bstar = beta_star(f);
  const double load = (cfg.K - 1) * bstar / cfg.N;
  if (!(load < 1.0))
    throw InfeasibleError("InfeasibleLoad: (K-1) beta* / N = " + std::to_string(load) +
                          " >= 1, no one-shot equilibrium");
  EquilibriumReport rep;
  rep.kind = EquilibriumReport::Kind::NE;
  const auto sz = static_cast<std::size_t>(cfg.K);
  rep.powers.resize(sz);
  rep.sinrs.assign(sz, bstar);
  rep.utilities.resize(sz);
  rep.is_follower.assign(sz, false);
  rep.power_cap_hit.assign(sz, false);
  const double fb = f.value(bstar);
  for (int k = 0; k < cfg.K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    rep.powers[i] = (cfg.sigma2 / cfg.g[i]) * bstar / (1.0 - load);
    rep.utilities[i] = cfg.R[i] * fb / rep.powers[i];
    rep.power_cap_hit[i] = rep.powers[i] > cfg.p_max[i];
  }
  rep.constants.beta_star = bstar;
  rep.constants.gamma_star_L = bstar;
  rep.constants.eps_L = 0.0;
  rep.constants.a_L = power_denominator(cfg.N, 0, cfg.K, bstar, bstar) / cfg.N;
  return rep;
}

EquilibriumReport stackelberg_powers(const NetworkConfig& cfg, const RolePartition& partition,
                                     const EfficiencyFunction& f) {
  cfg.validate();
  partition.validate(cfg.K);
  const int L = partition.L(), F = partition.F();
  if (L < 1 || F < 1)
    throw std::invalid_argument("stackelberg_powers: need L >= 1 and F >= 1");

  const double bstar = beta_star(f);
  const double eps = epsilon_L(cfg.N, F, bstar);
  const double gstar = gamma_star(f, eps);
  const double D = power_denominator(cfg.N, F, L, bstar, gstar);
  if (!(D > 0.0))
    throw InfeasibleError("InfeasibleHierarchy: power denominator " + std::to_string(D) +
                          " <= 0 for L = " + std::to_string(L) + ", F = " + std::to_string(F));

  EquilibriumReport rep;
  rep.kind = EquilibriumReport::Kind::SE;
  const auto sz = static_cast<std::size_t>(cfg.K);
  rep.powers.resize(sz);
  rep.sinrs.resize(sz);
  rep.utilities.resize(sz);
  rep.is_follower.assign(sz, false);
  rep.power_cap_hit.assign(sz, false);
  const double n = cfg.N;
  const double lead_num = n * gstar * (n + bstar);
  const double foll_num = n * bstar * (n + gstar);
  const double fg = f.value(gstar), fb = f.value(bstar);
  for (int k : partition.leaders) {
    const auto i = static_cast<std::size_t>(k);
    rep.powers[i] = (cfg.sigma2 / cfg.g[i]) * lead_num / D;
    rep.sinrs[i] = gstar;
    rep.utilities[i] = cfg.R[i] * fg / rep.powers[i];
  }
  for (int k : partition.followers) {
    const auto i = static_cast<std::size_t>(k);
    rep.powers[i] = (cfg.sigma2 / cfg.g[i]) * foll_num / D;
    rep.sinrs[i] = bstar;
    rep.utilities[i] = (1.0 - cfg.alpha) * cfg.R[i] * fb / rep.powers[i];
    rep.is_follower[i] = true;
  }
  for (int k = 0; k < cfg.K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    rep.power_cap_hit[i] = rep.powers[i] > cfg.p_max[i];
  }
  rep.constants = {bstar, gstar, eps, D / n};
  return rep;
}

RoleValues role_values(int K, int N, int F, const EfficiencyFunction& f) {
  if (F < 0 || F > K) throw std::invalid_argument("role_values: need 0 <= F <= K");
  const double bstar = beta_star(f);
  RoleValues rv;
  const double n = N;
  if (F == 0 || F == K) {
    // one-shot outcome on both ends
    const double value = f.value(bstar) * (n - (K - 1) * bstar) / (n * bstar);
    rv.leader = value;
    rv.follower_costfree = value;
    rv.constants = {bstar, bstar, 0.0,
                    power_denominator(N, 0, K, bstar, bstar) / n};
    return rv;
  }
  const int L = K - F;
  const double eps = epsilon_L(N, F, bstar);
  const double gstar = gamma_star(f, eps);
  const double D = power_denominator(N, F, L, bstar, gstar);
  rv.leader = f.value(gstar) * D / (n * gstar * (n + bstar));
  rv.follower_costfree = f.value(bstar) * D / (n * bstar * (n + gstar));
  rv.constants = {bstar, gstar, eps, D / n};
  return rv;
}

SeUniquenessReport se_uniqueness_check(const EfficiencyFunction& f, double eps_L) {
  if (eps_L < 0.0) throw std::invalid_argument("se_uniqueness_check: eps_L must be nonnegative");
  SeUniquenessReport rep;
  rep.eps_L = eps_L;
  rep.curvature_condition = f.curvature_ratio_limit_at_zero() > 2.0 * eps_L;

  const double bstar = beta_star(f);
  if (eps_L == 0.0) {
    // the residual reduces to the beta* residual; its only root is the
    // boundary point beta* itself
    rep.single_root = true;
    rep.sign_changes = 0;
    return rep;
  }
  const auto resid = [&](double x) {
    return x * (1.0 - eps_L * x) * f.deriv(x) - f.value(x);
  };
  const int points = 10000;
  const double lo = 1e-6 * bstar;
  const double ratio = std::pow(bstar / lo, 1.0 / (points - 1));
  int changes = 0, last_sign = 0;
  double x = lo;
  for (int i = 0; i < points; ++i, x *= ratio) {
    const double r = resid(std::min(x, bstar));
    const int s = r > 0.0 ? 1 : (r < 0.0 ? -1 : 0);
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) ++changes;
      last_sign = s;
    }
  }
  rep.sign_changes = changes;
  rep.single_root = changes == 1;
  return rep;
}

ParetoReport pareto_dominance_check(const NetworkConfig& cfg, const RolePartition& partition,
                                    const EfficiencyFunction& f) {
  ParetoReport rep;
  rep.ne = nash_powers(cfg, f);
  rep.se = stackelberg_powers(cfg, partition, f);
  const auto sz = static_cast<std::size_t>(cfg.K);
  rep.ratio.resize(sz);
  for (std::size_t i = 0; i < sz; ++i) rep.ratio[i] = rep.se.utilities[i] / rep.ne.utilities[i];
  constexpr double kSlack = 1.0 - 1e-10;
  rep.leaders_ok = true;
  for (int k : partition.leaders)
    rep.leaders_ok = rep.leaders_ok && rep.ratio[static_cast<std::size_t>(k)] >= kSlack;
  rep.all_ok = std::all_of(rep.ratio.begin(), rep.ratio.end(),
                           [](double r) { return r >= kSlack; });
  return rep;
}

SensingThresholdReport sensing_threshold(const NetworkConfig& cfg, const RolePartition& partition,
                                         const EfficiencyFunction& f, int follower) {
  if (std::find(partition.followers.begin(), partition.followers.end(), follower) ==
      partition.followers.end())
    throw std::invalid_argument("sensing_threshold: user is not a follower in this partition");
  const EquilibriumReport se = stackelberg_powers(cfg, partition, f);
  const double bstar = se.constants.beta_star, gstar = se.constants.gamma_star_L;
  const double bracket = 1.0 - (f.value(gstar) / gstar) / (f.value(bstar) / bstar) *
                                   (cfg.N + gstar) / (cfg.N + bstar);
  double min_cross = std::numeric_limits<double>::infinity();
  double min_direct = std::numeric_limits<double>::infinity();
  for (int l : partition.leaders) {
    const double p = se.powers[static_cast<std::size_t>(l)];
    min_cross = std::min(min_cross, cfg.cross_gain(follower, l) * p);
    min_direct = std::min(min_direct, cfg.g[static_cast<std::size_t>(follower)] * p);
  }
  SensingThresholdReport rep;
  rep.min_cross_energy = cfg.T * min_cross;
  rep.bound = bracket * rep.min_cross_energy;
  rep.bound_direct_gain = bracket * cfg.T * min_direct;
  rep.follower_preferred = cfg.xi_min <= rep.bound;
  return rep;
}

} // namespace greenpc
