// Test-side reference implementations, kept independent of the library's
// numeric paths: plain bisection instead of the safeguarded solver,
// grid/golden-section search instead of closed forms, and a hand-rolled
// equilibrium enumeration. Used to freeze expected values and to
// cross-check the production code.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "greenpc/hierarchy.hpp"
#include "greenpc/sensing.hpp"

namespace oracle {

// Plain bisection on [lo, hi]; requires a sign change.
inline double bisect_root(const std::function<double(double)>& h, double lo, double hi,
                          int iterations = 200) {
  double flo = h(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Dense grid scan for a bracket followed by bisection.
inline double scan_and_bisect(const std::function<double(double)>& h, double lo, double hi,
                              int points = 20000) {
  double prev_x = lo, prev_v = h(lo);
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  for (int i = 1; i < points; ++i) {
    const double x = lo * std::pow(ratio, i);
    const double v = h(x);
    if (prev_v != 0.0 && v != 0.0 && (v > 0.0) != (prev_v > 0.0))
      return bisect_root(h, prev_x, x);
    prev_x = x;
    prev_v = v;
  }
  return std::nan("");
}

// Golden-section maximizer of a quasiconcave function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-8) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
  double fa = f(a), fb = f(b);
  while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  return 0.5 * (lo + hi);
}

inline double diff1(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * std::max(std::abs(x), 1.0);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double diff2(const std::function<double(double)>& f, double x) {
  const double h = 1e-4 * std::max(std::abs(x), 1.0);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Bilevel objective of a leader at a two-level equilibrium: his utility
// when the followers re-solve their simultaneous equilibrium (all follower
// SINRs at beta*) against the deviated leader power. Returns the utility
// for the candidate power p_leader, other leaders frozen at their
// equilibrium powers.
inline double leader_objective_with_reaction(const greenpc::NetworkConfig& cfg,
                                             const greenpc::RolePartition& part,
                                             const greenpc::EfficiencyFunction& f, int leader,
                                             double p_leader,
                                             const std::vector<double>& eq_powers,
                                             double bstar) {
  double received_from_leaders = 0.0;
  for (int l : part.leaders) {
    const auto i = static_cast<std::size_t>(l);
    received_from_leaders += cfg.g[i] * (l == leader ? p_leader : eq_powers[i]);
  }
  const int F = part.F();
  const double n = cfg.N;
  const double denom = 1.0 - (F - 1) * bstar / n;
  if (denom <= 0.0) return -1e300;
  // common received follower power solving the follower fixed point
  const double x = bstar * (cfg.sigma2 + received_from_leaders / n) / denom;
  const auto li = static_cast<std::size_t>(leader);
  const double own = cfg.g[li] * p_leader;
  const double gamma = own / (cfg.sigma2 + (received_from_leaders - own + F * x) / n);
  return cfg.R[li] * f.value(gamma) / p_leader;
}

// Exhaustive pure-equilibrium enumeration written against the raw payoff
// table (mirrors the definition, not the library loop).
inline std::vector<int> brute_force_pure_ne(const greenpc::SensingGame& game) {
  std::vector<int> result;
  for (int mask = 0; mask < game.num_profiles(); ++mask) {
    bool is_ne = true;
    for (int player = 0; player < game.K; ++player) {
      const int deviation = mask ^ (1 << player);
      if (game.payoff_of(deviation, player) > game.payoff_of(mask, player)) {
        is_ne = false;
        break;
      }
    }
    if (is_ne) result.push_back(mask);
  }
  return result;
}

// Deterministic random configurations with a feasible one-shot equilibrium.
struct ConfigDraw {
  greenpc::NetworkConfig net;
  greenpc::EfficiencyFunction f = greenpc::EfficiencyFunction::exponential_outage(1.0);
};

inline ConfigDraw random_feasible_config(std::uint64_t seed, int k_min = 2, int k_max = 4,
                                         bool random_alpha = false) {
  std::mt19937_64 rng(seed);
  const auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  ConfigDraw d;
  const int K = std::uniform_int_distribution<int>(k_min, k_max)(rng);
  const double c = uniform(0.3, 8.0);
  d.f = greenpc::EfficiencyFunction::exponential_outage(c);
  // choose N with load margin so every partition is feasible
  const int n_floor = static_cast<int>(std::ceil((K - 1) * c / uniform(0.2, 0.9))) + 1;
  d.net.K = K;
  d.net.N = std::max(1, n_floor);
  d.net.sigma2 = uniform(0.1, 10.0);
  d.net.alpha = random_alpha ? uniform(0.0, 1.0) : 0.0;
  for (int k = 0; k < K; ++k) {
    d.net.g.push_back(std::exp(uniform(-2.0, 2.0)));
    d.net.R.push_back(std::exp(uniform(-1.0, 2.0)));
    d.net.p_max.push_back(1e30);
  }
  d.net.validate();
  return d;
}

} // namespace oracle
