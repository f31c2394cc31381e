#pragma once

#include <vector>

#include "greenpc/hierarchy.hpp"

namespace greenpc {

/// One row of the leader-count sweep.
struct WelfareSweepRow {
  int L = 0;
  int F = 0;
  double w = 0.0;           // sum utility with L leaders [bit/J]
  double w_ne = 0.0;        // sum utility at the one-shot equilibrium
  double gain_pct = 0.0;    // 100 * (w - w_ne) / w_ne
  double total_power = 0.0; // [W]
  bool feasible = false;
};

/// Sum of equilibrium utilities for L leaders (L = K is the one-shot
/// equilibrium, with leaders = users 0..L-1 otherwise).
double social_welfare(const NetworkConfig& cfg, int L, const EfficiencyFunction& f);

/// Closed-form sum utility for symmetric configurations, computed from the
/// calibration constants instead of the per-user powers. Independent of
/// social_welfare's path; used as a cross-check. Requires cfg.is_symmetric().
double social_welfare_symmetric_closed_form(const NetworkConfig& cfg, int L,
                                            const EfficiencyFunction& f);

/// Sum of equilibrium powers for L leaders (L = K is the one-shot case).
double total_power(const NetworkConfig& cfg, int L, const EfficiencyFunction& f);

struct LeaderSweepResult {
  int best_L = 0;                   // argmax of w over feasible rows, ties to smaller L
  std::vector<WelfareSweepRow> rows; // L = 1..K in order
};

/// Exhaustive welfare maximization over the leader count. Requires the
/// one-shot equilibrium to be feasible; individually infeasible rows are
/// flagged and excluded from the argmax.
LeaderSweepResult optimal_leaders_exact(const NetworkConfig& cfg, const EfficiencyFunction& f);

/// Continuous approximation of the optimal leader count for symmetric,
/// lightly loaded networks with the exponential-outage family:
///   lambda* = (1 + N/c) (1 - sqrt(1 - (K/N) c/(c/N + 1)))  if (K-1)/N <= 1/c
///   lambda* = K - kappa                                     otherwise.
/// L_star is the better of floor/ceil under the symmetric closed-form
/// welfare, clamped to [1, K-1].
struct ApproxLeaderCount {
  double lambda_star = 0.0;
  int L_star = 0;
  double kappa = 0.5;
  enum class Regime { Interior, Boundary } regime = Regime::Interior;
};
ApproxLeaderCount optimal_leaders_approx(int K, int N, double c, double kappa = 0.5);

} // namespace greenpc
