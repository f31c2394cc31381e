#pragma once

#include <span>
#include <vector>

#include "greenpc/efficiency.hpp"

namespace greenpc {

/// Physical and game parameters of the power-control problem.
///
/// SINR model: gamma_k = g_k p_k / (sigma2 + (1/N) sum_{j!=k} g_j p_j).
/// Cross gains g_cross[k][l] (follower k sensing leader l) default to the
/// leader's direct gain g[l] when not given explicitly.
struct NetworkConfig {
  int K = 0;                  // number of transmitters
  int N = 1;                  // spreading factor (interference scaling 1/N)
  double sigma2 = 1.0;        // noise variance [W]
  std::vector<double> g;      // direct channel power gains
  std::vector<double> R;      // transmission rates [bit/s]
  std::vector<double> p_max;  // per-user power caps [W] (may be +inf)
  double alpha = 0.0;         // sensing cost fraction, common to all followers
  double T = 1.0;             // block duration [s]
  double xi_min = 0.0;        // sensing energy threshold [J]
  std::vector<std::vector<double>> g_cross; // K x K; empty => default rule

  static NetworkConfig symmetric(int K, int N, double sigma2 = 1.0, double gain = 1.0,
                                 double rate = 1.0, double alpha = 0.0);

  double cross_gain(int follower, int leader) const {
    return g_cross.empty() ? g[static_cast<std::size_t>(leader)]
                           : g_cross[static_cast<std::size_t>(follower)]
                                    [static_cast<std::size_t>(leader)];
  }
  /// R_k g_k / sigma2, the per-user utility scale.
  double mu(int k) const {
    return R[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)] / sigma2;
  }
  bool is_symmetric() const;
  void validate() const; // throws std::invalid_argument on bad fields
};

/// Split of {0..K-1} into non-cognitive leaders and cognitive followers.
struct RolePartition {
  std::vector<int> leaders;
  std::vector<int> followers;

  static RolePartition first_leaders(int K, int L);
  int L() const { return static_cast<int>(leaders.size()); }
  int F() const { return static_cast<int>(followers.size()); }
  void validate(int K) const;
};

/// Calibration scalars for a leader count: beta*, gamma*_L, eps_L, a_L.
struct EquilibriumConstants {
  double beta_star = 0.0;
  double gamma_star_L = 0.0;
  double eps_L = 0.0;
  double a_L = 0.0; // common power denominator / N
};

struct EquilibriumReport {
  enum class Kind { NE, SE };
  Kind kind = Kind::NE;
  std::vector<double> powers;    // [W]
  std::vector<double> sinrs;     // beta* for followers/NE, gamma*_L for leaders
  std::vector<double> utilities; // [bit/J], sensing cost applied to followers
  std::vector<bool> is_follower;
  std::vector<bool> power_cap_hit;
  bool feasible = true;
  EquilibriumConstants constants;
  double total_power() const;
};

/// SINRs from a power vector (no feasibility requirements).
std::vector<double> sinr_of(std::span<const double> powers, const NetworkConfig& cfg);

/// eps_L = F beta* / (N^2 - N (F-1) beta*).
/// Throws InfeasibleError ("NonpositiveDenominator") when the denominator
/// is not positive.
double epsilon_L(int N, int F, double beta_star);

/// Simultaneous one-shot equilibrium: every user at SINR beta*, powers
/// p_k = (sigma2/g_k) beta* / (1 - (K-1) beta* / N).
/// Throws InfeasibleError ("InfeasibleLoad") when (K-1) beta* / N >= 1.
/// Power caps are reported as flags, never projected.
EquilibriumReport nash_powers(const NetworkConfig& cfg, const EfficiencyFunction& f);

/// Two-level equilibrium for a fixed role partition (L >= 1, F >= 1):
/// leaders at SINR gamma*_L, followers at beta*, follower utilities scaled
/// by (1 - alpha). Throws InfeasibleError ("InfeasibleHierarchy") when the
/// common power denominator is not positive.
EquilibriumReport stackelberg_powers(const NetworkConfig& cfg, const RolePartition& partition,
                                     const EfficiencyFunction& f);

/// Normalized per-role equilibrium utilities u_k / mu_k, which depend only
/// on the role and the counts (F leaders' complement). F = 0 gives the
/// one-shot value for leaders; F = K gives it for followers (cost-free).
struct RoleValues {
  double leader = 0.0;
  double follower_costfree = 0.0; // multiply by (1 - alpha) for the utility
  EquilibriumConstants constants;
};
RoleValues role_values(int K, int N, int F, const EfficiencyFunction& f);

/// Uniqueness conditions for the two-level equilibrium at a given eps_L:
/// (1) lim_{x->0+} f''/f' > 2 eps_L, (2) the gamma* residual has a single
/// root in (0, beta*) (dense geometric sign scan; eps_L = 0 counts the
/// boundary root at beta* as single).
struct SeUniquenessReport {
  bool curvature_condition = false;
  bool single_root = false;
  int sign_changes = 0;
  double eps_L = 0.0;
  bool pass() const { return curvature_condition && single_root; }
};
SeUniquenessReport se_uniqueness_check(const EfficiencyFunction& f, double eps_L);

/// Per-user utility ratios u^SE / u^NE for a partition, with the
/// guarantees: leaders never lose vs the one-shot outcome, and nobody
/// loses when sensing is free.
struct ParetoReport {
  std::vector<double> ratio;
  bool leaders_ok = false;           // all leader ratios >= 1
  bool all_ok = false;               // all ratios >= 1 (expected iff alpha == 0)
  EquilibriumReport ne, se;
};
ParetoReport pareto_dominance_check(const NetworkConfig& cfg, const RolePartition& partition,
                                    const EfficiencyFunction& f);

/// Largest sensing-energy threshold for which the given follower prefers
/// following over leading, evaluated at the equilibrium powers:
///   [1 - (f(g*)/g*)/(f(b*)/b*) * (N+g*)/(N+b*)] * T * min_l g_cross[f][l] p_l.
/// `bound_direct_gain` evaluates the same bracket with the follower's own
/// direct gain in place of the cross gains (both readings appear in the
/// source material for this quantity).
struct SensingThresholdReport {
  double bound = 0.0;
  double bound_direct_gain = 0.0;
  double min_cross_energy = 0.0; // T * min_l g_cross[f][l] p_l
  bool follower_preferred = false; // xi_min <= bound
};
SensingThresholdReport sensing_threshold(const NetworkConfig& cfg,
                                         const RolePartition& partition,
                                         const EfficiencyFunction& f, int follower);

} // namespace greenpc
