#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "greenpc/hierarchy.hpp"

namespace greenpc {

/// Binary-action game "sense / not sense" with payoffs taken from the
/// power-control equilibrium induced by every joint choice.
///
/// Joint profiles are bitmasks: bit k set means player k senses (S).
/// Mask 0 (nobody senses) is the one-shot outcome; the all-ones mask is
/// the one-shot outcome with every utility scaled by (1 - alpha).
struct SensingGame {
  int K = 0;
  std::vector<std::vector<double>> payoff; // [mask][player]
  std::vector<char> cell_feasible;         // per mask
  std::vector<double> weights;             // mu_k = R_k g_k / sigma2
  NetworkConfig config;                    // provenance
  EfficiencyFunction f;                    // provenance

  SensingGame(NetworkConfig cfg, EfficiencyFunction func)
      : config(std::move(cfg)), f(func) {}

  int num_profiles() const { return 1 << K; }
  bool all_feasible() const;
  double payoff_of(int mask, int player) const {
    return payoff[static_cast<std::size_t>(mask)][static_cast<std::size_t>(player)];
  }
  double payoff_scale() const; // max |payoff| over feasible cells
};

SensingGame build_sensing_game(const NetworkConfig& cfg, const EfficiencyFunction& f);

/// Probability of playing NS, per player.
struct MixedProfile {
  std::vector<double> ns_prob;
};

/// Distribution over joint profiles, indexed by mask.
struct CorrelatedDistribution {
  std::vector<double> q;
};

/// Four-cycle test for an exact potential: for every player pair, every
/// pair of own actions and every context of the others, the closed cycle
/// of payoff differences must vanish. Returns a violating cycle otherwise.
struct PotentialCheck {
  bool is_potential = false;
  int player_i = -1, player_j = -1, context_mask = -1;
  double residual = 0.0;
};
PotentialCheck exact_potential_check(const SensingGame& game);

/// Same test on the rescaled payoffs U_i / mu_i, plus reconstruction of the
/// potential V by integrating payoff differences from the all-NS profile
/// and a full path-independence audit over unilateral edges.
struct WeightedPotentialCheck {
  bool is_weighted_potential = false;
  std::vector<double> potential; // V per mask, V(all-NS) = 0
  double max_edge_residual = 0.0;
  PotentialCheck rescaled_cycle;
};
WeightedPotentialCheck weighted_potential_check(const SensingGame& game);

/// Congestion-style potential of the symmetric sensing game:
///   Phi(F, L) = (1-alpha) sum_{i=1..F} vS(i) + sum_{j=1..L} vNS(j),
/// where vS(i) is the cost-free normalized follower value with i senders
/// total and vNS(j) the normalized leader value with j non-senders total.
/// Requires F + L = K and a symmetric configuration.
double rosenthal_potential(const NetworkConfig& cfg, const EfficiencyFunction& f, int F, int L);

/// Argmax of Phi over sender counts, with a consistency flag against the
/// count profiles of the game's pure equilibria.
struct RosenthalArgmax {
  int F = 0, L = 0;
  double value = 0.0;
  bool matches_pure_equilibria = false;
};
RosenthalArgmax rosenthal_argmax(const NetworkConfig& cfg, const EfficiencyFunction& f);

/// All joint profiles robust to unilateral deviations (exhaustive check;
/// desk scale). Requires every cell feasible.
std::vector<int> pure_equilibria(const SensingGame& game);

/// 2-player equilibrium census. The classification is decided from the
/// payoff table (valid for any N); `paper_threshold_n1` restates the
/// spreading-free closed form (beta* - gamma*) / (1 - beta* gamma*), and
/// `table_threshold` is the exact sensing-cost threshold for this table.
enum class TwoPlayerClass { Unique, Three, Infinite };
struct TwoPlayerClassification {
  TwoPlayerClass kind = TwoPlayerClass::Unique;
  double table_threshold = 0.0;
  double paper_threshold_n1 = 0.0;
  std::vector<int> pure; // masks
  bool mixed_exists = false;
};
TwoPlayerClassification classify_2player(const NetworkConfig& cfg, const EfficiencyFunction& f);

/// Strictly mixed 2-player equilibrium from the indifference principle
/// (generic 2x2 closed form). The transcription cross-check field compares
/// against the published display for the N = 1 cells when applicable.
struct MixedEquilibriumResult {
  MixedProfile profile;
  std::vector<double> utilities;
  double max_indifference_gap = 0.0;
  std::optional<double> transcription_value; // only at N = 1
  bool transcription_consistent = true;
};
MixedEquilibriumResult mixed_equilibrium(const NetworkConfig& cfg, const EfficiencyFunction& f);

/// Canonical correlated-equilibrium inequality check: no player may gain
/// by deviating from any on-support recommendation. Tolerance is absolute
/// after normalizing by the payoff scale.
bool is_correlated_equilibrium(const CorrelatedDistribution& q, const SensingGame& game,
                               double tol = 1e-9);

/// The segment of correlated equilibria spanned by the two pure equilibria
/// of the 2-player game under condition C2: mass lambda on (S, NS) and
/// 1 - lambda on (NS, S).
struct CorrelatedPoint {
  double lambda = 0.0;
  CorrelatedDistribution dist;
  std::array<double, 2> utilities{};
};
CorrelatedPoint correlated_segment(const SensingGame& game, double lambda);

/// Nash bargaining point on the correlated segment with the mixed
/// equilibrium as disagreement point (golden-section over lambda).
struct BargainingPoint {
  double lambda = 0.0;
  std::array<double, 2> utilities{};
  std::array<double, 2> disagreement{};
};
BargainingPoint nash_bargaining(const SensingGame& game);

/// Dominance conditions under which (NS,...,NS) is the unique pure
/// equilibrium: NS must beat S both when no other player senses and when
/// some do. The decision thresholds come from the payoff table; the
/// `displayed_*` fields restate the closed-form variants, kept for
/// reference only since they disagree with the table in general.
struct DominanceUniqueness {
  bool ns_dominates = false;
  bool cond_no_other_sensers = false;
  bool cond_some_other_sensers = false;
  double threshold_no_other_sensers = 0.0;   // table-derived
  double threshold_some_other_sensers = 0.0; // table-derived, max over contexts
  double displayed_cond1_threshold = 0.0;    // published closed form
  double displayed_cond2_threshold = 0.0;    // published closed form
};
DominanceUniqueness dominance_uniqueness_check(const NetworkConfig& cfg,
                                               const EfficiencyFunction& f);

/// Joint sense-and-power game on a discretized power grid (K = 2).
/// Verifies that sensing is a dominated component, that the only pure
/// equilibria sit at (NS, NS) with one-shot powers up to grid resolution,
/// and the efficiency loss versus playing the two games in sequence.
struct HybridCheck {
  bool sensing_dominated = false;
  bool unique_ne_matches = false;
  int ne_count = 0;
  std::array<double, 2> ne_powers_found{};
  std::array<double, 2> ne_powers_expected{};
  std::array<double, 2> hybrid_utilities{};
  // utilities at each pure equilibrium of the separated sensing game
  std::vector<std::array<double, 2>> sensing_ne_utilities;
  std::vector<int> sensing_ne_masks;
  bool braess_holds = false;
  bool braess_strict = false;
};
HybridCheck hybrid_game_check(const NetworkConfig& cfg, const EfficiencyFunction& f,
                              std::span<const double> power_grid);

} // namespace greenpc
