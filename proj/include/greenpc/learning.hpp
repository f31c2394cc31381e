#pragma once

#include <optional>
#include <span>
#include <vector>

#include "greenpc/sensing.hpp"

namespace greenpc {

struct LearningStep {
  int step = 0;
  int profile_mask = 0;
  std::vector<double> ns_freq;   // empirical NS frequency per player so far
  std::vector<double> utilities; // realized payoff at the recorded profile
};

struct LearningTrace {
  std::vector<LearningStep> iterations;
  bool converged = false;
  int switch_count = 0;                        // round-robin dynamics only
  std::optional<int> limit_profile;            // set when play settles on a pure profile
  std::optional<MixedProfile> limit_mixture;   // empirical mixture (fictitious play)
};

/// Round-robin better-reply dynamics: players move in index order, the
/// active player switches action iff that strictly improves his payoff by
/// more than 1e-12. Stops at a profile no player wants to leave, or after
/// max_steps player-turns.
LearningTrace best_response_dynamics(const SensingGame& game, int init_mask, int max_steps);

/// Discrete fictitious play: every step all players simultaneously best-
/// respond to the product of the other players' empirical NS-frequencies
/// (one phantom observation at the prior; ties resolved to NS).
/// Convergence is declared when no player's empirical frequency moves more
/// than 1e-4 across the last 10% of the horizon.
LearningTrace fictitious_play(const SensingGame& game, int horizon,
                              std::span<const double> init_beliefs);

} // namespace greenpc
