#include "greenpc/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "greenpc/errors.hpp"

namespace greenpc {

namespace {

void require_complete(const SensingGame& game, const char* op) {
  if (!game.all_feasible())
    throw InfeasibleError(std::string(op) + ": game has infeasible cells");
}

std::vector<double> freq_from_counts(std::span<const int> ns_count, int steps) {
  std::vector<double> f(ns_count.size());
  for (std::size_t k = 0; k < ns_count.size(); ++k)
    f[k] = steps > 0 ? static_cast<double>(ns_count[k]) / steps : 0.0;
  return f;
}

} // namespace

LearningTrace best_response_dynamics(const SensingGame& game, int init_mask, int max_steps) {
  require_complete(game, "best_response_dynamics");
  if (init_mask < 0 || init_mask >= game.num_profiles())
    throw std::invalid_argument("best_response_dynamics: bad initial profile");
  if (max_steps < 1) throw std::invalid_argument("best_response_dynamics: max_steps >= 1");

  constexpr double kImprove = 1e-12;
  LearningTrace trace;
  std::vector<int> ns_count(static_cast<std::size_t>(game.K), 0);
  int mask = init_mask;
  int quiet_turns = 0; // consecutive turns without a switch

  for (int step = 1; step <= max_steps; ++step) {
    const int player = (step - 1) % game.K;
    const int flipped = mask ^ (1 << player);
    if (game.payoff_of(flipped, player) > game.payoff_of(mask, player) + kImprove) {
      mask = flipped;
      ++trace.switch_count;
      quiet_turns = 0;
    } else {
      ++quiet_turns;
    }

    for (int k = 0; k < game.K; ++k)
      ns_count[static_cast<std::size_t>(k)] += ((mask >> k) & 1) == 0;
    LearningStep rec;
    rec.step = step;
    rec.profile_mask = mask;
    rec.ns_freq = freq_from_counts(ns_count, step);
    rec.utilities = game.payoff[static_cast<std::size_t>(mask)];
    trace.iterations.push_back(std::move(rec));

    if (quiet_turns >= game.K) { // a full silent round: nobody wants to move
      trace.converged = true;
      trace.limit_profile = mask;
      break;
    }
  }
  return trace;
}

LearningTrace fictitious_play(const SensingGame& game, int horizon,
                              std::span<const double> init_beliefs) {
  require_complete(game, "fictitious_play");
  if (horizon < 1) throw std::invalid_argument("fictitious_play: horizon >= 1");
  if (init_beliefs.size() != static_cast<std::size_t>(game.K))
    throw std::invalid_argument("fictitious_play: need one prior per player");
  for (double b : init_beliefs)
    if (!(b >= 0.0 && b <= 1.0))
      throw std::invalid_argument("fictitious_play: priors must lie in [0,1]");

  const int K = game.K;
  // phantom observation of weight 1 at the prior
  std::vector<double> ns_weight(init_beliefs.begin(), init_beliefs.end());
  std::vector<int> ns_count(static_cast<std::size_t>(K), 0);
  double total_weight = 1.0;

  LearningTrace trace;
  trace.iterations.reserve(static_cast<std::size_t>(horizon));

  for (int step = 1; step <= horizon; ++step) {
    // belief about player j = smoothed empirical NS frequency
    std::vector<double> belief(static_cast<std::size_t>(K));
    for (int j = 0; j < K; ++j) belief[static_cast<std::size_t>(j)] = ns_weight[static_cast<std::size_t>(j)] / total_weight;

    int mask = 0;
    for (int k = 0; k < K; ++k) {
      // expected payoff of each own action over the product of the
      // opponents' mixtures
      double e_ns = 0.0, e_s = 0.0;
      const int others = K - 1;
      for (int sub = 0; sub < (1 << others); ++sub) {
        double prob = 1.0;
        int opp_mask = 0;
        int bit = 0;
        for (int j = 0; j < K; ++j) {
          if (j == k) continue;
          const bool senses = (sub >> bit) & 1;
          prob *= senses ? 1.0 - belief[static_cast<std::size_t>(j)]
                         : belief[static_cast<std::size_t>(j)];
          if (senses) opp_mask |= 1 << j;
          ++bit;
        }
        if (prob == 0.0) continue;
        e_ns += prob * game.payoff_of(opp_mask, k);
        e_s += prob * game.payoff_of(opp_mask | (1 << k), k);
      }
      if (e_s > e_ns) mask |= 1 << k; // ties resolve to NS
    }

    for (int k = 0; k < K; ++k) {
      const bool ns = ((mask >> k) & 1) == 0;
      ns_weight[static_cast<std::size_t>(k)] += ns ? 1.0 : 0.0;
      ns_count[static_cast<std::size_t>(k)] += ns ? 1 : 0;
    }
    total_weight += 1.0;

    LearningStep rec;
    rec.step = step;
    rec.profile_mask = mask;
    rec.ns_freq = freq_from_counts(ns_count, step);
    rec.utilities = game.payoff[static_cast<std::size_t>(mask)];
    trace.iterations.push_back(std::move(rec));
  }

  // movement of the empirical frequencies across the final 10% of the run
  const std::size_t window_start =
      trace.iterations.size() - std::max<std::size_t>(1, trace.iterations.size() / 10);
  double movement = 0.0;
  for (int k = 0; k < K; ++k) {
    double lo = 1.0, hi = 0.0;
    for (std::size_t t = window_start; t < trace.iterations.size(); ++t) {
      const double v = trace.iterations[t].ns_freq[static_cast<std::size_t>(k)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    movement = std::max(movement, hi - lo);
  }
  trace.converged = movement < 1e-4;

  MixedProfile mix;
  mix.ns_prob = trace.iterations.back().ns_freq;
  trace.limit_mixture = std::move(mix);
  // if play settled on one profile through the window, report it too
  bool settled = true;
  for (std::size_t t = window_start; t + 1 < trace.iterations.size() && settled; ++t)
    settled = trace.iterations[t].profile_mask == trace.iterations[t + 1].profile_mask;
  if (settled) trace.limit_profile = trace.iterations.back().profile_mask;
  return trace;
}

} // namespace greenpc
