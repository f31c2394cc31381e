#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "greenpc/learning.hpp"
#include "oracles.hpp"

using namespace greenpc;

namespace {

const EfficiencyFunction kFig1 = EfficiencyFunction::from_spectral_efficiency(0.9);

NetworkConfig fig1_config(double alpha = 0.2) {
  NetworkConfig cfg = NetworkConfig::symmetric(2, 1, 1.0, 1.0, 1.0, alpha);
  cfg.R = {2.0, 2.5};
  return cfg;
}

bool is_pure_ne(const SensingGame& game, int mask) {
  for (int k = 0; k < game.K; ++k)
    if (game.payoff_of(mask ^ (1 << k), k) > game.payoff_of(mask, k)) return false;
  return true;
}

} // namespace

TEST_CASE("best_response_dynamics") {
  const SensingGame game = build_sensing_game(fig1_config(), kFig1);

  SUBCASE("from both-sense it reaches a coordinated profile within four turns") {
    const auto trace = best_response_dynamics(game, 0b11, 100);
    CHECK(trace.converged);
    REQUIRE(trace.limit_profile.has_value());
    CHECK((*trace.limit_profile == 0b01 || *trace.limit_profile == 0b10));
    CHECK(trace.iterations.size() <= 4);
  }
  SUBCASE("an equilibrium start never switches") {
    const auto trace = best_response_dynamics(game, 0b01, 100);
    CHECK(trace.converged);
    CHECK(trace.switch_count == 0);
    CHECK(*trace.limit_profile == 0b01);
  }
  SUBCASE("under dominance every start reaches all-NS with one switch each") {
    const SensingGame dom = build_sensing_game(fig1_config(0.9), kFig1);
    for (int init = 0; init < 4; ++init) {
      const auto trace = best_response_dynamics(dom, init, 100);
      CHECK(trace.converged);
      CHECK(*trace.limit_profile == 0);
      CHECK(trace.switch_count <= dom.K);
    }
  }
  SUBCASE("the potential rises at every switch and the trace terminates") {
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
      const auto draw = oracle::random_feasible_config(seed, 2, 4, true);
      const SensingGame g = build_sensing_game(draw.net, draw.f);
      const auto wp = weighted_potential_check(g);
      REQUIRE(wp.is_weighted_potential);
      const int init = static_cast<int>(seed % static_cast<std::uint64_t>(g.num_profiles()));
      const auto trace = best_response_dynamics(g, init, 1000);
      CHECK(trace.converged);
      CHECK(trace.switch_count <= g.num_profiles() - 1);
      REQUIRE(trace.limit_profile.has_value());
      CHECK(is_pure_ne(g, *trace.limit_profile));
      int prev = init;
      for (const auto& it : trace.iterations) {
        if (it.profile_mask != prev)
          CHECK(wp.potential[static_cast<std::size_t>(it.profile_mask)] >
                wp.potential[static_cast<std::size_t>(prev)]);
        prev = it.profile_mask;
      }
    }
  }
  SUBCASE("empirical frequencies are consistent with the recorded history") {
    const auto trace = best_response_dynamics(game, 0b11, 50);
    std::vector<int> ns_count(2, 0);
    for (std::size_t t = 0; t < trace.iterations.size(); ++t) {
      for (int k = 0; k < 2; ++k) {
        ns_count[static_cast<std::size_t>(k)] +=
            ((trace.iterations[t].profile_mask >> k) & 1) == 0;
        CHECK(trace.iterations[t].ns_freq[static_cast<std::size_t>(k)] ==
              doctest::Approx(static_cast<double>(ns_count[static_cast<std::size_t>(k)]) /
                              static_cast<double>(t + 1)));
      }
    }
  }
}

TEST_CASE("fictitious_play") {
  SUBCASE("dominated sensing fades from play") {
    const SensingGame dom = build_sensing_game(fig1_config(0.9), kFig1);
    const std::vector<double> priors(2, 0.5);
    const auto trace = fictitious_play(dom, 10000, priors);
    CHECK(trace.converged);
    for (double freq : trace.limit_mixture->ns_prob) CHECK(1.0 - freq <= 0.01);
  }
  SUBCASE("asymmetric priors coordinate on a pure equilibrium") {
    const SensingGame game = build_sensing_game(fig1_config(), kFig1);
    const std::vector<double> priors{0.9, 0.1};
    const auto trace = fictitious_play(game, 5000, priors);
    CHECK(trace.converged);
    REQUIRE(trace.limit_profile.has_value());
    CHECK(is_pure_ne(game, *trace.limit_profile));
    CHECK(*trace.limit_profile == 0b10); // player 1 leads, player 2 senses
  }
  SUBCASE("symmetric uniform priors drive beliefs to the mixed point") {
    NetworkConfig cfg = fig1_config();
    cfg.R = {2.0, 2.0};
    const SensingGame game = build_sensing_game(cfg, kFig1);
    const std::vector<double> priors(2, 0.5);
    const auto trace = fictitious_play(game, 100000, priors);
    // miscoordinated play cycles, but the belief path settles on the
    // indifference frequency
    const double mixed_ns = 0.459269963753148;
    for (double freq : trace.limit_mixture->ns_prob)
      CHECK(std::abs(freq - mixed_ns) <= 0.02);
    CHECK(trace.converged);
  }
  SUBCASE("frequencies accumulate the actual action history") {
    const SensingGame game = build_sensing_game(fig1_config(), kFig1);
    const std::vector<double> priors{0.3, 0.7};
    const auto trace = fictitious_play(game, 200, priors);
    std::vector<int> ns_count(2, 0);
    for (std::size_t t = 0; t < trace.iterations.size(); ++t)
      for (int k = 0; k < 2; ++k) {
        ns_count[static_cast<std::size_t>(k)] +=
            ((trace.iterations[t].profile_mask >> k) & 1) == 0;
        CHECK(trace.iterations[t].ns_freq[static_cast<std::size_t>(k)] ==
              doctest::Approx(static_cast<double>(ns_count[static_cast<std::size_t>(k)]) /
                              static_cast<double>(t + 1)));
      }
  }
  SUBCASE("input validation") {
    const SensingGame game = build_sensing_game(fig1_config(), kFig1);
    const std::vector<double> bad{0.5};
    CHECK_THROWS_AS(fictitious_play(game, 100, bad), std::invalid_argument);
    const std::vector<double> out_of_range{0.5, 1.5};
    CHECK_THROWS_AS(fictitious_play(game, 100, out_of_range), std::invalid_argument);
  }
}
