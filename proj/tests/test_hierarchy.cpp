#include <doctest.h>

#include <cmath>
#include <vector>

#include "greenpc/errors.hpp"
#include "greenpc/hierarchy.hpp"
#include "oracles.hpp"

using namespace greenpc;

namespace {

const EfficiencyFunction kExp7 = EfficiencyFunction::exponential_outage(7.0);
const EfficiencyFunction kFig1 = EfficiencyFunction::from_spectral_efficiency(0.9);

// every reported SINR must be reproducible from the powers
void check_sinr_consistency(const EquilibriumReport& rep, const NetworkConfig& cfg) {
  const auto recomputed = sinr_of(rep.powers, cfg);
  for (std::size_t k = 0; k < rep.sinrs.size(); ++k)
    CHECK(std::abs(recomputed[k] - rep.sinrs[k]) <= 1e-10 * rep.sinrs[k]);
}

// A unilateral power search must not improve anyone's utility. Followers
// and one-shot players move last, so their search freezes everyone else;
// a committed leader's deviation propagates through the followers'
// reaction, so his search runs over the bilevel objective.
void check_best_response_stability(const EquilibriumReport& rep, const NetworkConfig& cfg,
                                   const EfficiencyFunction& f,
                                   const RolePartition* partition = nullptr) {
  for (int k = 0; k < cfg.K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const bool committed_leader = partition != nullptr && !rep.is_follower[i];
    const auto utility_at = [&](double p) {
      if (committed_leader)
        return oracle::leader_objective_with_reaction(cfg, *partition, f, k, p, rep.powers,
                                                      rep.constants.beta_star);
      std::vector<double> powers = rep.powers;
      powers[i] = p;
      const double cost = rep.is_follower[i] ? 1.0 - cfg.alpha : 1.0;
      return cost * cfg.R[i] * f.value(sinr_of(powers, cfg)[i]) / p;
    };
    const double hi = std::min(cfg.p_max[i], 100.0 * rep.powers[i]);
    const double best_p = oracle::golden_max(utility_at, 1e-9 * rep.powers[i], hi);
    const double base = committed_leader ? utility_at(rep.powers[i]) : rep.utilities[i];
    CHECK(utility_at(best_p) <= base * (1.0 + 1e-6));
    if (committed_leader) // the bilevel objective at the SE power matches the report
      CHECK(base == doctest::Approx(rep.utilities[i]).epsilon(1e-9));
  }
}

} // namespace

TEST_CASE("sinr_of") {
  SUBCASE("all-zero powers give all-zero SINRs") {
    const auto cfg = NetworkConfig::symmetric(3, 4);
    const std::vector<double> zeros(3, 0.0);
    for (double s : sinr_of(zeros, cfg)) CHECK(s == 0.0);
  }
  SUBCASE("single user has no interference") {
    NetworkConfig cfg = NetworkConfig::symmetric(1, 5);
    cfg.g = {3.0};
    const std::vector<double> p{2.0};
    CHECK(sinr_of(p, cfg)[0] == doctest::Approx(6.0).epsilon(1e-15));
  }
  SUBCASE("symmetric two-user case") {
    const auto cfg = NetworkConfig::symmetric(2, 1);
    const std::vector<double> p{1.0, 1.0};
    const auto s = sinr_of(p, cfg);
    CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("nash_powers") {
  SUBCASE("two symmetric users at r = 0.9") {
    const auto cfg = NetworkConfig::symmetric(2, 1);
    const auto rep = nash_powers(cfg, kFig1);
    const double c = kFig1.c();
    CHECK(rep.powers[0] == doctest::Approx(c / (1.0 - c)).epsilon(1e-12));
    CHECK(rep.powers[1] == rep.powers[0]);
    // fixed point of the numeric best responses
    check_best_response_stability(rep, cfg, kFig1);
    check_sinr_consistency(rep, cfg);
  }
  SUBCASE("load feasibility boundary at N = 128, c = 7") {
    CHECK_NOTHROW(nash_powers(NetworkConfig::symmetric(18, 128), kExp7));
    CHECK_NOTHROW(nash_powers(NetworkConfig::symmetric(19, 128), kExp7));
    CHECK_THROWS_AS(nash_powers(NetworkConfig::symmetric(20, 128), kExp7), InfeasibleError);
  }
  SUBCASE("every equilibrium SINR equals beta*") {
    const auto cfg = NetworkConfig::symmetric(17, 128);
    const auto rep = nash_powers(cfg, kExp7);
    for (double s : rep.sinrs) CHECK(s == doctest::Approx(7.0).epsilon(1e-12));
    check_sinr_consistency(rep, cfg);
  }
  SUBCASE("power caps are flagged, not projected") {
    NetworkConfig cfg = NetworkConfig::symmetric(2, 1);
    cfg.p_max = {1.0, 1e6};
    const auto rep = nash_powers(cfg, kFig1);
    CHECK(rep.power_cap_hit[0]);
    CHECK_FALSE(rep.power_cap_hit[1]);
    CHECK(rep.powers[0] > cfg.p_max[0]);
  }
}

TEST_CASE("epsilon_L") {
  CHECK(epsilon_L(4, 0, 7.0) == 0.0);
  CHECK(epsilon_L(1, 1, 0.866065983073615) ==
        doctest::Approx(0.866065983073615).epsilon(1e-15));
  CHECK(epsilon_L(128, 12, 7.0) == doctest::Approx(84.0 / 6528.0).epsilon(1e-15));
  CHECK_THROWS_AS(epsilon_L(2, 9, 7.0), InfeasibleError); // N^2 < N (F-1) beta*
}

TEST_CASE("stackelberg_powers") {
  SUBCASE("two users, no spreading: SINR identities via sinr_of") {
    const auto cfg = NetworkConfig::symmetric(2, 1);
    const auto part = RolePartition::first_leaders(2, 1);
    const auto rep = stackelberg_powers(cfg, part, kFig1);
    const double b = rep.constants.beta_star, g = rep.constants.gamma_star_L;
    CHECK(rep.powers[0] == doctest::Approx(g * (1.0 + b) / (1.0 - b * g)).epsilon(1e-12));
    CHECK(rep.powers[1] == doctest::Approx(b * (1.0 + g) / (1.0 - b * g)).epsilon(1e-12));
    CHECK(rep.sinrs[0] == doctest::Approx(g));
    CHECK(rep.sinrs[1] == doctest::Approx(b));
    check_sinr_consistency(rep, cfg);
    check_best_response_stability(rep, cfg, kFig1, &part);
  }
  SUBCASE("preconditions") {
    const auto cfg = NetworkConfig::symmetric(3, 8);
    CHECK_THROWS_AS(stackelberg_powers(cfg, RolePartition::first_leaders(3, 0), kFig1),
                    std::invalid_argument);
    CHECK_THROWS_AS(stackelberg_powers(cfg, RolePartition::first_leaders(3, 3), kFig1),
                    std::invalid_argument);
  }
  SUBCASE("infeasible hierarchy at overloaded configurations") {
    // one-shot equilibrium already infeasible; a balanced split fails too
    const auto cfg = NetworkConfig::symmetric(20, 128);
    CHECK_THROWS_AS(stackelberg_powers(cfg, RolePartition::first_leaders(20, 10), kExp7),
                    InfeasibleError);
    // but a single leader still works at this load
    CHECK_NOTHROW(stackelberg_powers(cfg, RolePartition::first_leaders(20, 1), kExp7));
  }
  SUBCASE("huge spreading factor reduces to the one-shot outcome") {
    const auto cfg = NetworkConfig::symmetric(2, 1000000);
    const auto se = stackelberg_powers(cfg, RolePartition::first_leaders(2, 1), kExp7);
    const auto ne = nash_powers(cfg, kExp7);
    for (int k = 0; k < 2; ++k) {
      const auto i = static_cast<std::size_t>(k);
      CHECK(std::abs(se.powers[i] - ne.powers[i]) <= 1e-3 * ne.powers[i]);
    }
  }
  SUBCASE("SINR identities on randomized feasible configurations") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const auto draw = oracle::random_feasible_config(seed, 2, 5, true);
      const int L = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(draw.net.K - 1));
      const auto part = RolePartition::first_leaders(draw.net.K, L);
      const auto rep = stackelberg_powers(draw.net, part, draw.f);
      const auto recomputed = sinr_of(rep.powers, draw.net);
      for (int k = 0; k < draw.net.K; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double target =
            rep.is_follower[i] ? rep.constants.beta_star : rep.constants.gamma_star_L;
        CHECK(std::abs(recomputed[i] - target) <= 1e-10 * target);
      }
      check_best_response_stability(rep, draw.net, draw.f, &part);
    }
  }
}

TEST_CASE("scale and gain covariance") {
  const auto base = NetworkConfig::symmetric(4, 32, 1.0, 1.0, 1.0, 0.1);
  const auto part = RolePartition::first_leaders(4, 2);
  const auto rep = stackelberg_powers(base, part, kExp7);

  SUBCASE("noise scaling moves powers and utilities exactly") {
    NetworkConfig scaled = base;
    scaled.sigma2 *= 2.0;
    const auto rep2 = stackelberg_powers(scaled, part, kExp7);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(rep2.powers[i] == 2.0 * rep.powers[i]);
      CHECK(rep2.utilities[i] == 0.5 * rep.utilities[i]);
    }
  }
  SUBCASE("doubling one gain halves that power and doubles that utility") {
    NetworkConfig scaled = base;
    scaled.g[1] *= 2.0;
    const auto rep2 = stackelberg_powers(scaled, part, kExp7);
    CHECK(rep2.powers[1] == 0.5 * rep.powers[1]);
    CHECK(rep2.utilities[1] == 2.0 * rep.utilities[1]);
    for (std::size_t i : {0u, 2u, 3u}) {
      CHECK(rep2.powers[i] == rep.powers[i]);
      CHECK(rep2.utilities[i] == rep.utilities[i]);
    }
  }
}

TEST_CASE("role_values agree with the per-user reports") {
  for (std::uint64_t seed = 31; seed <= 36; ++seed) {
    const auto draw = oracle::random_feasible_config(seed, 2, 5, true);
    const int K = draw.net.K;
    const int L = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(K - 1));
    const auto rep =
        stackelberg_powers(draw.net, RolePartition::first_leaders(K, L), draw.f);
    const auto rv = role_values(K, draw.net.N, K - L, draw.f);
    for (int k = 0; k < K; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double expected =
          rep.is_follower[i] ? (1.0 - draw.net.alpha) * rv.follower_costfree : rv.leader;
      CHECK(rep.utilities[i] / draw.net.mu(k) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("se_uniqueness_check") {
  SUBCASE("exponential-outage always meets the curvature condition") {
    const auto rep = se_uniqueness_check(kExp7, 0.01);
    CHECK(rep.curvature_condition);
    CHECK(rep.single_root);
  }
  SUBCASE("eps = 0 treats the boundary root as single") {
    const auto rep = se_uniqueness_check(kExp7, 0.0);
    CHECK(rep.curvature_condition);
    CHECK(rep.single_root);
  }
  SUBCASE("condition (2) holds across eps for both families") {
    // x f'/f is strictly decreasing for both families, so the rescaled
    // residual crosses zero exactly once however large eps grows
    for (double eps : {1e-3, 0.05, 0.5, 3.0, 50.0}) {
      CHECK(se_uniqueness_check(kExp7, eps).single_root);
      CHECK(se_uniqueness_check(EfficiencyFunction::goodman(2), eps).single_root);
      CHECK(se_uniqueness_check(EfficiencyFunction::goodman(7), eps).single_root);
    }
  }
  SUBCASE("single root subsists for moderate goodman eps") {
    const auto g2 = EfficiencyFunction::goodman(2);
    const auto rep = se_uniqueness_check(g2, 0.05);
    CHECK(rep.pass());
    // independent count on the same interval
    const double b = beta_star(g2);
    int changes = 0;
    double prev = 0.0;
    for (int i = 0; i < 5000; ++i) {
      const double x = 1e-6 * b * std::pow(1e6, i / 4999.0);
      const double r = x * (1.0 - 0.05 * x) * g2.deriv(x) - g2.value(x);
      if (prev != 0.0 && r != 0.0 && (r > 0) != (prev > 0)) ++changes;
      if (r != 0.0) prev = r;
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("pareto_dominance_check") {
  SUBCASE("free sensing: nobody loses (Fig. 3 scenario)") {
    const auto cfg = NetworkConfig::symmetric(17, 128);
    const auto rep = pareto_dominance_check(cfg, RolePartition::first_leaders(17, 5), kExp7);
    CHECK(rep.leaders_ok);
    CHECK(rep.all_ok);
    for (double r : rep.ratio) CHECK(r >= 1.0 - 1e-10);
  }
  SUBCASE("alpha = 1 wipes out follower utility") {
    const auto cfg = NetworkConfig::symmetric(4, 64, 1.0, 1.0, 1.0, 1.0);
    const auto rep = pareto_dominance_check(cfg, RolePartition::first_leaders(4, 2), kExp7);
    CHECK(rep.leaders_ok);
    CHECK_FALSE(rep.all_ok);
    CHECK(rep.ratio[2] == 0.0);
    CHECK(rep.ratio[3] == 0.0);
  }
  SUBCASE("leaders never lose on randomized configurations") {
    for (std::uint64_t seed = 50; seed < 70; ++seed) {
      const auto draw = oracle::random_feasible_config(seed, 2, 4, true);
      const int L = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(draw.net.K - 1));
      const auto rep = pareto_dominance_check(
          draw.net, RolePartition::first_leaders(draw.net.K, L), draw.f);
      CHECK(rep.leaders_ok);
    }
  }
}

TEST_CASE("sensing_threshold") {
  SUBCASE("vanishing hierarchy gap gives a vanishing bound") {
    const auto cfg = NetworkConfig::symmetric(2, 1000000000);
    const auto rep = sensing_threshold(cfg, RolePartition::first_leaders(2, 1), kExp7, 1);
    CHECK(std::abs(rep.bound) <= 1e-9 * rep.min_cross_energy);
  }
  SUBCASE("two users, no spreading: positive bound, cross-checked") {
    const auto f = EfficiencyFunction::exponential_outage(0.866065983073615);
    NetworkConfig cfg = NetworkConfig::symmetric(2, 1);
    const auto part = RolePartition::first_leaders(2, 1);
    const auto rep = sensing_threshold(cfg, part, f, 1);
    CHECK(rep.bound > 0.0);
    CHECK(rep.bound == doctest::Approx(rep.bound_direct_gain)); // unit gains coincide

    // at xi_min = bound the minimal-cost follower utility matches the
    // leader utility exactly
    const auto se = stackelberg_powers(cfg, part, f);
    const double alpha_star = rep.bound / rep.min_cross_energy;
    const double follower_costfree = se.utilities[1] / (1.0 - cfg.alpha);
    CHECK((1.0 - alpha_star) * follower_costfree ==
          doctest::Approx(se.utilities[0]).epsilon(1e-9));
  }
  SUBCASE("zero threshold: following preferred whenever the gap is real") {
    NetworkConfig cfg = NetworkConfig::symmetric(2, 1);
    cfg.xi_min = 0.0;
    const auto rep = sensing_threshold(cfg, RolePartition::first_leaders(2, 1), kFig1, 1);
    CHECK(rep.follower_preferred);
    CHECK(rep.bound > 0.0);
  }
  SUBCASE("cross gains enter the energy term") {
    NetworkConfig cfg = NetworkConfig::symmetric(2, 1);
    cfg.g_cross = {{1.0, 0.25}, {0.25, 1.0}};
    const auto with_cross = sensing_threshold(cfg, RolePartition::first_leaders(2, 1), kFig1, 1);
    cfg.g_cross.clear();
    const auto without = sensing_threshold(cfg, RolePartition::first_leaders(2, 1), kFig1, 1);
    CHECK(with_cross.bound == doctest::Approx(0.25 * without.bound).epsilon(1e-12));
    CHECK(with_cross.bound_direct_gain == doctest::Approx(without.bound).epsilon(1e-12));
  }
  SUBCASE("non-followers are rejected") {
    const auto cfg = NetworkConfig::symmetric(2, 1);
    CHECK_THROWS_AS(sensing_threshold(cfg, RolePartition::first_leaders(2, 1), kFig1, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("partition validation") {
  RolePartition bad;
  bad.leaders = {0, 1};
  bad.followers = {1, 2};
  CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
  RolePartition incomplete;
  incomplete.leaders = {0};
  incomplete.followers = {2};
  CHECK_THROWS_AS(incomplete.validate(3), std::invalid_argument);
  CHECK_NOTHROW(RolePartition::first_leaders(5, 2).validate(5));
}
