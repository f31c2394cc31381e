#include "greenpc/sensing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "greenpc/errors.hpp"

namespace greenpc {

namespace {

RolePartition partition_of_mask(int K, int mask) {
  RolePartition p;
  for (int k = 0; k < K; ++k) {
    if ((mask >> k) & 1)
      p.followers.push_back(k);
    else
      p.leaders.push_back(k);
  }
  return p;
}

int flip(int mask, int player) { return mask ^ (1 << player); }

} // namespace

bool SensingGame::all_feasible() const {
  return std::all_of(cell_feasible.begin(), cell_feasible.end(), [](char c) { return c != 0; });
}

double SensingGame::payoff_scale() const {
  double s = 0.0;
  for (int m = 0; m < num_profiles(); ++m) {
    if (!cell_feasible[static_cast<std::size_t>(m)]) continue;
    for (double u : payoff[static_cast<std::size_t>(m)]) s = std::max(s, std::abs(u));
  }
  return s > 0.0 ? s : 1.0;
}

SensingGame build_sensing_game(const NetworkConfig& cfg, const EfficiencyFunction& f) {
  cfg.validate();
  if (cfg.K > 20) throw std::invalid_argument("build_sensing_game: desk scale only (K <= 20)");
  SensingGame game(cfg, f);
  game.K = cfg.K;
  const int P = game.num_profiles();
  game.payoff.assign(static_cast<std::size_t>(P), {});
  game.cell_feasible.assign(static_cast<std::size_t>(P), 0);
  game.weights.resize(static_cast<std::size_t>(cfg.K));
  for (int k = 0; k < cfg.K; ++k) game.weights[static_cast<std::size_t>(k)] = cfg.mu(k);

  const int all = P - 1;
  for (int mask = 0; mask < P; ++mask) {
    try {
      EquilibriumReport rep;
      if (mask == 0) {
        rep = nash_powers(cfg, f);
      } else if (mask == all) {
        // everybody sensed and found nobody to observe: one-shot outcome
        // with the sensing cost charged to all
        rep = nash_powers(cfg, f);
        for (double& u : rep.utilities) u *= 1.0 - cfg.alpha;
      } else {
        rep = stackelberg_powers(cfg, partition_of_mask(cfg.K, mask), f);
      }
      game.payoff[static_cast<std::size_t>(mask)] = std::move(rep.utilities);
      game.cell_feasible[static_cast<std::size_t>(mask)] = 1;
    } catch (const InfeasibleError&) {
      game.payoff[static_cast<std::size_t>(mask)].assign(static_cast<std::size_t>(cfg.K),
                                                         std::numeric_limits<double>::quiet_NaN());
      game.cell_feasible[static_cast<std::size_t>(mask)] = 0;
    }
  }
  return game;
}

namespace {

void require_complete(const SensingGame& game, const char* op) {
  if (!game.all_feasible())
    throw InfeasibleError(std::string(op) + ": game has infeasible cells");
}

PotentialCheck four_cycle_check(const SensingGame& game, const std::vector<double>& weight) {
  PotentialCheck res;
  res.is_potential = true;
  double scale = 0.0; // of the payoffs actually compared, after rescaling
  for (int m = 0; m < game.num_profiles(); ++m)
    for (int k = 0; k < game.K; ++k)
      scale = std::max(scale, std::abs(game.payoff_of(m, k)) / weight[static_cast<std::size_t>(k)]);
  const double tol = 1e-9 * (scale > 0.0 ? scale : 1.0);
  const int P = game.num_profiles();
  for (int i = 0; i < game.K && res.is_potential; ++i) {
    for (int j = i + 1; j < game.K && res.is_potential; ++j) {
      for (int base = 0; base < P && res.is_potential; ++base) {
        if ((base >> i) & 1 || (base >> j) & 1) continue; // context: i, j both NS
        const int si = base | (1 << i);
        const int sj = base | (1 << j);
        const int sij = si | (1 << j);
        const auto Ui = [&](int m) { return game.payoff_of(m, i) / weight[static_cast<std::size_t>(i)]; };
        const auto Uj = [&](int m) { return game.payoff_of(m, j) / weight[static_cast<std::size_t>(j)]; };
        // closed cycle base -> si -> sij -> sj -> base
        const double cycle = (Ui(si) - Ui(base)) + (Uj(sij) - Uj(si)) + (Ui(sj) - Ui(sij)) +
                             (Uj(base) - Uj(sj));
        if (std::abs(cycle) > tol) {
          res.is_potential = false;
          res.player_i = i;
          res.player_j = j;
          res.context_mask = base;
          res.residual = cycle;
        }
      }
    }
  }
  return res;
}

} // namespace

PotentialCheck exact_potential_check(const SensingGame& game) {
  require_complete(game, "exact_potential_check");
  return four_cycle_check(game, std::vector<double>(static_cast<std::size_t>(game.K), 1.0));
}

WeightedPotentialCheck weighted_potential_check(const SensingGame& game) {
  require_complete(game, "weighted_potential_check");
  WeightedPotentialCheck res;
  res.rescaled_cycle = four_cycle_check(game, game.weights);
  res.is_weighted_potential = res.rescaled_cycle.is_potential;
  if (!res.is_weighted_potential) return res;

  // integrate the rescaled payoff differences from the all-NS profile,
  // flipping the lowest set bit first
  const int P = game.num_profiles();
  res.potential.assign(static_cast<std::size_t>(P), 0.0);
  for (int mask = 1; mask < P; ++mask) {
    const int k = std::countr_zero(static_cast<unsigned>(mask));
    const int prev = mask & (mask - 1);
    const double du = (game.payoff_of(mask, k) - game.payoff_of(prev, k)) /
                      game.weights[static_cast<std::size_t>(k)];
    res.potential[static_cast<std::size_t>(mask)] =
        res.potential[static_cast<std::size_t>(prev)] + du;
  }
  // audit every unilateral edge for path independence
  double worst = 0.0;
  for (int mask = 0; mask < P; ++mask) {
    for (int k = 0; k < game.K; ++k) {
      if (!((mask >> k) & 1)) continue;
      const int other = flip(mask, k);
      const double du = (game.payoff_of(mask, k) - game.payoff_of(other, k)) /
                        game.weights[static_cast<std::size_t>(k)];
      const double dv = res.potential[static_cast<std::size_t>(mask)] -
                        res.potential[static_cast<std::size_t>(other)];
      worst = std::max(worst, std::abs(du - dv));
    }
  }
  res.max_edge_residual = worst;
  if (worst > 1e-9 * game.payoff_scale()) res.is_weighted_potential = false;
  return res;
}

double rosenthal_potential(const NetworkConfig& cfg, const EfficiencyFunction& f, int F, int L) {
  if (F + L != cfg.K || F < 0 || L < 0)
    throw std::invalid_argument("rosenthal_potential: need F + L = K, both nonnegative");
  if (!cfg.is_symmetric())
    throw std::invalid_argument("rosenthal_potential: requires a symmetric configuration");
  double phi = 0.0;
  for (int i = 1; i <= F; ++i)
    phi += (1.0 - cfg.alpha) * role_values(cfg.K, cfg.N, i, f).follower_costfree;
  for (int j = 1; j <= L; ++j)
    phi += role_values(cfg.K, cfg.N, cfg.K - j, f).leader;
  return phi;
}

RosenthalArgmax rosenthal_argmax(const NetworkConfig& cfg, const EfficiencyFunction& f) {
  RosenthalArgmax best;
  double best_phi = -std::numeric_limits<double>::infinity();
  for (int F = 0; F <= cfg.K; ++F) {
    const double phi = rosenthal_potential(cfg, f, F, cfg.K - F);
    if (phi > best_phi) {
      best_phi = phi;
      best.F = F;
      best.L = cfg.K - F;
      best.value = phi;
    }
  }
  const SensingGame game = build_sensing_game(cfg, f);
  for (int mask : pure_equilibria(game)) {
    if (std::popcount(static_cast<unsigned>(mask)) == best.F) {
      best.matches_pure_equilibria = true;
      break;
    }
  }
  return best;
}

std::vector<int> pure_equilibria(const SensingGame& game) {
  require_complete(game, "pure_equilibria");
  std::vector<int> out;
  const int P = game.num_profiles();
  for (int mask = 0; mask < P; ++mask) {
    bool ne = true;
    for (int k = 0; k < game.K && ne; ++k)
      if (game.payoff_of(flip(mask, k), k) > game.payoff_of(mask, k)) ne = false;
    if (ne) out.push_back(mask);
  }
  return out;
}

namespace {

// 2-player cell shorthands for player `i` (0 or 1):
//   A = U_i(both NS), B = U_i(i senses, other NS),
//   C = U_i(i NS, other senses), D = U_i(both sense).
struct Cells {
  double A, B, C, D;
};

Cells cells_for(const SensingGame& game, int i) {
  const int me = 1 << i, other = 1 << (1 - i);
  return {game.payoff_of(0, i), game.payoff_of(me, i), game.payoff_of(other, i),
          game.payoff_of(me | other, i)};
}

void require_two_players(const SensingGame& game, const char* op) {
  if (game.K != 2) throw std::invalid_argument(std::string(op) + ": requires K = 2");
  require_complete(game, op);
}

} // namespace

TwoPlayerClassification classify_2player(const NetworkConfig& cfg, const EfficiencyFunction& f) {
  if (cfg.K != 2) throw std::invalid_argument("classify_2player: requires K = 2");
  const SensingGame game = build_sensing_game(cfg, f);
  require_complete(game, "classify_2player");

  TwoPlayerClassification res;
  const Cells c1 = cells_for(game, 0);
  // exact threshold for this table: sensing pays against a non-sensing
  // opponent iff alpha < 1 - one_shot_value / follower_costfree_value
  const double one_shot = role_values(2, cfg.N, 0, f).leader;
  const double follower_costfree = role_values(2, cfg.N, 1, f).follower_costfree;
  res.table_threshold = 1.0 - one_shot / follower_costfree;

  const double bstar = beta_star(f);
  const double gstar = gamma_star(f, epsilon_L(cfg.N, 1, bstar));
  res.paper_threshold_n1 = (bstar - gstar) / (1.0 - bstar * gstar);

  res.pure = pure_equilibria(game);
  const double tie_tol = 1e-12 * game.payoff_scale();
  if (std::abs(c1.A - c1.B) <= tie_tol) {
    res.kind = TwoPlayerClass::Infinite;
    res.mixed_exists = false;
  } else if (c1.A > c1.B) {
    res.kind = TwoPlayerClass::Unique;
    res.mixed_exists = false;
  } else {
    res.kind = TwoPlayerClass::Three;
    res.mixed_exists = true;
  }
  return res;
}

MixedEquilibriumResult mixed_equilibrium(const NetworkConfig& cfg, const EfficiencyFunction& f) {
  if (cfg.K != 2) throw std::invalid_argument("mixed_equilibrium: requires K = 2");
  const SensingGame game = build_sensing_game(cfg, f);
  require_two_players(game, "mixed_equilibrium");

  // opponent's NS-probability that makes player i indifferent:
  //   y (A - B) + (1 - y)(C - D) = 0
  const auto indifference = [](const Cells& c) {
    const double den = (c.A - c.B) + (c.D - c.C);
    return (c.D - c.C) / den;
  };
  const Cells c1 = cells_for(game, 0), c2 = cells_for(game, 1);
  if (!(c1.A < c1.B))
    throw InfeasibleError("mixed_equilibrium: condition C2 violated, no strictly mixed "
                          "equilibrium");
  MixedEquilibriumResult res;
  const double y = indifference(c1); // player 2's NS-probability
  const double x = indifference(c2); // player 1's NS-probability
  res.profile.ns_prob = {x, y};

  const auto expect = [&](int i, double own_ns, double opp_ns) {
    const Cells c = cells_for(game, i);
    return own_ns * (opp_ns * c.A + (1.0 - opp_ns) * c.C) +
           (1.0 - own_ns) * (opp_ns * c.B + (1.0 - opp_ns) * c.D);
  };
  res.utilities = {expect(0, x, y), expect(1, y, x)};
  const double scale = game.payoff_scale();
  res.max_indifference_gap =
      std::max(std::abs(expect(0, 1.0, y) - expect(0, 0.0, y)),
               std::abs(expect(1, 1.0, x) - expect(1, 0.0, x))) /
      scale;

  if (cfg.N == 1) {
    // published closed form for the spreading-free cells
    const double bstar = beta_star(f);
    const double gstar = gamma_star(f, epsilon_L(1, 1, bstar));
    const double fb = f.value(bstar), fg = f.value(gstar);
    const double a = cfg.alpha;
    const double num = (1.0 - a) * (fb / bstar) * (1.0 - bstar) -
                       (fg / gstar) * (1.0 - gstar * bstar) / (1.0 + bstar);
    const double X = num + (fb / bstar) * (1.0 - bstar) -
                     (1.0 - a) * (fb / bstar) * (1.0 - gstar * bstar) / (1.0 + gstar);
    const double transcribed = num / X;
    res.transcription_value = transcribed;
    res.transcription_consistent = std::abs(transcribed - y) <= 1e-9;
  }
  return res;
}

bool is_correlated_equilibrium(const CorrelatedDistribution& q, const SensingGame& game,
                               double tol) {
  require_complete(game, "is_correlated_equilibrium");
  const int P = game.num_profiles();
  if (q.q.size() != static_cast<std::size_t>(P))
    throw std::invalid_argument("is_correlated_equilibrium: distribution size mismatch");
  double total = 0.0;
  for (double v : q.q) {
    if (v < -1e-15) throw std::invalid_argument("is_correlated_equilibrium: negative mass");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("is_correlated_equilibrium: distribution must sum to 1");

  const double scale = game.payoff_scale();
  for (int i = 0; i < game.K; ++i) {
    for (int own = 0; own <= 1; ++own) {
      // expected gain of deviating from recommendation `own` to the other
      // action, weighted by the joint mass on `own`
      double gain = 0.0, mass = 0.0;
      for (int mask = 0; mask < P; ++mask) {
        if (((mask >> i) & 1) != own) continue;
        const double w = q.q[static_cast<std::size_t>(mask)];
        if (w == 0.0) continue;
        mass += w;
        gain += w * (game.payoff_of(flip(mask, i), i) - game.payoff_of(mask, i));
      }
      if (mass > 0.0 && gain > tol * scale) return false;
    }
  }
  return true;
}

CorrelatedPoint correlated_segment(const SensingGame& game, double lambda) {
  require_two_players(game, "correlated_segment");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("correlated_segment: lambda must lie in [0,1]");
  const Cells c1 = cells_for(game, 0);
  if (!(c1.A < c1.B))
    throw InfeasibleError("correlated_segment: condition C2 violated, the two pure "
                          "equilibria do not exist");
  CorrelatedPoint pt;
  pt.lambda = lambda;
  pt.dist.q.assign(4, 0.0);
  pt.dist.q[1] = lambda;       // (S, NS)
  pt.dist.q[2] = 1.0 - lambda; // (NS, S)
  pt.utilities = {lambda * game.payoff_of(1, 0) + (1.0 - lambda) * game.payoff_of(2, 0),
                  lambda * game.payoff_of(1, 1) + (1.0 - lambda) * game.payoff_of(2, 1)};
  if (!is_correlated_equilibrium(pt.dist, game))
    throw NumericError("correlated_segment: mixture failed the equilibrium inequalities");
  return pt;
}

BargainingPoint nash_bargaining(const SensingGame& game) {
  require_two_players(game, "nash_bargaining");
  const MixedEquilibriumResult mixed = mixed_equilibrium(game.config, game.f);
  BargainingPoint best;
  best.disagreement = {mixed.utilities[0], mixed.utilities[1]};

  const auto nu = [&](double l) {
    return std::array<double, 2>{
        l * game.payoff_of(1, 0) + (1.0 - l) * game.payoff_of(2, 0),
        l * game.payoff_of(1, 1) + (1.0 - l) * game.payoff_of(2, 1)};
  };
  const auto product = [&](double l) {
    const auto u = nu(l);
    return (u[0] - best.disagreement[0]) * (u[1] - best.disagreement[1]);
  };
  // golden-section maximization over [0,1]
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
  double fa = product(a), fb = product(b);
  while (hi - lo > 1e-9) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = product(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = product(b);
    }
  }
  double l = 0.5 * (lo + hi);
  // keep the endpoints honest when the maximum sits on the boundary
  if (product(0.0) >= product(l)) l = 0.0;
  if (product(1.0) > product(l)) l = 1.0;
  best.lambda = l;
  best.utilities = nu(l);
  return best;
}

DominanceUniqueness dominance_uniqueness_check(const NetworkConfig& cfg,
                                               const EfficiencyFunction& f) {
  cfg.validate();
  const int K = cfg.K;
  DominanceUniqueness res;

  // table-derived thresholds: NS beats S against f other senders iff
  //   alpha > 1 - leader_value(f senders) / follower_costfree(f+1 senders)
  const auto threshold_at = [&](int senders_among_others) {
    const double lead = role_values(K, cfg.N, senders_among_others, f).leader;
    const double foll = role_values(K, cfg.N, senders_among_others + 1, f).follower_costfree;
    return 1.0 - lead / foll;
  };
  res.threshold_no_other_sensers = threshold_at(0);
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 1; s <= K - 1; ++s) worst = std::max(worst, threshold_at(s));
  res.threshold_some_other_sensers = K >= 2 ? worst : res.threshold_no_other_sensers;
  res.cond_no_other_sensers = cfg.alpha > res.threshold_no_other_sensers;
  res.cond_some_other_sensers = cfg.alpha > res.threshold_some_other_sensers;
  res.ns_dominates = res.cond_no_other_sensers && res.cond_some_other_sensers;

  // closed-form variants, reference only
  const double bstar = beta_star(f);
  const double g1 = gamma_star(f, epsilon_L(cfg.N, 1, bstar)); // gamma*_{K-1}
  const double n = cfg.N;
  res.displayed_cond1_threshold =
      1.0 - (n + g1) * (n - (K - 1) * bstar) /
                (n * n - n * bstar - ((n + bstar) * (K - 1) + 2.0 * bstar) * g1);
  res.displayed_cond2_threshold =
      1.0 - g1 * (n + bstar) * f.value(bstar) / (bstar * (n + g1) * f.value(g1));
  return res;
}

HybridCheck hybrid_game_check(const NetworkConfig& cfg, const EfficiencyFunction& f,
                              std::span<const double> power_grid) {
  if (cfg.K != 2) throw std::invalid_argument("hybrid_game_check: requires K = 2");
  cfg.validate();
  if (power_grid.size() < 2)
    throw std::invalid_argument("hybrid_game_check: need at least two grid points");
  for (std::size_t i = 0; i < power_grid.size(); ++i) {
    if (!(power_grid[i] > 0.0))
      throw std::invalid_argument("hybrid_game_check: grid powers must be positive");
    if (i > 0 && !(power_grid[i] > power_grid[i - 1]))
      throw std::invalid_argument("hybrid_game_check: grid must be increasing");
  }

  const EquilibriumReport ne = nash_powers(cfg, f);
  const int G = static_cast<int>(power_grid.size());
  for (int i = 0; i < 2; ++i) {
    const double p = ne.powers[static_cast<std::size_t>(i)];
    if (!(power_grid.front() <= p && p <= power_grid.back()))
      throw NumericError("hybrid_game_check: grid too coarse, one-shot power not bracketed");
  }

  HybridCheck res;
  res.ne_powers_expected = {ne.powers[0], ne.powers[1]};

  // hybrid action a = (sense, power index); utility of player i against j
  const auto utility = [&](int i, bool sense_i, double p_i, double p_j) {
    const int j = 1 - i;
    const double gamma = cfg.g[static_cast<std::size_t>(i)] * p_i /
                         (cfg.sigma2 + cfg.g[static_cast<std::size_t>(j)] * p_j / cfg.N);
    const double v = cfg.R[static_cast<std::size_t>(i)] * f.value(gamma) / p_i;
    return sense_i ? (1.0 - cfg.alpha) * v : v;
  };

  const int A = 2 * G; // actions per player: [0,G) = NS at grid power, [G,2G) = S
  const auto act_power = [&](int a) { return power_grid[static_cast<std::size_t>(a % G)]; };
  const auto act_sense = [&](int a) { return a >= G; };

  std::vector<std::vector<double>> u1(static_cast<std::size_t>(A),
                                      std::vector<double>(static_cast<std::size_t>(A)));
  auto u2 = u1;
  for (int a1 = 0; a1 < A; ++a1)
    for (int a2 = 0; a2 < A; ++a2) {
      u1[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)] =
          utility(0, act_sense(a1), act_power(a1), act_power(a2));
      u2[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)] =
          utility(1, act_sense(a2), act_power(a2), act_power(a1));
    }

  // (i) sensing at the same power never helps, strictly when alpha > 0
  res.sensing_dominated = true;
  for (int own = 0; own < G && res.sensing_dominated; ++own)
    for (int opp = 0; opp < A && res.sensing_dominated; ++opp) {
      const double d1 = u1[static_cast<std::size_t>(own)][static_cast<std::size_t>(opp)] -
                        u1[static_cast<std::size_t>(own + G)][static_cast<std::size_t>(opp)];
      const double d2 = u2[static_cast<std::size_t>(opp)][static_cast<std::size_t>(own)] -
                        u2[static_cast<std::size_t>(opp)][static_cast<std::size_t>(own + G)];
      const bool ok1 = cfg.alpha > 0.0 ? d1 > 0.0 : d1 >= 0.0;
      const bool ok2 = cfg.alpha > 0.0 ? d2 > 0.0 : d2 >= 0.0;
      res.sensing_dominated = ok1 && ok2;
    }

  // (ii) enumerate the pure equilibria of the discretized game
  std::vector<double> col_max1(static_cast<std::size_t>(A),
                               -std::numeric_limits<double>::infinity());
  std::vector<double> row_max2(static_cast<std::size_t>(A),
                               -std::numeric_limits<double>::infinity());
  for (int a1 = 0; a1 < A; ++a1)
    for (int a2 = 0; a2 < A; ++a2) {
      col_max1[static_cast<std::size_t>(a2)] =
          std::max(col_max1[static_cast<std::size_t>(a2)],
                   u1[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)]);
      row_max2[static_cast<std::size_t>(a1)] =
          std::max(row_max2[static_cast<std::size_t>(a1)],
                   u2[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)]);
    }
  // Rounding the best responses to the grid smears the fixed point into a
  // band: each response is off by up to one cell and the displacement
  // compounds by 1/(1 - slope) with the composite best-response slope
  // (beta*/N)^2, which is < 1 whenever the one-shot equilibrium exists.
  const double bstar = ne.constants.beta_star;
  const double contraction = (bstar / cfg.N) * (bstar / cfg.N);
  const double band_factor = 1.0 + 1.0 / (1.0 - contraction);
  const auto within_resolution = [&](double found, double p) {
    int j = static_cast<int>(std::upper_bound(power_grid.begin(), power_grid.end(), p) -
                             power_grid.begin()) -
            1;
    j = std::clamp(j, 0, G - 2);
    double spacing = power_grid[static_cast<std::size_t>(j + 1)] -
                     power_grid[static_cast<std::size_t>(j)];
    if (j + 2 < G)
      spacing = std::max(spacing, power_grid[static_cast<std::size_t>(j + 2)] -
                                      power_grid[static_cast<std::size_t>(j + 1)]);
    return std::abs(found - p) <= band_factor * spacing;
  };
  res.unique_ne_matches = true;
  for (int a1 = 0; a1 < A; ++a1)
    for (int a2 = 0; a2 < A; ++a2) {
      if (u1[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)] <
              col_max1[static_cast<std::size_t>(a2)] ||
          u2[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)] <
              row_max2[static_cast<std::size_t>(a1)])
        continue;
      ++res.ne_count;
      const bool first = res.ne_count == 1;
      if (first) {
        res.ne_powers_found = {act_power(a1), act_power(a2)};
        res.hybrid_utilities = {u1[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)],
                                u2[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)]};
      }
      const bool matches = !act_sense(a1) && !act_sense(a2) &&
                           within_resolution(act_power(a1), res.ne_powers_expected[0]) &&
                           within_resolution(act_power(a2), res.ne_powers_expected[1]);
      res.unique_ne_matches = res.unique_ne_matches && matches;
    }
  if (res.ne_count == 0) res.unique_ne_matches = false;

  // (iii) compare with the separated two-phase play
  const SensingGame game = build_sensing_game(cfg, f);
  res.sensing_ne_masks = pure_equilibria(game);
  const double scale = game.payoff_scale();
  res.braess_holds = true;
  res.braess_strict = !res.sensing_ne_masks.empty();
  for (int mask : res.sensing_ne_masks) {
    const std::array<double, 2> at_ne = {game.payoff_of(mask, 0), game.payoff_of(mask, 1)};
    res.sensing_ne_utilities.push_back(at_ne);
    for (int i = 0; i < 2; ++i) {
      const double h = res.hybrid_utilities[static_cast<std::size_t>(i)];
      if (h > at_ne[static_cast<std::size_t>(i)] + 1e-9 * scale) res.braess_holds = false;
      if (h >= at_ne[static_cast<std::size_t>(i)] - 1e-9 * scale) res.braess_strict = false;
    }
  }
  return res;
}

} // namespace greenpc
