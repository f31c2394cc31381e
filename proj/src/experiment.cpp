#include "greenpc/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "greenpc/csv.hpp"
#include "greenpc/errors.hpp"
#include "greenpc/learning.hpp"
#include "greenpc/sensing.hpp"
#include "greenpc/welfare.hpp"

namespace greenpc {

namespace {

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw ConfigError("config: '" + key + "' must be an integer: " + v);
  return static_cast<int>(x);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad unsigned integer for '" + key + "': " + v);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
  return out;
}

// scalar values broadcast to length K; lists must match K exactly
std::vector<double> broadcast(const std::string& key, const std::string& v, int K) {
  std::vector<double> vals = parse_list(key, v);
  if (vals.size() == 1) return std::vector<double>(static_cast<std::size_t>(K), vals[0]);
  if (vals.size() != static_cast<std::size_t>(K))
    throw ConfigError("config: '" + key + "' must be a scalar or a list of K values");
  return vals;
}

const std::vector<std::string> kKnownKeys = {
    "name", "K", "N", "sigma2", "g", "R", "p_max", "alpha", "T", "xi_min", "g_cross",
    "family", "c", "r", "M", "L", "kappa", "sweep_variable", "sweep_from", "sweep_to",
    "sweep_step", "alpha_list", "lambda_points", "algorithm", "init_profile", "horizon",
    "max_steps", "fp_prior", "power_grid_points", "power_grid_min", "power_grid_max",
    "out", "seed"};

} // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue; // section grouping
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!kv.emplace(key, value).second)
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  const auto has = [&](const std::string& k) { return kv.count(k) != 0; };
  const auto get = [&](const std::string& k) { return kv.at(k); };

  ExperimentConfig cfg;
  cfg.config_hash = fnv1a64(text);
  if (has("name")) cfg.name = get("name");
  if (!has("K") || !has("N")) throw ConfigError("config: K and N are required");

  NetworkConfig& net = cfg.network;
  net.K = parse_int("K", get("K"));
  net.N = parse_int("N", get("N"));
  if (net.K < 1 || net.N < 1) throw ConfigError("config: K and N must be positive");
  net.sigma2 = has("sigma2") ? parse_double("sigma2", get("sigma2")) : 1.0;
  net.g = has("g") ? broadcast("g", get("g"), net.K)
                   : std::vector<double>(static_cast<std::size_t>(net.K), 1.0);
  net.R = has("R") ? broadcast("R", get("R"), net.K)
                   : std::vector<double>(static_cast<std::size_t>(net.K), 1.0);
  net.p_max = has("p_max") ? broadcast("p_max", get("p_max"), net.K)
                           : std::vector<double>(static_cast<std::size_t>(net.K),
                                                 std::numeric_limits<double>::infinity());
  if (has("alpha")) net.alpha = parse_double("alpha", get("alpha"));
  if (has("T")) net.T = parse_double("T", get("T"));
  if (has("xi_min")) net.xi_min = parse_double("xi_min", get("xi_min"));
  if (has("g_cross")) {
    const std::vector<double> flat = parse_list("g_cross", get("g_cross"));
    const auto K = static_cast<std::size_t>(net.K);
    if (flat.size() != K * K)
      throw ConfigError("config: g_cross must list K*K values row-major");
    net.g_cross.assign(K, std::vector<double>(K));
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) net.g_cross[i][j] = flat[i * K + j];
  }
  try {
    net.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  const std::string family = has("family") ? get("family") : "exponential-outage";
  try {
    if (family == "exponential-outage") {
      if (has("c") && has("r")) throw ConfigError("config: c and r are mutually exclusive");
      if (has("M")) throw ConfigError("config: M applies to the goodman family only");
      if (has("c"))
        cfg.efficiency = EfficiencyFunction::exponential_outage(parse_double("c", get("c")));
      else if (has("r"))
        cfg.efficiency = EfficiencyFunction::from_spectral_efficiency(parse_double("r", get("r")));
      else
        throw ConfigError("config: exponential-outage needs c or r");
    } else if (family == "goodman") {
      if (has("c") || has("r"))
        throw ConfigError("config: c/r apply to the exponential-outage family only");
      if (!has("M")) throw ConfigError("config: goodman needs M");
      cfg.efficiency = EfficiencyFunction::goodman(parse_int("M", get("M")));
    } else {
      throw ConfigError("config: unknown family '" + family + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (has("L")) cfg.leaders = parse_int("L", get("L"));
  if (has("kappa")) cfg.kappa = parse_double("kappa", get("kappa"));
  if (has("sweep_variable")) cfg.sweep_variable = get("sweep_variable");
  if (has("sweep_from")) cfg.sweep_from = parse_double("sweep_from", get("sweep_from"));
  if (has("sweep_to")) cfg.sweep_to = parse_double("sweep_to", get("sweep_to"));
  if (has("sweep_step")) cfg.sweep_step = parse_double("sweep_step", get("sweep_step"));
  if (has("alpha_list")) cfg.alpha_list = parse_list("alpha_list", get("alpha_list"));
  if (has("lambda_points")) cfg.lambda_points = parse_int("lambda_points", get("lambda_points"));
  if (has("algorithm")) cfg.algorithm = get("algorithm");
  if (has("init_profile")) cfg.init_profile = get("init_profile");
  if (has("horizon")) cfg.horizon = parse_int("horizon", get("horizon"));
  if (has("max_steps")) cfg.max_steps = parse_int("max_steps", get("max_steps"));
  if (has("fp_prior")) cfg.fp_prior = parse_double("fp_prior", get("fp_prior"));
  if (has("power_grid_points"))
    cfg.power_grid_points = parse_int("power_grid_points", get("power_grid_points"));
  if (has("power_grid_min")) cfg.power_grid_min = parse_double("power_grid_min", get("power_grid_min"));
  if (has("power_grid_max")) cfg.power_grid_max = parse_double("power_grid_max", get("power_grid_max"));
  if (has("out")) cfg.out_path = get("out");
  if (has("seed")) cfg.seed = parse_u64("seed", get("seed"));
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

namespace {

std::string profile_string(int mask, int K) {
  std::string s;
  for (int k = 0; k < K; ++k) {
    if (k) s += '|';
    s += ((mask >> k) & 1) ? "S" : "NS";
  }
  return s;
}

const char* kind_name(TwoPlayerClass c) {
  switch (c) {
    case TwoPlayerClass::Unique: return "unique";
    case TwoPlayerClass::Three: return "three";
    case TwoPlayerClass::Infinite: return "infinite";
  }
  return "?";
}

std::string num(double v) { return format_number(v); }

} // namespace

void run_equilibrium(const ExperimentConfig& cfg, std::ostream& os) {
  const int K = cfg.network.K;
  const int L = cfg.leaders.value_or(K);
  if (L < 1 || L > K) throw ConfigError("equilibrium: L must lie in [1, K]");
  const EquilibriumReport rep =
      L == K ? nash_powers(cfg.network, cfg.efficiency)
             : stackelberg_powers(cfg.network, RolePartition::first_leaders(K, L), cfg.efficiency);

  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name + " kind=" + (L == K ? "NE" : "SE") +
              " L=" + std::to_string(L) + " beta_star=" + num(rep.constants.beta_star) +
              " gamma_star_L=" + num(rep.constants.gamma_star_L) +
              " eps_L=" + num(rep.constants.eps_L) + " a_L=" + num(rep.constants.a_L) +
              " g_cross=" + (cfg.network.g_cross.empty() ? "default(direct gains)" : "explicit"));
  csv.header({"user", "role", "power", "sinr", "utility", "power_cap_hit"});
  for (int k = 0; k < K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    csv.row({std::to_string(k + 1), rep.is_follower[i] ? "follower" : "leader",
             num(rep.powers[i]), num(rep.sinrs[i]), num(rep.utilities[i]),
             rep.power_cap_hit[i] ? "1" : "0"});
  }
}

void run_welfare_sweep(const ExperimentConfig& cfg, std::ostream& os) {
  const LeaderSweepResult res = optimal_leaders_exact(cfg.network, cfg.efficiency);
  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name + " best_L=" + std::to_string(res.best_L));
  csv.header({"L", "F", "w", "w_ne", "gain_pct", "total_power", "feasible"});
  for (const auto& r : res.rows) {
    if (r.feasible)
      csv.row({std::to_string(r.L), std::to_string(r.F), num(r.w), num(r.w_ne),
               num(r.gain_pct), num(r.total_power), "1"});
    else
      csv.row({std::to_string(r.L), std::to_string(r.F), "", num(r.w_ne), "", "", "0"});
  }
}

void run_role_gain(const ExperimentConfig& cfg, std::ostream& os) {
  const EquilibriumReport ne = nash_powers(cfg.network, cfg.efficiency);
  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name + " gains are role means vs the one-shot outcome");
  csv.header({"L", "F", "leader_gain_pct", "follower_gain_pct", "feasible"});
  const int K = cfg.network.K;
  for (int L = 1; L <= K; ++L) {
    if (L == K) {
      csv.row({std::to_string(L), "0", num(0.0), "", "1"});
      continue;
    }
    const RolePartition part = RolePartition::first_leaders(K, L);
    try {
      const EquilibriumReport se = stackelberg_powers(cfg.network, part, cfg.efficiency);
      double lead = 0.0, foll = 0.0;
      for (int k : part.leaders)
        lead += se.utilities[static_cast<std::size_t>(k)] /
                ne.utilities[static_cast<std::size_t>(k)];
      for (int k : part.followers)
        foll += se.utilities[static_cast<std::size_t>(k)] /
                ne.utilities[static_cast<std::size_t>(k)];
      lead = 100.0 * (lead / part.L() - 1.0);
      foll = 100.0 * (foll / part.F() - 1.0);
      csv.row({std::to_string(L), std::to_string(K - L), num(lead), num(foll), "1"});
    } catch (const InfeasibleError&) {
      csv.row({std::to_string(L), std::to_string(K - L), "", "", "0"});
    }
  }
}

void run_sensing_2x2(const ExperimentConfig& cfg, std::ostream& os) {
  if (cfg.network.K != 2) throw ConfigError("sensing-2x2: requires K = 2");
  const SensingGame game = build_sensing_game(cfg.network, cfg.efficiency);
  const TwoPlayerClassification cls = classify_2player(cfg.network, cfg.efficiency);

  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name);
  csv.header({"record", "detail", "u1", "u2", "info"});
  for (int mask = 0; mask < 4; ++mask)
    csv.row({"cell", profile_string(mask, 2), num(game.payoff_of(mask, 0)),
             num(game.payoff_of(mask, 1)), ""});
  csv.row({"classification", kind_name(cls.kind), "", "",
           "table_threshold=" + num(cls.table_threshold) +
               ";paper_threshold_n1=" + num(cls.paper_threshold_n1)});
  for (int mask : cls.pure)
    csv.row({"pure_ne", profile_string(mask, 2), num(game.payoff_of(mask, 0)),
             num(game.payoff_of(mask, 1)), ""});
  if (cls.mixed_exists) {
    const MixedEquilibriumResult mix = mixed_equilibrium(cfg.network, cfg.efficiency);
    csv.row({"mixed",
             "x=" + num(mix.profile.ns_prob[0]) + ";y=" + num(mix.profile.ns_prob[1]),
             num(mix.utilities[0]), num(mix.utilities[1]),
             "indifference_gap=" + num(mix.max_indifference_gap)});
    const int n = std::max(2, cfg.lambda_points);
    for (int i = 0; i < n; ++i) {
      const double lambda = static_cast<double>(i) / (n - 1);
      const CorrelatedPoint pt = correlated_segment(game, lambda);
      csv.row({"ce", "lambda=" + num(lambda), num(pt.utilities[0]), num(pt.utilities[1]), ""});
    }
    const BargainingPoint nbs = nash_bargaining(game);
    csv.row({"nbs", "lambda=" + num(nbs.lambda), num(nbs.utilities[0]), num(nbs.utilities[1]),
             "d1=" + num(nbs.disagreement[0]) + ";d2=" + num(nbs.disagreement[1])});
  }
}

void run_load_sweep(const ExperimentConfig& cfg, std::ostream& os) {
  if (cfg.sweep_variable != "K")
    throw ConfigError("load-sweep: sweep_variable must be K");
  if (!cfg.network.is_symmetric())
    throw ConfigError("load-sweep: requires scalar (symmetric) g and R");
  const int from = static_cast<int>(cfg.sweep_from);
  const int to = static_cast<int>(cfg.sweep_to);
  const int step = std::max(1, static_cast<int>(cfg.sweep_step));
  if (from < 2 || to < from) throw ConfigError("load-sweep: bad K range");

  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name);
  csv.header({"K", "load", "alpha", "best_L", "max_gain_pct", "feasible"});
  for (double alpha : cfg.alpha_list) {
    for (int K = from; K <= to; K += step) {
      NetworkConfig net = NetworkConfig::symmetric(K, cfg.network.N, cfg.network.sigma2,
                                                   cfg.network.g[0], cfg.network.R[0], alpha);
      net.p_max.assign(static_cast<std::size_t>(K), cfg.network.p_max[0]);
      const double load = static_cast<double>(K) / cfg.network.N;
      try {
        const LeaderSweepResult res = optimal_leaders_exact(net, cfg.efficiency);
        double best_gain = -std::numeric_limits<double>::infinity();
        for (const auto& r : res.rows)
          if (r.feasible) best_gain = std::max(best_gain, r.gain_pct);
        csv.row({std::to_string(K), num(load), num(alpha), std::to_string(res.best_L),
                 num(best_gain), "1"});
      } catch (const InfeasibleError&) {
        csv.row({std::to_string(K), num(load), num(alpha), "", "", "0"});
      }
    }
  }
}

namespace {

int initial_profile_mask(const ExperimentConfig& cfg) {
  const int K = cfg.network.K;
  if (cfg.init_profile == "random") {
    std::mt19937_64 rng(cfg.seed);
    int mask = 0;
    for (int k = 0; k < K; ++k)
      if (rng() & 1u) mask |= 1 << k;
    return mask;
  }
  std::stringstream ss(cfg.init_profile);
  std::string item;
  int mask = 0, k = 0;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (k >= K) throw ConfigError("learn: init_profile has more entries than players");
    if (item == "S")
      mask |= 1 << k;
    else if (item != "NS")
      throw ConfigError("learn: init_profile entries must be S or NS");
    ++k;
  }
  if (k != K) throw ConfigError("learn: init_profile must name K actions");
  return mask;
}

} // namespace

void run_learn(const ExperimentConfig& cfg, std::ostream& os) {
  const SensingGame game = build_sensing_game(cfg.network, cfg.efficiency);
  const int K = cfg.network.K;
  LearningTrace trace;
  if (cfg.algorithm == "br") {
    trace = best_response_dynamics(game, initial_profile_mask(cfg), cfg.max_steps);
  } else if (cfg.algorithm == "fp") {
    if (!(cfg.fp_prior >= 0.0 && cfg.fp_prior <= 1.0))
      throw ConfigError("learn: fp_prior must lie in [0,1]");
    const std::vector<double> priors(static_cast<std::size_t>(K), cfg.fp_prior);
    trace = fictitious_play(game, cfg.horizon, priors);
  } else {
    throw ConfigError("learn: algorithm must be br or fp");
  }

  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name + " algorithm=" + cfg.algorithm);
  std::vector<std::string> head{"step", "profile"};
  for (int k = 1; k <= K; ++k) head.push_back("freq_" + std::to_string(k));
  for (int k = 1; k <= K; ++k) head.push_back("u_" + std::to_string(k));
  csv.header(head);
  for (const auto& it : trace.iterations) {
    std::vector<std::string> row{std::to_string(it.step), profile_string(it.profile_mask, K)};
    for (double v : it.ns_freq) row.push_back(num(v));
    for (double v : it.utilities) row.push_back(num(v));
    csv.row(row);
  }
  std::string summary = "converged=" + std::string(trace.converged ? "1" : "0") +
                        " switches=" + std::to_string(trace.switch_count);
  if (trace.limit_profile) summary += " limit=" + profile_string(*trace.limit_profile, K);
  csv.comment(summary);
}

void run_hybrid(const ExperimentConfig& cfg, std::ostream& os) {
  if (cfg.network.K != 2) throw ConfigError("hybrid: requires K = 2");
  const EquilibriumReport ne = nash_powers(cfg.network, cfg.efficiency);
  double lo = cfg.power_grid_min, hi = cfg.power_grid_max;
  if (lo <= 0.0) lo = 0.1 * std::min(ne.powers[0], ne.powers[1]);
  if (hi <= 0.0) hi = 10.0 * std::max(ne.powers[0], ne.powers[1]);
  const int G = std::max(2, cfg.power_grid_points);
  std::vector<double> grid(static_cast<std::size_t>(G));
  const double ratio = std::pow(hi / lo, 1.0 / (G - 1));
  double x = lo;
  for (int i = 0; i < G; ++i, x *= ratio) grid[static_cast<std::size_t>(i)] = x;
  grid.back() = hi;

  const HybridCheck chk = hybrid_game_check(cfg.network, cfg.efficiency, grid);
  CsvWriter csv(os, cfg.config_hash, cfg.seed);
  csv.comment("scenario=" + cfg.name + " grid_points=" + std::to_string(G) +
              " grid_min=" + num(lo) + " grid_max=" + num(hi));
  csv.header({"record", "detail", "v1", "v2"});
  csv.row({"ne_powers_expected", "", num(chk.ne_powers_expected[0]),
           num(chk.ne_powers_expected[1])});
  csv.row({"ne_powers_found", "", num(chk.ne_powers_found[0]), num(chk.ne_powers_found[1])});
  csv.row({"hybrid_utilities", "", num(chk.hybrid_utilities[0]), num(chk.hybrid_utilities[1])});
  for (std::size_t i = 0; i < chk.sensing_ne_masks.size(); ++i)
    csv.row({"sensing_ne_utilities", profile_string(chk.sensing_ne_masks[i], 2),
             num(chk.sensing_ne_utilities[i][0]), num(chk.sensing_ne_utilities[i][1])});
  csv.row({"checks",
           "dominated=" + std::string(chk.sensing_dominated ? "1" : "0") +
               ";unique=" + (chk.unique_ne_matches ? "1" : "0") +
               ";braess=" + (chk.braess_holds ? "1" : "0") +
               ";braess_strict=" + (chk.braess_strict ? "1" : "0") +
               ";ne_count=" + std::to_string(chk.ne_count),
           "", ""});
}

} // namespace greenpc
