#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json_io.hpp"
#include "rgbr/best_response.hpp"
#include "rgbr/chain.hpp"
#include "rgbr/error.hpp"
#include "rgbr/mdp.hpp"
#include "rgbr/montecarlo.hpp"
#include "rgbr/random.hpp"
#include "rgbr/tournament.hpp"
#include "rgbr/verifier.hpp"

namespace rgbr::cli {
namespace {

struct Options {
  bool strict = false;
  std::string out_path;
  std::optional<std::uint64_t> seed;

  // Shared inputs.
  std::string p, q, game, opponent, pop, evaluate;
  std::string method = "det";
  std::size_t n = 5000;
  std::optional<int> k;
  bool optimize = false;
  int starts = SearchConfig{}.starts;
  double grid = SearchConfig{}.grid_step;
  std::string theorem;
  std::size_t samples = 100000;
  std::size_t rounds = 1000000;
};

void write(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out_path);
  f << text;
}

void write_json(const Options& o, std::ostream& out, const json& j) {
  write(o, out, j.dump(2) + "\n");
}

std::uint64_t seed_of(const Options& o, const char* command) {
  if (o.strict && !o.seed) {
    throw Error(ErrorKind::InvalidArgument, std::string(command) + " requires --seed under --strict");
  }
  return o.seed.value_or(0);
}

json payoff_json(const PayoffPair& s) { return {{"s_x", number(s.s_x)}, {"s_y", number(s.s_y)}}; }

int cmd_payoff(const Options& o, std::ostream& out) {
  const auto p = parse_strategy(load_argument(o.p), StrategyKind::Responder);
  const auto q = parse_strategy(load_argument(o.q), StrategyKind::CompletelyMixed);
  const auto game = parse_game(load_argument(o.game));
  json j;
  if (o.method == "det") {
    j = payoff_json(average_payoffs(p, q, game));
  } else if (o.method == "stationary") {
    j = payoff_json(payoff_via_stationary(p, q, game));
  } else {
    const PayoffPair d = average_payoffs(p, q, game);
    const PayoffPair s = payoff_via_stationary(p, q, game);
    j = payoff_json(d);
    j["stationary"] = payoff_json(s);
    const double diff = std::max(std::abs(d.s_x - s.s_x), std::abs(d.s_y - s.s_y));
    j["max_abs_diff"] = number(diff);
    j["agree"] = diff <= tolerance::kCrossCheck;
  }
  j["method"] = o.method;
  write_json(o, out, j);
  return kOk;
}

int cmd_best_response(const Options& o, std::ostream& out) {
  const auto q = parse_strategy(load_argument(o.q), StrategyKind::CompletelyMixed);
  const auto game = parse_game(load_argument(o.game));
  const ResponseTable table = pure_payoff_table(q, game);
  json t = json::object();
  for (auto& [k, v] : table.entries) t[std::to_string(k)] = number(v);
  json best = json::array();
  for (int k : table.best_set) best.push_back(vec(PureStrategyIndex(k).decode()));
  json classes = json::array();
  for (StrategyClass c : classify_q(q.probs(), game)) classes.push_back(std::string(to_string(c)));
  const PayoffPair canonical =
      average_payoffs(PureStrategyIndex(table.best_set.front()).strategy(), q, game);
  write_json(o, out,
             {{"table", t},
              {"best", best},
              {"best_indices", table.best_set},
              {"value", number(table.best_value)},
              {"s_y", number(canonical.s_y)},
              {"classes", classes}});
  return kOk;
}

int cmd_scatter(const Options& o, std::ostream& out) {
  const auto q = parse_strategy(load_argument(o.q), StrategyKind::CompletelyMixed);
  const auto game = parse_game(load_argument(o.game));
  const auto points = payoff_region_scatter(q, game, o.n, seed_of(o, "scatter"));
  std::ostringstream csv;
  csv << "s_x,s_y\n";
  char line[64];
  for (const auto& pt : points) {
    std::snprintf(line, sizeof line, "%.12g,%.12g\n", pt.s_x, pt.s_y);
    csv << line;
  }
  write(o, out, csv.str());
  return kOk;
}

int cmd_mdp_solve(const Options& o, std::ostream& out) {
  const StageGame game = parse_stage_game(load_argument(o.game));
  const json oj = load_argument(o.opponent);
  // The opponent owns the columns: its own actions come first in its keys.
  const KMemoryStrategy opponent = parse_kmemory(oj, game.col_actions(), game.row_actions());
  const int k = o.k.value_or(opponent.memory());
  const MdpModel m = build_mdp(opponent, game, k);
  const bool communicating = check_communicating(m);
  const SolveResult r = solve_average_reward(m);
  const HistoryCodec codec(k, game.row_count(), game.col_count());
  json policy = json::object();
  for (std::size_t s = 0; s < codec.state_count(); ++s) {
    policy[history_key(s, codec, game.row_actions(), game.col_actions())] =
        game.row_actions()[r.policy[s]];
  }
  write_json(o, out,
             {{"gain", number(r.gain)},
              {"policy", policy},
              {"iterations", r.iterations},
              {"bias_span", number(r.bias_span)},
              {"states", codec.state_count()},
              {"communicating", communicating}});
  return kOk;
}

int cmd_tournament(const Options& o, std::ostream& out) {
  const Population pop = parse_population(load_argument(o.pop));
  const auto game = parse_game(load_argument(o.game));
  const PureTournamentBest pure = best_pure_tournament(pop, game);
  json j = {{"best_pure",
             {{"index", pure.index}, {"p", vec(pure.point.p)}, {"value", number(pure.point.value)}}}};
  if (o.optimize) {
    SearchConfig config;
    config.seed = seed_of(o, "tournament --optimize");
    config.starts = o.starts;
    config.grid_step = o.grid;
    const MixedSearchResult mixed = optimize_mixed_tournament(pop, game, config);
    j["best_mixed"] = {{"p", vec(mixed.best.p)},
                       {"value", number(mixed.best.value)},
                       {"evaluations", mixed.evaluations},
                       {"config",
                        {{"grid_step", number(config.grid_step)},
                         {"starts", config.starts},
                         {"seed", config.seed},
                         {"tolerance", number(config.tolerance)}}},
                       {"note", "best point found by grid scan plus pattern search; not certified optimal"}};
    j["gap"] = number(mixed.best.value - pure.point.value);
  }
  if (!o.evaluate.empty()) {
    const auto p = parse_strategy(load_argument(o.evaluate), StrategyKind::Responder);
    j["evaluated"] = {{"p", vec(p.probs())}, {"value", number(tournament_payoff(p, pop, game))}};
  }
  write_json(o, out, j);
  return kOk;
}

json instance_json(const Instance& x) {
  json j = {{"p", vec(x.p)},
            {"q", vec(x.q)},
            {"R", number(x.R)},
            {"S", number(x.S)},
            {"T", number(x.T)},
            {"P", number(x.P)}};
  if (x.coordinate >= 0) j["coordinate"] = x.coordinate;
  return j;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto id = parse_theorem(o.theorem);
  if (!id) throw Error(ErrorKind::InvalidArgument, "unknown theorem \"" + o.theorem + "\"");
  const FalsificationReport r = check(*id, o.samples, seed_of(o, "verify"));
  json j = {{"theorem", std::string(to_string(r.theorem))},
            {"samples", r.samples_tried},
            {"seed", r.seed},
            {"max_violation", number(r.max_violation)},
            {"threshold", number(kViolationThreshold)},
            {"worst", instance_json(r.worst)},
            {"counterexample", r.counterexample ? instance_json(*r.counterexample) : json(nullptr)},
            {"rng", std::string(kRngAlgorithm)},
            {"note", std::string(kVerifierNote)}};
  write_json(o, out, j);
  return r.counterexample ? kFinding : kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const json pj = load_argument(o.p);
  const json qj = load_argument(o.q);
  const json gj = load_argument(o.game);
  const std::uint64_t seed = seed_of(o, "simulate");
  SimResult r;
  if (!is_kmemory(pj) && !is_kmemory(qj)) {
    r = simulate(parse_strategy(pj), parse_strategy(qj), parse_game(gj), o.rounds, seed);
  } else {
    const StageGame game = parse_stage_game(gj);
    auto as_k = [&](const json& j, const std::vector<std::string>& own,
                    const std::vector<std::string>& other) {
      return is_kmemory(j) ? parse_kmemory(j, own, other)
                           : KMemoryStrategy::from_memory_one(parse_strategy(j));
    };
    r = simulate(as_k(pj, game.row_actions(), game.col_actions()),
                 as_k(qj, game.col_actions(), game.row_actions()), game, o.rounds, seed);
  }
  write_json(o, out,
             {{"mean_x", number(r.mean_x)},
              {"mean_y", number(r.mean_y)},
              {"std_err", number(r.std_err)},
              {"std_err_y", number(r.std_err_y)},
              {"rounds", r.rounds},
              {"seed", r.seed},
              {"rng", std::string(r.rng)}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Best responses in infinitely repeated games", "rgbr"};
  app.require_subcommand(1);
  app.add_flag("--strict", o.strict, "Require --seed for randomized subcommands");

  auto common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--out", o.out_path, "Write output to this path instead of stdout");
  };
  auto seeded = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Random seed"); };

  auto* payoff = app.add_subcommand("payoff", "Average payoffs of a one-memory pair");
  common(payoff);
  payoff->add_option("--p", o.p, "Focal strategy JSON")->required();
  payoff->add_option("--q", o.q, "Opponent strategy JSON")->required();
  payoff->add_option("--game", o.game, "Game JSON")->required();
  payoff->add_option("--method", o.method, "det | stationary | both")
      ->check(CLI::IsMember({"det", "stationary", "both"}));

  auto* br = app.add_subcommand("best-response", "Pure best responses and classification");
  common(br);
  br->add_option("--q", o.q, "Opponent strategy JSON")->required();
  br->add_option("--game", o.game, "Game JSON")->required();

  auto* scatter = app.add_subcommand("scatter", "Payoff-region CSV (s_x,s_y)");
  common(scatter);
  seeded(scatter);
  scatter->add_option("--q", o.q, "Opponent strategy JSON")->required();
  scatter->add_option("--game", o.game, "Game JSON")->required();
  scatter->add_option("--n", o.n, "Number of points");

  auto* mdp = app.add_subcommand("mdp-solve", "k-memory best response via average-reward MDP");
  common(mdp);
  mdp->add_option("--opponent", o.opponent, "k-memory opponent JSON")->required();
  mdp->add_option("--game", o.game, "Game or stage-game JSON")->required();
  mdp->add_option("--k", o.k, "Memory length (defaults to the opponent's)");

  auto* tour = app.add_subcommand("tournament", "Population tournament best responses");
  common(tour);
  seeded(tour);
  tour->add_option("--pop", o.pop, "Population JSON")->required();
  tour->add_option("--game", o.game, "Game JSON")->required();
  tour->add_flag("--optimize", o.optimize, "Search mixed strategies as well");
  tour->add_option("--starts", o.starts, "Refined starting points per source");
  tour->add_option("--grid", o.grid, "Grid step of the initial scan");
  tour->add_option("--evaluate", o.evaluate, "Also report the payoff of this strategy");

  auto* verify = app.add_subcommand("verify", "Randomized counterexample search for a theorem");
  common(verify);
  seeded(verify);
  verify->add_option("--theorem", o.theorem, "Theorem id, e.g. mistort_br")->required();
  verify->add_option("--samples", o.samples, "Number of sampled instances");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of average payoffs");
  common(sim);
  seeded(sim);
  sim->add_option("--p", o.p, "Row strategy JSON (one- or k-memory)")->required();
  sim->add_option("--q", o.q, "Column strategy JSON (one- or k-memory)")->required();
  sim->add_option("--game", o.game, "Game JSON")->required();
  sim->add_option("--rounds", o.rounds, "Rounds to play");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsageError;
  }

  try {
    if (payoff->parsed()) return cmd_payoff(o, out);
    if (br->parsed()) return cmd_best_response(o, out);
    if (scatter->parsed()) return cmd_scatter(o, out);
    if (mdp->parsed()) return cmd_mdp_solve(o, out);
    if (tour->parsed()) return cmd_tournament(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (sim->parsed()) return cmd_simulate(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace rgbr::cli
