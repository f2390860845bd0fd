#include "rgbr/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgbr/best_response.hpp"
#include "rgbr/chain.hpp"
#include "rgbr/error.hpp"
#include "rgbr/random.hpp"

namespace rgbr {

Population::Population(std::vector<PopulationMember> members)
    : members_(std::move(members)), total_(0) {
  if (members_.empty()) throw Error(ErrorKind::InvalidArgument, "population is empty");
  for (const auto& m : members_) {
    if (m.count < 1) throw Error(ErrorKind::InvalidArgument, "member counts must be >= 1");
    if (!m.strategy.completely_mixed()) {
      throw Error(ErrorKind::NotCompletelyMixed, "population members must be completely mixed");
    }
    total_ += m.count;
  }
}

double tournament_score(const Vec4& p, const Population& pop, const GameSpec& game) {
  Vec4 x = p;
  if (x == kRepeatStrategy) x[1] = 1.0 - kRepeatPerturbation;
  const MemoryOneStrategy focal = MemoryOneStrategy::validate(x, StrategyKind::Responder);
  double score = 0.0;
  for (const auto& m : pop.members()) {
    score += static_cast<double>(m.count) * average_payoffs(focal, m.strategy, game).s_x;
  }
  return score / static_cast<double>(pop.total());
}

double tournament_payoff(const MemoryOneStrategy& p, const Population& pop, const GameSpec& game) {
  if (!p.responder_valid()) {
    throw Error(ErrorKind::RepeatStrategyForbidden, "(1,1,0,0) is not an admissible responder");
  }
  return tournament_score(p.probs(), pop, game);
}

PureTournamentBest best_pure_tournament(const Population& pop, const GameSpec& game) {
  PureTournamentBest best{-1, {{}, -std::numeric_limits<double>::infinity()}};
  for (int k = 0; k < 16; ++k) {
    if (k == PureStrategyIndex::kRepeat) continue;
    const Vec4 p = PureStrategyIndex(k).decode();
    const double v = tournament_score(p, pop, game);
    if (v > best.point.value) best = {k, {p, v}};
  }
  return best;
}

namespace {

class Searcher {
 public:
  Searcher(const Population& pop, const GameSpec& game) : pop_(pop), game_(game) {}

  double operator()(const Vec4& p) {
    ++evaluations_;
    try {
      return tournament_score(p, pop_, game_);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NearSingular) throw;
      return -std::numeric_limits<double>::infinity();
    }
  }

  TournamentPoint refine(TournamentPoint x, double step, double tolerance) {
    while (step >= tolerance) {
      bool improved = false;
      for (std::size_t i = 0; i < 4; ++i) {
        for (double dir : {1.0, -1.0}) {
          Vec4 y = x.p;
          y[i] = std::clamp(y[i] + dir * step, 0.0, 1.0);
          if (y[i] == x.p[i]) continue;
          const double v = (*this)(y);
          if (v > x.value) {
            x = {y, v};
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return x;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const Population& pop_;
  const GameSpec& game_;
  std::size_t evaluations_ = 0;
};

bool better(const TournamentPoint& a, const TournamentPoint& b) { return a.value > b.value; }

}  // namespace

MixedSearchResult optimize_mixed_tournament(const Population& pop, const GameSpec& game,
                                            const SearchConfig& config) {
  if (!(config.grid_step > 0.0 && config.grid_step <= 1.0) || config.starts < 1 ||
      !(config.tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "search configuration out of range");
  }
  Searcher score(pop, game);

  std::vector<double> levels;
  for (int i = 0; i * config.grid_step < 1.0 - 1e-12; ++i) levels.push_back(i * config.grid_step);
  levels.push_back(1.0);
  std::vector<TournamentPoint> grid;
  grid.reserve(levels.size() * levels.size() * levels.size() * levels.size());
  for (double a : levels)
    for (double b : levels)
      for (double c : levels)
        for (double d : levels) {
          const Vec4 p{a, b, c, d};
          grid.push_back({p, score(p)});
        }

  std::vector<TournamentPoint> seeds = grid;
  const auto take = std::min<std::size_t>(static_cast<std::size_t>(config.starts), seeds.size());
  std::stable_sort(seeds.begin(), seeds.end(), better);
  seeds.resize(take);

  Rng rng(config.seed);
  for (int i = 0; i < config.starts; ++i) {
    const Vec4 p{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
    seeds.push_back({p, score(p)});
  }

  TournamentPoint best = seeds.front();
  for (const auto& s : seeds) {
    const TournamentPoint r = score.refine(s, config.grid_step, config.tolerance);
    if (better(r, best)) best = r;
  }
  if (best.p == kRepeatStrategy) best.p[1] = 1.0 - kRepeatPerturbation;
  return {best, config, score.evaluations()};
}

TournamentResult analyze_tournament(const Population& pop, const GameSpec& game,
                                    const SearchConfig& config) {
  TournamentResult r{best_pure_tournament(pop, game), optimize_mixed_tournament(pop, game, config),
                     0.0};
  r.gap = r.best_mixed.best.value - r.best_pure.point.value;
  return r;
}

}  // namespace rgbr
