#pragma once

#include <cstdint>
#include <vector>

#include "rgbr/game.hpp"

namespace rgbr {

struct PopulationMember {
  MemoryOneStrategy strategy;
  int count;
};

/// The focal agent's opponents. Every member is completely mixed, counts >= 1.
class Population {
 public:
  explicit Population(std::vector<PopulationMember> members);

  const std::vector<PopulationMember>& members() const { return members_; }
  int total() const { return total_; }

 private:
  std::vector<PopulationMember> members_;
  int total_;
};

/// Count-weighted mean of s_X(p, q_j) over the population.
double tournament_payoff(const MemoryOneStrategy& p, const Population& pop, const GameSpec& game);

struct TournamentPoint {
  Vec4 p;
  double value;
};

struct PureTournamentBest {
  int index;  // binary encoding of the winning pure strategy
  TournamentPoint point;
};

/// Argmax over the 15 admissible pure strategies; ties go to the smaller index.
PureTournamentBest best_pure_tournament(const Population& pop, const GameSpec& game);

struct SearchConfig {
  double grid_step = 0.1;
  int starts = 8;          // refined seeds taken from the grid, plus as many random ones
  std::uint64_t seed = 0;
  double tolerance = 1e-6;  // smallest coordinate step of the pattern search
};

struct MixedSearchResult {
  TournamentPoint best;  // best point found, not a certified optimum
  SearchConfig config;
  std::size_t evaluations;
};

MixedSearchResult optimize_mixed_tournament(const Population& pop, const GameSpec& game,
                                            const SearchConfig& config = {});

struct TournamentResult {
  PureTournamentBest best_pure;
  MixedSearchResult best_mixed;
  double gap;  // best_mixed - best_pure
};

TournamentResult analyze_tournament(const Population& pop, const GameSpec& game,
                                    const SearchConfig& config = {});

/// Payoff at any point of [0,1]^4; the Repeat corner is evaluated at
/// (1, 1 - 1e-6, 0, 0). Shared by the pure and continuous searches.
double tournament_score(const Vec4& p, const Population& pop, const GameSpec& game);

inline constexpr double kRepeatPerturbation = 1e-6;

}  // namespace rgbr
