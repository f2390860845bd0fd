#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rgbr/game.hpp"

namespace rgbr {

/// Mixed-radix codec for histories of the last k action profiles.
///
/// A profile digit is index(own action) * |other actions| + index(other action),
/// and the most recent profile is the lowest digit. Appending a profile is
/// then `(state * radix) mod radix^k + digit`.
class HistoryCodec {
 public:
  HistoryCodec(int memory, std::size_t own_actions, std::size_t other_actions);

  int memory() const { return memory_; }
  std::size_t own_actions() const { return own_; }
  std::size_t other_actions() const { return other_; }
  std::size_t radix() const { return own_ * other_; }
  std::size_t state_count() const { return states_; }

  std::size_t digit(std::size_t own, std::size_t other) const { return own * other_ + other; }
  std::size_t shift(std::size_t state, std::size_t own, std::size_t other) const {
    return (state * radix()) % states_ + digit(own, other);
  }
  std::size_t most_recent(std::size_t state) const { return state % radix(); }

  /// Profiles oldest first, each as (own, other).
  std::vector<std::pair<std::size_t, std::size_t>> decode(std::size_t state) const;
  std::size_t encode(const std::vector<std::pair<std::size_t, std::size_t>>& oldest_first) const;

  /// The same history seen by the other player (each profile swapped).
  std::size_t swap_perspective(std::size_t state) const;

  /// History with every slot filled by profile (0, 0).
  std::size_t padded_start() const { return 0; }

 private:
  int memory_;
  std::size_t own_;
  std::size_t other_;
  std::size_t states_;
};

/// Refuse state spaces above 2^24 histories.
inline constexpr std::size_t kMaxStates = std::size_t{1} << 24;

/// p: A^k -> Delta(A_own). The table is indexed by HistoryCodec states from
/// the owner's perspective; each row is a distribution over own actions.
class KMemoryStrategy {
 public:
  KMemoryStrategy(int memory, std::vector<std::string> own_actions,
                  std::vector<std::string> other_actions, std::vector<std::vector<double>> table);

  static KMemoryStrategy from_memory_one(const MemoryOneStrategy& s);

  int memory() const { return codec_.memory(); }
  const HistoryCodec& codec() const { return codec_; }
  const std::vector<std::string>& own_actions() const { return own_actions_; }
  const std::vector<std::string>& other_actions() const { return other_actions_; }
  const std::vector<double>& distribution(std::size_t state) const { return table_[state]; }
  double probability(std::size_t state, std::size_t action) const { return table_[state][action]; }

  bool completely_mixed() const;
  bool is_pure() const;

 private:
  HistoryCodec codec_;
  std::vector<std::string> own_actions_;
  std::vector<std::string> other_actions_;
  std::vector<std::vector<double>> table_;
};

struct Transition {
  std::size_t next;
  double probability;
};

/// Average-reward MDP. Rewards depend on the state only.
class MdpModel {
 public:
  MdpModel(std::size_t states, std::size_t actions, std::vector<std::vector<Transition>> rows,
           std::vector<double> reward);

  std::size_t state_count() const { return states_; }
  std::size_t action_count() const { return actions_; }
  const std::vector<Transition>& row(std::size_t s, std::size_t a) const {
    return rows_[s * actions_ + a];
  }
  double transition(std::size_t s, std::size_t a, std::size_t next) const;
  double reward(std::size_t s) const { return reward_[s]; }
  const std::vector<double>& rewards() const { return reward_; }

 private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<std::vector<Transition>> rows_;
  std::vector<double> reward_;
};

using PurePolicy = std::vector<std::size_t>;

MdpModel build_mdp(const KMemoryStrategy& opponent, const StageGame& game, int memory);

/// Strong connectivity of the digraph s -> s' over all actions with T > 0.
bool check_communicating(const MdpModel& m);

struct SolverConfig {
  double aperiodicity = 0.5;  // weight of the self loop blended into every row
  double span_tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
  double tie_tolerance = 1e-9;
};

struct SolveResult {
  double gain;
  PurePolicy policy;
  double bias_span;
  std::size_t iterations;
};

/// Relative value iteration on the aperiodic transform of m.
SolveResult solve_average_reward(const MdpModel& m, const SolverConfig& config = {});

struct PolicyGain {
  std::vector<double> class_gains;            // one per recurrent class
  std::vector<std::vector<std::size_t>> classes;
  std::vector<double> start_gains;            // expected gain from every start state
  bool start_dependent;

  double max_gain() const;
};

/// Exact gain of a stationary pure policy from its recurrent classes.
PolicyGain policy_gain(const MdpModel& m, const PurePolicy& policy);

struct KMemoryBestResponse {
  KMemoryStrategy strategy;
  double gain;
  SolveResult solve;
};

KMemoryBestResponse best_response_kmem(const KMemoryStrategy& opponent, const StageGame& game,
                                       const SolverConfig& config = {});

/// The pure strategy that plays policy[s] in history s.
KMemoryStrategy policy_to_strategy(const PurePolicy& policy, const HistoryCodec& codec,
                                   const StageGame& game);

}  // namespace rgbr
