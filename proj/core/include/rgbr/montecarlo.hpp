#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rgbr/game.hpp"
#include "rgbr/mdp.hpp"

namespace rgbr {

inline constexpr std::size_t kSimBatches = 100;
inline constexpr std::size_t kMinSimRounds = 1000;

/// Batch-means estimate over rounds after the first (burn-in) batch.
struct SimResult {
  double mean_x;
  double mean_y;
  double std_err;    // of mean_x
  double std_err_y;  // of mean_y
  std::size_t rounds;
  std::uint64_t seed;
  std::string_view rng;
};

/// Round 1 uses the first-move probabilities; afterwards each player reacts
/// to the previous outcome. Per round, the row player draws first.
SimResult simulate(const MemoryOneStrategy& p, const MemoryOneStrategy& q, const GameSpec& game,
                   std::size_t rounds, std::uint64_t seed);

/// k-memory play; each history starts padded with profile (action 0, action 0).
/// `p` owns the stage game's rows, `q` its columns. Memories may differ.
SimResult simulate(const KMemoryStrategy& p, const KMemoryStrategy& q, const StageGame& game,
                   std::size_t rounds, std::uint64_t seed);

}  // namespace rgbr
