#pragma once

#include <array>

#include "rgbr/game.hpp"

namespace rgbr {

using Mat4 = std::array<Vec4, 4>;

namespace tolerance {
/// Row sums, entry bounds and stationary-vector normalization.
inline constexpr double kStructural = 1e-12;
/// Determinant payoffs versus stationary-distribution payoffs.
inline constexpr double kCrossCheck = 1e-9;
/// Max-norm of v*M - v for an accepted stationary distribution.
inline constexpr double kResidual = 1e-10;
/// |D(p,q,1)| below this is treated as singular.
inline constexpr double kSingular = 1e-12;
}  // namespace tolerance

/// Outcome chain of a one-memory pair. Row s is the previous outcome from
/// p's perspective; distributions evolve as v' = v * M.
struct ChainModel {
  Mat4 matrix;
  MemoryOneStrategy p;
  MemoryOneStrategy q;
};

struct StationaryDistribution {
  Vec4 v;
  double residual;
};

struct PayoffPair {
  double s_x;
  double s_y;
};

ChainModel build_transition_matrix(const MemoryOneStrategy& p, const MemoryOneStrategy& q);

/// Left fixed point of the chain, from the 4x4 system with one balance
/// equation replaced by sum(v) = 1. Throws SingularChain when that system is
/// rank deficient.
StationaryDistribution stationary_distribution(const ChainModel& chain);

/// Press-Dyson determinant D(p, q, f), linear in f.
double determinant_d(const MemoryOneStrategy& p, const MemoryOneStrategy& q, const Vec4& f);

/// s_X = D(p,q,S_X)/D(p,q,1) and s_Y = D(p,q,S_Y)/D(p,q,1).
/// Requires q completely mixed and p != Repeat.
PayoffPair average_payoffs(const MemoryOneStrategy& p, const MemoryOneStrategy& q,
                           const GameSpec& game);

/// Same quantity through v.S_X and v.S_Y; the independent cross-check.
PayoffPair payoff_via_stationary(const MemoryOneStrategy& p, const MemoryOneStrategy& q,
                                 const GameSpec& game);

/// Row player's determinant payoff without the precondition checks. Used by
/// search loops that already keep p and q inside the admissible region.
double row_payoff(const Vec4& p, const Vec4& q, const GameSpec& game);

}  // namespace rgbr
