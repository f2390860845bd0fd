#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "rgbr/chain.hpp"
#include "rgbr/game.hpp"

namespace rgbr {

/// Ties inside this distance of the best value are all reported.
inline constexpr double kTieTolerance = 1e-9;
/// Absolute tolerance for the equality manifolds (MisChief, extortion).
inline constexpr double kManifoldTolerance = 1e-10;

/// Binary encoding k = sum_i p_i * 2^(4-i) of a pure one-memory strategy.
/// Index 12 is Repeat and never appears in a candidate set.
class PureStrategyIndex {
 public:
  static constexpr int kRepeat = 12;

  constexpr explicit PureStrategyIndex(int k) : k_(k) {}
  static PureStrategyIndex encode(const Vec4& pure);

  constexpr int value() const { return k_; }
  Vec4 decode() const;
  MemoryOneStrategy strategy() const;

  constexpr auto operator<=>(const PureStrategyIndex&) const = default;

 private:
  int k_;
};

/// Representatives of the distinct payoff expressions; {0,4,8} collapse to 0
/// and {13,14,15} collapse to 15.
inline constexpr std::array<int, 11> kDistinctIndices = {0, 1, 2, 3, 5, 6, 7, 9, 10, 11, 15};

/// F_k for an arbitrary pure index k != 12.
double pure_payoff(int k, const MemoryOneStrategy& q, const GameSpec& game);

struct ResponseTable {
  std::array<std::pair<int, double>, 11> entries;
  double best_value;
  std::vector<int> best_set;

  double value(int k) const;
  double spread() const;
};

ResponseTable pure_payoff_table(const MemoryOneStrategy& q, const GameSpec& game);

struct PureBestResponse {
  std::vector<MemoryOneStrategy> strategies;  // ordered by index; front() is canonical
  std::vector<int> indices;
  double value;
};

PureBestResponse best_response_pure(const MemoryOneStrategy& q, const GameSpec& game);

/// q3 <= q1 <= q4 <= q2.
bool classify_ungrateful(const MemoryOneStrategy& q);

struct MischiefBars {
  double qbar2;
  double qbar3;
  bool feasible;
};

MischiefBars mischief_bars(double q1, double q4, const GameSpec& game);

struct ExtortionParams {
  double phi;
  double chi;
  bool valid;
};

/// Recovers (phi, chi) from rows q1 and q3 of an extortionate strategy and
/// checks row q2, q4 = 0 and the admissible parameter range.
ExtortionParams recover_extortion(const Vec4& q, const GameSpec& game);

/// Builds the extortionate strategy with parameters (phi, chi). The result
/// need not lie in [0,1]^4; callers check.
Vec4 extortionate_strategy(double phi, double chi, const GameSpec& game);

/// Largest admissible phi for a given chi.
double extortion_phi_max(double chi, const GameSpec& game);

enum class StrategyClass : std::uint8_t { MisChief, MisTort, MisDefect, Extortionate, Ungrateful };

std::string_view to_string(StrategyClass c);

/// Multi-label classification. Empty means "None". The MisChief-family and
/// extortion labels use only the formulas; Ungrateful requires q completely mixed.
std::vector<StrategyClass> classify_q(const Vec4& q, const GameSpec& game);

struct PayoffPoint {
  double s_x;
  double s_y;
};

/// Payoff pairs (s_X, s_Y) for n responders against q: the 11 pure
/// representatives, then a 5-level grid over [0,1]^4, then uniform random fill.
std::vector<PayoffPoint> payoff_region_scatter(const MemoryOneStrategy& q, const GameSpec& game,
                                               std::size_t n, std::uint64_t seed);

}  // namespace rgbr
