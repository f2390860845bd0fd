#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rgbr {

using Vec4 = std::array<double, 4>;

/// Outcome of one prisoner's dilemma round, own action first.
/// The order (cc, cd, dc, dd) is used by every vector and matrix in the library.
enum class Outcome : std::uint8_t { CC = 0, CD = 1, DC = 2, DD = 3 };

inline constexpr std::array<Outcome, 4> kOutcomes = {Outcome::CC, Outcome::CD, Outcome::DC,
                                                     Outcome::DD};

constexpr std::size_t index(Outcome o) { return static_cast<std::size_t>(o); }

/// The same round seen from the co-player's side: cd and dc trade places.
constexpr Outcome perspective_swap(Outcome o) {
  switch (o) {
    case Outcome::CD: return Outcome::DC;
    case Outcome::DC: return Outcome::CD;
    default: return o;
  }
}

std::string_view to_string(Outcome o);

/// Prisoner's dilemma payoffs. Only constructible through validate_game, so
/// every instance satisfies T > R > P > S and 2R > T + S.
class GameSpec {
 public:
  static GameSpec validate(double reward, double sucker, double temptation, double punishment);

  double R() const { return r_; }
  double S() const { return s_; }
  double T() const { return t_; }
  double P() const { return p_; }

  /// Row player's payoff per outcome, (R, S, T, P).
  Vec4 payoff_x() const { return {r_, s_, t_, p_}; }
  /// Column player's payoff per outcome (row perspective), (R, T, S, P).
  Vec4 payoff_y() const { return {r_, t_, s_, p_}; }

  double min_payoff() const { return s_; }
  double max_payoff() const { return t_; }

 private:
  GameSpec(double r, double s, double t, double p) : r_(r), s_(s), t_(t), p_(p) {}
  double r_, s_, t_, p_;
};

inline GameSpec validate_game(double R, double S, double T, double P) {
  return GameSpec::validate(R, S, T, P);
}

/// True iff the standing prisoner's dilemma assumptions hold.
bool satisfies_pd_constraints(double R, double S, double T, double P);

enum class StrategyKind { Any, CompletelyMixed, Responder };

/// Cooperation probabilities after (cc, cd, dc, dd), own action first, plus
/// the first-round cooperation probability.
class MemoryOneStrategy {
 public:
  static MemoryOneStrategy validate(const Vec4& probs, StrategyKind required = StrategyKind::Any,
                                    double first_move = 1.0);

  const Vec4& probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }
  double first_move() const { return first_move_; }

  /// Cooperation probability after outcome `o` (own perspective).
  double cooperate_after(Outcome o) const { return probs_[index(o)]; }

  bool completely_mixed() const;
  bool responder_valid() const;
  bool is_pure() const;

  bool operator==(const MemoryOneStrategy&) const = default;

 private:
  MemoryOneStrategy(const Vec4& probs, double first_move) : probs_(probs), first_move_(first_move) {}
  Vec4 probs_;
  double first_move_;
};

inline MemoryOneStrategy validate_strategy(const Vec4& probs,
                                           StrategyKind required = StrategyKind::Any) {
  return MemoryOneStrategy::validate(probs, required);
}

inline constexpr Vec4 kRepeatStrategy = {1.0, 1.0, 0.0, 0.0};

/// Finite two-player normal form game. Utilities are stored row-major:
/// utility(i, j) is the pair (u1, u2) when player 1 plays i and player 2 plays j.
class StageGame {
 public:
  StageGame(std::vector<std::string> row_actions, std::vector<std::string> col_actions,
            std::vector<std::pair<double, double>> utilities);

  static StageGame prisoners_dilemma(const GameSpec& game);

  std::size_t row_count() const { return row_actions_.size(); }
  std::size_t col_count() const { return col_actions_.size(); }
  const std::vector<std::string>& row_actions() const { return row_actions_; }
  const std::vector<std::string>& col_actions() const { return col_actions_; }

  const std::pair<double, double>& utility(std::size_t row, std::size_t col) const {
    return utilities_[row * col_actions_.size() + col];
  }

  double min_row_utility() const;
  double max_row_utility() const;

 private:
  std::vector<std::string> row_actions_;
  std::vector<std::string> col_actions_;
  std::vector<std::pair<double, double>> utilities_;
};

}  // namespace rgbr
