#include "rgbr/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rgbr/error.hpp"

namespace rgbr {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::CC: return "cc";
    case Outcome::CD: return "cd";
    case Outcome::DC: return "dc";
    case Outcome::DD: return "dd";
  }
  return "??";
}

bool satisfies_pd_constraints(double R, double S, double T, double P) {
  return T > R && R > P && P > S && 2.0 * R > T + S;
}

GameSpec GameSpec::validate(double R, double S, double T, double P) {
  for (double x : {R, S, T, P}) {
    if (!std::isfinite(x)) throw Error(ErrorKind::ConstraintViolation, "payoffs must be finite");
  }
  auto fail = [&](const char* what) {
    std::ostringstream os;
    os << what << " fails for (R,S,T,P) = (" << R << ", " << S << ", " << T << ", " << P << ")";
    throw Error(ErrorKind::ConstraintViolation, os.str());
  };
  if (!(T > R)) fail("T > R");
  if (!(R > P)) fail("R > P");
  if (!(P > S)) fail("P > S");
  if (!(2.0 * R > T + S)) fail("2R > T + S");
  return GameSpec(R, S, T, P);
}

MemoryOneStrategy MemoryOneStrategy::validate(const Vec4& probs, StrategyKind required,
                                              double first_move) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      std::ostringstream os;
      os << "component " << (i + 1) << " = " << probs[i] << " is outside [0, 1]";
      throw Error(ErrorKind::OutOfRange, os.str());
    }
  }
  if (!(first_move >= 0.0 && first_move <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "first-round probability is outside [0, 1]");
  }
  MemoryOneStrategy s(probs, first_move);
  if (required == StrategyKind::CompletelyMixed && !s.completely_mixed()) {
    throw Error(ErrorKind::NotCompletelyMixed, "every component must lie strictly inside (0, 1)");
  }
  if (required == StrategyKind::Responder && !s.responder_valid()) {
    throw Error(ErrorKind::RepeatStrategyForbidden, "(1,1,0,0) is not an admissible responder");
  }
  return s;
}

bool MemoryOneStrategy::completely_mixed() const {
  return std::all_of(probs_.begin(), probs_.end(), [](double x) { return x > 0.0 && x < 1.0; });
}

bool MemoryOneStrategy::responder_valid() const { return probs_ != kRepeatStrategy; }

bool MemoryOneStrategy::is_pure() const {
  return std::all_of(probs_.begin(), probs_.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

StageGame::StageGame(std::vector<std::string> row_actions, std::vector<std::string> col_actions,
                     std::vector<std::pair<double, double>> utilities)
    : row_actions_(std::move(row_actions)),
      col_actions_(std::move(col_actions)),
      utilities_(std::move(utilities)) {
  if (row_actions_.empty() || col_actions_.empty()) {
    throw Error(ErrorKind::InvalidModel, "action sets must be nonempty");
  }
  if (utilities_.size() != row_actions_.size() * col_actions_.size()) {
    throw Error(ErrorKind::InvalidModel, "utility table must cover every action profile");
  }
}

StageGame StageGame::prisoners_dilemma(const GameSpec& g) {
  return StageGame({"c", "d"}, {"c", "d"},
                   {{g.R(), g.R()}, {g.S(), g.T()}, {g.T(), g.S()}, {g.P(), g.P()}});
}

double StageGame::min_row_utility() const {
  return std::min_element(utilities_.begin(), utilities_.end(),
                          [](auto& a, auto& b) { return a.first < b.first; })
      ->first;
}

double StageGame::max_row_utility() const {
  return std::max_element(utilities_.begin(), utilities_.end(),
                          [](auto& a, auto& b) { return a.first < b.first; })
      ->first;
}

}  // namespace rgbr
