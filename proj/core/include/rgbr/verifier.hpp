#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rgbr/game.hpp"

namespace rgbr {

/// Numerical falsification in place of symbolic proof: each theorem gets a
/// sampler that produces instances satisfying its hypothesis and a predicate
/// scoring how badly its conclusion fails. Finding nothing is evidence, not proof.
enum class TheoremId : std::uint8_t {
  DNegative,
  Monotone,
  Equivalence,
  UngratefulBr,
  MischiefEqual,
  MistortBr,
  MisdefectBr,
  NoIntersection,
};

inline constexpr std::array<TheoremId, 8> kAllTheorems = {
    TheoremId::DNegative,     TheoremId::Monotone,  TheoremId::Equivalence,
    TheoremId::UngratefulBr,  TheoremId::MischiefEqual, TheoremId::MistortBr,
    TheoremId::MisdefectBr,   TheoremId::NoIntersection};

std::string_view to_string(TheoremId id);
/// Accepts the lowercase names printed by to_string ("mistort_br", ...).
std::optional<TheoremId> parse_theorem(std::string_view name);

/// Conclusion violations above this count as counterexamples.
inline constexpr double kViolationThreshold = 1e-8;
/// Open-interval margin for sampled opponent probabilities.
inline constexpr double kSampleEpsilon = 1e-6;
/// Consecutive rejected draws before a hypothesis is declared infeasible.
inline constexpr std::size_t kMaxRejections = 1'000'000;

struct Instance {
  Vec4 p;
  Vec4 q;
  double R, S, T, P;
  int coordinate = -1;  // varied coordinate for Monotone (0..3 -> p_i, 4..7 -> q_i)
};

struct FalsificationReport {
  TheoremId theorem;
  std::size_t samples_tried;
  std::optional<Instance> counterexample;
  Instance worst;  // instance attaining max_violation
  double max_violation;
  std::uint64_t seed;
};

FalsificationReport check(TheoremId id, std::size_t samples, std::uint64_t seed);

/// Violation score of one instance under `id`, evaluated through the
/// stationary-distribution route rather than the determinant.
double recheck(TheoremId id, const Instance& instance);

struct MonotonicityReport {
  bool monotone;
  double violation;  // how far the sequence is from monotone in either direction
  std::array<double, 101> values;
};

/// s_X along 101 evenly spaced values of one coordinate (0..3 for p_i,
/// 4..7 for q_i), the others held fixed. q coordinates range over
/// [kSampleEpsilon, 1 - kSampleEpsilon].
MonotonicityReport monotonicity_check(const Vec4& p, const Vec4& q, const GameSpec& game,
                                      int coordinate);

/// Free-text reminder carried in every report.
inline constexpr std::string_view kVerifierNote =
    "randomized falsification: zero counterexamples is evidence, not proof; games use S = 0, "
    "P ~ U(0.1,2), R ~ U(P+0.1,5), T ~ U(R+0.1,2R-0.1)";

}  // namespace rgbr
