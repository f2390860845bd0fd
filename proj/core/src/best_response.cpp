#include "rgbr/best_response.hpp"

#include <algorithm>
#include <cmath>

#include "rgbr/error.hpp"
#include "rgbr/random.hpp"

namespace rgbr {

PureStrategyIndex PureStrategyIndex::encode(const Vec4& pure) {
  int k = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (pure[i] != 0.0 && pure[i] != 1.0) {
      throw Error(ErrorKind::InvalidArgument, "pure strategy components must be 0 or 1");
    }
    k = 2 * k + static_cast<int>(pure[i]);
  }
  return PureStrategyIndex(k);
}

Vec4 PureStrategyIndex::decode() const {
  if (k_ < 0 || k_ > 15) throw Error(ErrorKind::OutOfRange, "pure strategy index outside [0, 15]");
  Vec4 p{};
  for (int i = 0; i < 4; ++i) p[i] = static_cast<double>((k_ >> (3 - i)) & 1);
  return p;
}

MemoryOneStrategy PureStrategyIndex::strategy() const {
  return MemoryOneStrategy::validate(decode());
}

double pure_payoff(int k, const MemoryOneStrategy& q, const GameSpec& game) {
  if (k == PureStrategyIndex::kRepeat) {
    throw Error(ErrorKind::RepeatStrategyForbidden, "F_12 (Repeat) is undefined");
  }
  return average_payoffs(PureStrategyIndex(k).strategy(), q, game).s_x;
}

double ResponseTable::value(int k) const {
  for (auto& [index, v] : entries)
    if (index == k) return v;
  throw Error(ErrorKind::InvalidArgument, "index is not a distinct representative");
}

double ResponseTable::spread() const {
  auto [lo, hi] = std::minmax_element(entries.begin(), entries.end(),
                                      [](auto& a, auto& b) { return a.second < b.second; });
  return hi->second - lo->second;
}

ResponseTable pure_payoff_table(const MemoryOneStrategy& q, const GameSpec& game) {
  if (!q.completely_mixed()) {
    throw Error(ErrorKind::NotCompletelyMixed, "opponent strategy must be completely mixed");
  }
  ResponseTable table{};
  table.best_value = -INFINITY;
  for (std::size_t i = 0; i < kDistinctIndices.size(); ++i) {
    const int k = kDistinctIndices[i];
    const double v = pure_payoff(k, q, game);
    table.entries[i] = {k, v};
    table.best_value = std::max(table.best_value, v);
  }
  for (auto& [k, v] : table.entries) {
    if (v >= table.best_value - kTieTolerance) table.best_set.push_back(k);
  }
  return table;
}

PureBestResponse best_response_pure(const MemoryOneStrategy& q, const GameSpec& game) {
  const ResponseTable table = pure_payoff_table(q, game);
  PureBestResponse out{{}, table.best_set, table.best_value};
  for (int k : table.best_set) out.strategies.push_back(PureStrategyIndex(k).strategy());
  return out;
}

bool classify_ungrateful(const MemoryOneStrategy& q) {
  return q[2] <= q[0] && q[0] <= q[3] && q[3] <= q[1];
}

MischiefBars mischief_bars(double q1, double q4, const GameSpec& g) {
  const double R = g.R(), S = g.S(), T = g.T(), P = g.P();
  MischiefBars bars{};
  bars.qbar2 = (q1 * (T - P) - (1.0 + q4) * (T - R)) / (R - P);
  bars.qbar3 = ((1.0 - q1) * (P - S) + q4 * (R - S)) / (R - P);
  bars.feasible = bars.qbar2 > 0.0 && bars.qbar2 < 1.0 && bars.qbar3 > 0.0 && bars.qbar3 < 1.0;
  return bars;
}

Vec4 extortionate_strategy(double phi, double chi, const GameSpec& g) {
  const double R = g.R(), S = g.S(), T = g.T(), P = g.P();
  return {1.0 - phi * (chi - 1.0) * (R - P) / (P - S),
          1.0 - phi * (1.0 + chi * (T - P) / (P - S)),
          phi * (chi + (T - P) / (P - S)),
          0.0};
}

double extortion_phi_max(double chi, const GameSpec& g) {
  return (g.P() - g.S()) / ((g.P() - g.S()) + chi * (g.T() - g.P()));
}

ExtortionParams recover_extortion(const Vec4& q, const GameSpec& g) {
  const double R = g.R(), S = g.S(), T = g.T(), P = g.P();
  ExtortionParams out{0.0, 0.0, false};
  if (std::abs(q[3]) > kManifoldTolerance) return out;

  // Row q1 fixes phi*(chi - 1); row q3 fixes phi*chi + phi*t.
  const double t = (T - P) / (P - S);
  const double a = (1.0 - q[0]) * (P - S) / (R - P);
  const double phi = (q[2] - a) / (1.0 + t);
  if (!(phi > 0.0)) return out;
  const double phi_chi = a + phi;
  out.phi = phi;
  out.chi = phi_chi / phi;

  const double q2_expected = 1.0 - phi - phi_chi * t;
  out.valid = out.chi > 1.0 && phi <= extortion_phi_max(out.chi, g) + kManifoldTolerance &&
              std::abs(q[1] - q2_expected) <= kManifoldTolerance;
  return out;
}

std::string_view to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::MisChief: return "MisChief";
    case StrategyClass::MisTort: return "MisTort";
    case StrategyClass::MisDefect: return "MisDefect";
    case StrategyClass::Extortionate: return "Extortionate";
    case StrategyClass::Ungrateful: return "Ungrateful";
  }
  return "?";
}

std::vector<StrategyClass> classify_q(const Vec4& q, const GameSpec& game) {
  for (double x : q) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::OutOfRange, "component outside [0, 1]");
  }
  std::vector<StrategyClass> out;
  const MischiefBars bars = mischief_bars(q[0], q[3], game);
  const bool q2_on = std::abs(q[1] - bars.qbar2) <= kManifoldTolerance;
  const bool q3_on = std::abs(q[2] - bars.qbar3) <= kManifoldTolerance;
  if (q2_on && q3_on) out.push_back(StrategyClass::MisChief);
  if (q[1] < bars.qbar2 - kManifoldTolerance && q3_on) out.push_back(StrategyClass::MisTort);
  if (q2_on && q[2] > bars.qbar3 + kManifoldTolerance) out.push_back(StrategyClass::MisDefect);
  if (recover_extortion(q, game).valid) out.push_back(StrategyClass::Extortionate);

  const auto s = MemoryOneStrategy::validate(q);
  if (s.completely_mixed() && classify_ungrateful(s)) out.push_back(StrategyClass::Ungrateful);
  return out;
}

std::vector<PayoffPoint> payoff_region_scatter(const MemoryOneStrategy& q, const GameSpec& game,
                                               std::size_t n, std::uint64_t seed) {
  if (!q.completely_mixed()) {
    throw Error(ErrorKind::NotCompletelyMixed, "opponent strategy must be completely mixed");
  }
  std::vector<PayoffPoint> out;
  out.reserve(n);
  auto emit = [&](const Vec4& p) {
    if (out.size() >= n || p == kRepeatStrategy) return;
    const PayoffPair s = average_payoffs(MemoryOneStrategy::validate(p), q, game);
    out.push_back({s.s_x, s.s_y});
  };

  for (int k : kDistinctIndices) emit(PureStrategyIndex(k).decode());

  constexpr int kLevels = 5;
  for (int code = 0; code < kLevels * kLevels * kLevels * kLevels && out.size() < n; ++code) {
    Vec4 p{};
    int c = code;
    for (int i = 3; i >= 0; --i) {
      p[i] = static_cast<double>(c % kLevels) / (kLevels - 1);
      c /= kLevels;
    }
    emit(p);
  }

  Rng rng(seed);
  while (out.size() < n) {
    emit({rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()});
  }
  return out;
}

}  // namespace rgbr
