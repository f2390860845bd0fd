#include "rgbr/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>
#include <vector>

#include "rgbr/best_response.hpp"
#include "rgbr/chain.hpp"
#include "rgbr/error.hpp"
#include "rgbr/random.hpp"

namespace rgbr {

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::DNegative: return "d_negative";
    case TheoremId::Monotone: return "monotone";
    case TheoremId::Equivalence: return "equivalence";
    case TheoremId::UngratefulBr: return "ungrateful_br";
    case TheoremId::MischiefEqual: return "mischief_equal";
    case TheoremId::MistortBr: return "mistort_br";
    case TheoremId::MisdefectBr: return "misdefect_br";
    case TheoremId::NoIntersection: return "no_intersection";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (TheoremId id : kAllTheorems)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

namespace {

enum class Route { Determinant, Stationary };

GameSpec game_of(const Instance& x) { return GameSpec::validate(x.R, x.S, x.T, x.P); }

double payoff(Route route, const Vec4& p, const Vec4& q, const GameSpec& game) {
  if (route == Route::Determinant) return row_payoff(p, q, game);
  return payoff_via_stationary(MemoryOneStrategy::validate(p), MemoryOneStrategy::validate(q), game)
      .s_x;
}

// F_k for every k != 12, indexed by k (entry 12 unused).
std::array<double, 16> all_pure(Route route, const Vec4& q, const GameSpec& game) {
  std::array<double, 16> f{};
  for (int k = 0; k < 16; ++k) {
    if (k == PureStrategyIndex::kRepeat) continue;
    f[k] = payoff(route, PureStrategyIndex(k).decode(), q, game);
  }
  return f;
}

// How much the best competitor beats F_winner.
double shortfall(const std::array<double, 16>& f, int winner) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int k : kDistinctIndices)
    if (k != winner) worst = std::max(worst, f[k] - f[winner]);
  return worst;
}

// Determinant of the full Press-Dyson matrix by Gaussian elimination; an
// evaluation path independent of the cofactor expansion in chain.cpp.
double d_one_by_elimination(const Vec4& p, const Vec4& q) {
  double m[4][4] = {
      {p[0] * q[0] - 1.0, p[0] - 1.0, q[0] - 1.0, 1.0},
      {p[1] * q[2], p[1] - 1.0, q[2], 1.0},
      {p[2] * q[1], p[2], q[1] - 1.0, 1.0},
      {p[3] * q[3], p[3], q[3], 1.0},
  };
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    if (m[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[pivot][k]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double factor = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

MonotonicityReport monotone_along(Route route, const Vec4& p, const Vec4& q, const GameSpec& game,
                                  int coordinate) {
  if (coordinate < 0 || coordinate > 7) {
    throw Error(ErrorKind::InvalidArgument, "coordinate must be in [0, 7]");
  }
  if (coordinate < 4) {
    bool others_repeat = true;
    for (int i = 0; i < 4; ++i)
      if (i != coordinate && p[i] != kRepeatStrategy[i]) others_repeat = false;
    if (others_repeat) {
      throw Error(ErrorKind::SegmentHitsRepeat, "the varied segment passes through (1,1,0,0)");
    }
    MemoryOneStrategy::validate(q, StrategyKind::CompletelyMixed);
    MemoryOneStrategy::validate(p);
  } else {
    Vec4 probe = q;
    probe[coordinate - 4] = 0.5;
    MemoryOneStrategy::validate(probe, StrategyKind::CompletelyMixed);
    MemoryOneStrategy::validate(p, StrategyKind::Responder);
  }

  MonotonicityReport r{};
  for (int i = 0; i <= 100; ++i) {
    Vec4 x = p, y = q;
    const double t = i / 100.0;
    if (coordinate < 4) {
      x[coordinate] = t;
    } else {
      y[coordinate - 4] = kSampleEpsilon + (1.0 - 2.0 * kSampleEpsilon) * t;
    }
    r.values[i] = payoff(route, x, y, game);
  }
  double rise = 0.0, drop = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double d = r.values[i] - r.values[i - 1];
    rise = std::max(rise, d);
    drop = std::max(drop, -d);
  }
  r.violation = std::min(rise, drop);
  r.monotone = r.violation <= 1e-10;
  return r;
}

double violation(Route route, TheoremId id, const Instance& x) {
  const GameSpec game = game_of(x);
  switch (id) {
    case TheoremId::DNegative:
      if (route == Route::Determinant) {
        return determinant_d(MemoryOneStrategy::validate(x.p), MemoryOneStrategy::validate(x.q),
                             {1.0, 1.0, 1.0, 1.0});
      }
      return d_one_by_elimination(x.p, x.q);
    case TheoremId::Monotone:
      return monotone_along(route, x.p, x.q, game, x.coordinate).violation;
    case TheoremId::Equivalence: {
      const auto f = all_pure(route, x.q, game);
      return std::max({std::abs(f[0] - f[4]), std::abs(f[0] - f[8]), std::abs(f[13] - f[15]),
                       std::abs(f[14] - f[15])});
    }
    case TheoremId::UngratefulBr:
    case TheoremId::MisdefectBr:
      return shortfall(all_pure(route, x.q, game), 0);
    case TheoremId::MistortBr:
      return shortfall(all_pure(route, x.q, game), 15);
    case TheoremId::MischiefEqual: {
      const auto f = all_pure(route, x.q, game);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int k : kDistinctIndices) lo = std::min(lo, f[k]), hi = std::max(hi, f[k]);
      return hi - lo;
    }
    case TheoremId::NoIntersection: {
      // 1 when q is MisTort within the threshold, otherwise minus the
      // distance from the q3 = qbar3 manifold.
      const MischiefBars bars = mischief_bars(x.q[0], x.q[3], game);
      const double distance = std::abs(x.q[2] - bars.qbar3);
      if (x.q[1] < bars.qbar2 && distance <= kViolationThreshold) return 1.0;
      return -distance;
    }
  }
  return 0.0;
}

class Sampler {
 public:
  Sampler(TheoremId id, std::uint64_t seed) : id_(id), rng_(seed) {}

  Instance next() {
    for (std::size_t rejected = 0; rejected < kMaxRejections; ++rejected) {
      if (auto x = attempt()) return *x;
    }
    throw Error(ErrorKind::InfeasibleHypothesis,
                std::string("no admissible instance for ") + std::string(to_string(id_)) +
                    " after 1e6 consecutive draws");
  }

 private:
  double open_unit() { return rng_.uniform(kSampleEpsilon, 1.0 - kSampleEpsilon); }

  std::optional<Instance> draw_game(Instance& x) {
    x.S = 0.0;
    x.P = rng_.uniform(0.1, 2.0);
    x.R = rng_.uniform(x.P + 0.1, 5.0);
    const double lo = x.R + 0.1, hi = 2.0 * x.R - 0.1;
    if (!(lo < hi)) return std::nullopt;
    x.T = rng_.uniform(lo, hi);
    if (!satisfies_pd_constraints(x.R, x.S, x.T, x.P)) return std::nullopt;
    return x;
  }

  Vec4 random_q() { return {open_unit(), open_unit(), open_unit(), open_unit()}; }

  // Mix of interior points, faces and vertices of [0,1]^4.
  Vec4 random_p() {
    Vec4 p{};
    const auto mode = rng_.below(3);
    for (double& v : p) {
      if (mode == 0) {
        v = rng_.uniform();
      } else if (mode == 1) {
        v = static_cast<double>(rng_.below(2));
      } else {
        const auto pick = rng_.below(3);
        v = pick == 2 ? rng_.uniform() : static_cast<double>(pick);
      }
    }
    return p;
  }

  static bool in_open(double v) { return v > kSampleEpsilon && v < 1.0 - kSampleEpsilon; }

  std::optional<Instance> attempt() {
    Instance x{};
    if (!draw_game(x)) return std::nullopt;
    const GameSpec game = game_of(x);
    switch (id_) {
      case TheoremId::DNegative:
        x.p = random_p();
        x.q = random_q();
        if (x.p == kRepeatStrategy) return std::nullopt;
        return x;
      case TheoremId::Monotone: {
        x.p = {rng_.uniform(), rng_.uniform(), rng_.uniform(), rng_.uniform()};
        x.q = random_q();
        x.coordinate = static_cast<int>(rng_.below(8));
        if (x.coordinate >= 4 && x.p == kRepeatStrategy) return std::nullopt;
        return x;
      }
      case TheoremId::Equivalence:
        x.q = random_q();
        return x;
      case TheoremId::UngratefulBr: {
        Vec4 v = random_q();
        std::sort(v.begin(), v.end());
        x.q = {v[1], v[3], v[0], v[2]};  // q3 <= q1 <= q4 <= q2
        return x;
      }
      case TheoremId::MischiefEqual: {
        const double q1 = open_unit(), q4 = open_unit();
        const MischiefBars bars = mischief_bars(q1, q4, game);
        if (!in_open(bars.qbar2) || !in_open(bars.qbar3)) return std::nullopt;
        x.q = {q1, bars.qbar2, bars.qbar3, q4};
        return x;
      }
      case TheoremId::MistortBr: {
        const double q1 = open_unit(), q4 = open_unit();
        const MischiefBars bars = mischief_bars(q1, q4, game);
        const double top = std::min(bars.qbar2, 1.0 - kSampleEpsilon);
        if (!in_open(bars.qbar3) || !(top > kSampleEpsilon)) return std::nullopt;
        const double q2 = rng_.uniform(kSampleEpsilon, top);
        if (!(q2 < bars.qbar2)) return std::nullopt;
        x.q = {q1, q2, bars.qbar3, q4};
        return x;
      }
      case TheoremId::MisdefectBr: {
        const double q1 = open_unit(), q4 = open_unit();
        const MischiefBars bars = mischief_bars(q1, q4, game);
        const double bottom = std::max(bars.qbar3, kSampleEpsilon);
        if (!in_open(bars.qbar2) || !(bottom < 1.0 - kSampleEpsilon)) return std::nullopt;
        const double q3 = rng_.uniform(bottom, 1.0 - kSampleEpsilon);
        if (!(q3 > bars.qbar3)) return std::nullopt;
        x.q = {q1, bars.qbar2, q3, q4};
        return x;
      }
      case TheoremId::NoIntersection: {
        const double chi = 1.0 + 10.0 * rng_.uniform();
        if (!(chi > 1.0)) return std::nullopt;
        const double phi = extortion_phi_max(chi, game) * (1.0 - rng_.uniform());
        x.q = extortionate_strategy(phi, chi, game);
        for (double v : x.q)
          if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
        return x;
      }
    }
    return std::nullopt;
  }

  TheoremId id_;
  Rng rng_;
};

struct BatchOutcome {
  Instance worst{};
  double max_violation = -std::numeric_limits<double>::infinity();
};

BatchOutcome run_batch(TheoremId id, std::size_t count, std::uint64_t seed) {
  Sampler sampler(id, seed);
  BatchOutcome out;
  for (std::size_t i = 0; i < count; ++i) {
    const Instance x = sampler.next();
    const double v = violation(Route::Determinant, id, x);
    if (v > out.max_violation) {
      out.max_violation = v;
      out.worst = x;
    }
  }
  return out;
}

constexpr std::size_t kBatchSize = 2048;

}  // namespace

MonotonicityReport monotonicity_check(const Vec4& p, const Vec4& q, const GameSpec& game,
                                      int coordinate) {
  return monotone_along(Route::Determinant, p, q, game, coordinate);
}

double recheck(TheoremId id, const Instance& instance) {
  return violation(Route::Stationary, id, instance);
}

FalsificationReport check(TheoremId id, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");

  const std::size_t batches = (samples + kBatchSize - 1) / kBatchSize;
  std::vector<BatchOutcome> results(batches);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, batches);

  // Each worker takes batches b, b + workers, ...; results land in fixed slots.
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t b = w; b < batches; b += workers) {
        const std::size_t count = std::min(kBatchSize, samples - b * kBatchSize);
        results[b] = run_batch(id, count, derive_seed(seed, b));
      }
    }));
  }
  for (auto& j : jobs) j.get();

  FalsificationReport report{id, samples, std::nullopt, {}, -std::numeric_limits<double>::infinity(),
                             seed};
  for (const auto& r : results) {
    if (r.max_violation > report.max_violation) {
      report.max_violation = r.max_violation;
      report.worst = r.worst;
    }
  }
  if (report.max_violation > kViolationThreshold) report.counterexample = report.worst;
  return report;
}

}  // namespace rgbr
