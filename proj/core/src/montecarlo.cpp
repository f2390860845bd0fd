#include "rgbr/montecarlo.hpp"

#include <cmath>
#include <vector>

#include "rgbr/error.hpp"
#include "rgbr/random.hpp"

namespace rgbr {
namespace {

class BatchMeans {
 public:
  explicit BatchMeans(std::size_t rounds) : rounds_(rounds), batch_(rounds / kSimBatches) {}

  void add(double x, double y) {
    const std::size_t b = std::min(played_ / batch_, kSimBatches - 1);
    if (b != current_) close_batch(), current_ = b;
    sum_x_ += x;
    sum_y_ += y;
    ++count_;
    ++played_;
  }

  SimResult finish(std::uint64_t seed) {
    close_batch();
    // Batch 0 is burn-in.
    const std::size_t used = means_x_.size() - 1;
    double total_x = 0.0, total_y = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 1; i < means_x_.size(); ++i) {
      total_x += means_x_[i] * static_cast<double>(sizes_[i]);
      total_y += means_y_[i] * static_cast<double>(sizes_[i]);
      n += sizes_[i];
    }
    SimResult r{};
    r.mean_x = total_x / static_cast<double>(n);
    r.mean_y = total_y / static_cast<double>(n);
    double bx = 0.0, by = 0.0;
    for (std::size_t i = 1; i < means_x_.size(); ++i) {
      bx += means_x_[i];
      by += means_y_[i];
    }
    bx /= static_cast<double>(used);
    by /= static_cast<double>(used);
    double vx = 0.0, vy = 0.0;
    for (std::size_t i = 1; i < means_x_.size(); ++i) {
      vx += (means_x_[i] - bx) * (means_x_[i] - bx);
      vy += (means_y_[i] - by) * (means_y_[i] - by);
    }
    vx /= static_cast<double>(used - 1);
    vy /= static_cast<double>(used - 1);
    r.std_err = std::sqrt(vx / static_cast<double>(used));
    r.std_err_y = std::sqrt(vy / static_cast<double>(used));
    r.rounds = rounds_;
    r.seed = seed;
    r.rng = kRngAlgorithm;
    return r;
  }

 private:
  void close_batch() {
    if (count_ == 0) return;
    means_x_.push_back(sum_x_ / static_cast<double>(count_));
    means_y_.push_back(sum_y_ / static_cast<double>(count_));
    sizes_.push_back(count_);
    sum_x_ = sum_y_ = 0.0;
    count_ = 0;
  }

  std::size_t rounds_;
  std::size_t batch_;
  std::size_t current_ = 0;
  std::size_t played_ = 0;
  std::size_t count_ = 0;
  double sum_x_ = 0.0, sum_y_ = 0.0;
  std::vector<double> means_x_, means_y_;
  std::vector<std::size_t> sizes_;
};

void require_rounds(std::size_t rounds) {
  if (rounds < kMinSimRounds) {
    throw Error(ErrorKind::InvalidArgument, "simulation needs at least 1000 rounds");
  }
}

std::size_t draw(Rng& rng, const std::vector<double>& dist) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < dist.size(); ++a) {
    acc += dist[a];
    if (u < acc) return a;
  }
  return dist.size() - 1;
}

}  // namespace

SimResult simulate(const MemoryOneStrategy& p, const MemoryOneStrategy& q, const GameSpec& game,
                   std::size_t rounds, std::uint64_t seed) {
  require_rounds(rounds);
  const Vec4 sx = game.payoff_x();
  const Vec4 sy = game.payoff_y();
  Rng rng(seed);
  BatchMeans stats(rounds);

  double cp = p.first_move();
  double cq = q.first_move();
  for (std::size_t r = 0; r < rounds; ++r) {
    const bool x_coop = rng.bernoulli(cp);
    const bool y_coop = rng.bernoulli(cq);
    const auto o = static_cast<Outcome>((x_coop ? 0 : 2) + (y_coop ? 0 : 1));
    stats.add(sx[index(o)], sy[index(o)]);
    cp = p.cooperate_after(o);
    cq = q.cooperate_after(perspective_swap(o));
  }
  return stats.finish(seed);
}

SimResult simulate(const KMemoryStrategy& p, const KMemoryStrategy& q, const StageGame& game,
                   std::size_t rounds, std::uint64_t seed) {
  require_rounds(rounds);
  if (p.own_actions().size() != game.row_count() || p.other_actions().size() != game.col_count() ||
      q.own_actions().size() != game.col_count() || q.other_actions().size() != game.row_count()) {
    throw Error(ErrorKind::InvalidModel, "strategy action sets do not match the stage game");
  }
  Rng rng(seed);
  BatchMeans stats(rounds);

  std::size_t hp = p.codec().padded_start();
  std::size_t hq = q.codec().padded_start();
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::size_t a1 = draw(rng, p.distribution(hp));
    const std::size_t a2 = draw(rng, q.distribution(hq));
    const auto& u = game.utility(a1, a2);
    stats.add(u.first, u.second);
    hp = p.codec().shift(hp, a1, a2);
    hq = q.codec().shift(hq, a2, a1);
  }
  return stats.finish(seed);
}

}  // namespace rgbr
