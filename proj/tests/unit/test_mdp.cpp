#include <gtest/gtest.h>

#include <cmath>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "rgbr/best_response.hpp"
#include "rgbr/chain.hpp"
#include "rgbr/mdp.hpp"

using namespace rgbr;

namespace {

const GameSpec kPd = validate_game(3, 0, 5, 1);
const StageGame kStage = StageGame::prisoners_dilemma(kPd);

KMemoryStrategy one(const Vec4& q) {
  return KMemoryStrategy::from_memory_one(validate_strategy(q, StrategyKind::CompletelyMixed));
}

std::size_t nonzeros(const std::vector<Transition>& row) {
  std::size_t n = 0;
  for (const auto& t : row) n += t.probability > 0;
  return n;
}

}  // namespace

TEST(HistoryCodec, ShiftAndDecode) {
  const HistoryCodec c(2, 2, 2);
  EXPECT_EQ(c.state_count(), 16u);
  EXPECT_EQ(c.digit(1, 0), 2u);
  const std::size_t s = c.shift(c.shift(0, 1, 0), 0, 1);  // dc then cd
  const auto h = c.decode(s);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], (std::pair<std::size_t, std::size_t>{1, 0}));
  EXPECT_EQ(h[1], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(c.most_recent(s), c.digit(0, 1));
  EXPECT_EQ(c.encode(h), s);
  // The co-player reads the same history with each profile reversed.
  const auto w = c.decode(c.swap_perspective(s));
  EXPECT_EQ(w[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(w[1], (std::pair<std::size_t, std::size_t>{1, 0}));
  for (std::size_t x = 0; x < 16; ++x) EXPECT_EQ(c.swap_perspective(c.swap_perspective(x)), x);
}

TEST(HistoryCodec, MemoryGuard) {
  EXPECT_NO_THROW(HistoryCodec(12, 2, 2));  // 2^24 states
  EXPECT_RGBR_ERROR(HistoryCodec(13, 2, 2), StateSpaceTooLarge);
  EXPECT_RGBR_ERROR(HistoryCodec(0, 2, 2), InvalidArgument);
}

TEST(KMemoryStrategy, TableValidation) {
  EXPECT_THROW(KMemoryStrategy(1, {"c", "d"}, {"c", "d"}, {{0.5, 0.5}}), Error);
  EXPECT_THROW(KMemoryStrategy(1, {"c", "d"}, {"c", "d"},
                               {{0.5, 0.6}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}),
               Error);
  const auto s = one({0.9, 0.5, 0.2, 0.1});
  EXPECT_TRUE(s.completely_mixed());
  EXPECT_FALSE(s.is_pure());
  EXPECT_DOUBLE_EQ(s.probability(HistoryCodec(1, 2, 2).digit(0, 1), 0), 0.5);
}

TEST(BuildMdp, MemoryOneStructure) {
  const MdpModel m = build_mdp(one({0.9, 0.5, 0.2, 0.1}), kStage, 1);
  EXPECT_EQ(m.state_count(), 4u);
  EXPECT_EQ(m.action_count(), 2u);
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t a = 0; a < 2; ++a) EXPECT_EQ(nonzeros(m.row(s, a)), 2u);
}

TEST(BuildMdp, OpponentReadsSwappedProfile) {
  const MdpModel m = build_mdp(one({0.9, 0.5, 0.2, 0.1}), kStage, 1);
  const HistoryCodec c(1, 2, 2);
  EXPECT_DOUBLE_EQ(m.transition(c.digit(0, 0), 1, c.digit(1, 0)), 0.9);
  // After our cd the opponent saw dc and uses q3 = 0.2.
  EXPECT_DOUBLE_EQ(m.transition(c.digit(0, 1), 0, c.digit(0, 0)), 0.2);
  EXPECT_DOUBLE_EQ(m.transition(c.digit(1, 0), 0, c.digit(0, 0)), 0.5);
  EXPECT_EQ(m.reward(c.digit(1, 0)), 5.0);
  EXPECT_EQ(m.reward(c.digit(0, 1)), 0.0);
}

TEST(BuildMdp, TwoMemoryStates) {
  Rng rng(31);
  const MdpModel m = build_mdp(oracle::random_kmemory(rng, 2), kStage, 2);
  EXPECT_EQ(m.state_count(), 16u);
  const HistoryCodec c(2, 2, 2);
  for (std::size_t s = 0; s < 16; ++s)
    for (std::size_t a = 0; a < 2; ++a) {
      double sum = 0;
      for (const auto& t : m.row(s, a)) {
        sum += t.probability;
        EXPECT_EQ(t.next, c.shift(s, a, c.most_recent(t.next) % 2));
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(BuildMdp, Errors) {
  Rng rng(32);
  EXPECT_RGBR_ERROR(build_mdp(oracle::random_kmemory(rng, 2), kStage, 1), MemoryMismatch);
  const auto pure = KMemoryStrategy::from_memory_one(validate_strategy({1, 0, 1, 0}));
  EXPECT_RGBR_ERROR(build_mdp(pure, kStage, 1), NotCompletelyMixed);
}

TEST(Communicating, MixedOpponentModels) {
  Rng rng(33);
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_communicating(build_mdp(oracle::random_kmemory(rng, k), kStage, k)));
  EXPECT_TRUE(check_communicating(build_mdp(one({0.9, 0.5, 0.2, 1 - 1e-9}), kStage, 1)));
}

TEST(Communicating, UnreachableState) {
  const MdpModel m(2, 1, {{{1, 1.0}}, {{1, 1.0}}}, {0.0, 1.0});
  EXPECT_FALSE(check_communicating(m));
  EXPECT_RGBR_ERROR(solve_average_reward(m), NotCommunicating);
}

TEST(Communicating, InvalidModelRejected) {
  EXPECT_THROW(MdpModel(2, 1, {{{1, 0.5}}, {{0, 1.0}}}, {0.0, 1.0}), Error);
  EXPECT_THROW(MdpModel(2, 1, {{{2, 1.0}}, {{0, 1.0}}}, {0.0, 1.0}), Error);
}

TEST(Solve, MisTortAtMemoryOne) {
  const MdpModel m = build_mdp(one({0.9, 0.5, 0.2, 0.1}), kStage, 1);
  const SolveResult r = solve_average_reward(m);
  EXPECT_NEAR(r.gain, 2.0, 1e-9);
  EXPECT_EQ(r.policy, (PurePolicy{0, 0, 0, 0}));
  EXPECT_LT(r.bias_span, 1e-10);
}

TEST(Solve, ConstantUtility) {
  const StageGame flat({"a", "b"}, {"x", "y"}, {{3, 1}, {3, 2}, {3, 3}, {3, 4}});
  const auto opp = KMemoryStrategy(1, {"x", "y"}, {"a", "b"}, {{0.3, 0.7}, {0.6, 0.4}, {0.5, 0.5}, {0.1, 0.9}});
  const SolveResult r = solve_average_reward(build_mdp(opp, flat, 1));
  EXPECT_NEAR(r.gain, 3.0, 1e-12);
}

TEST(Solve, SuspiciousTitForTwoTats) {
  const MdpModel m = build_mdp(oracle::stf2t(), kStage, 2);
  const SolveResult r = solve_average_reward(m);
  const HistoryCodec c(2, 2, 2);
  // Alternation: play the opposite of our own last action.
  for (std::size_t s = 0; s < 16; ++s) {
    EXPECT_EQ(r.policy[s], 1 - c.decode(s)[1].first) << s;
  }
  // Exact value of alternation: opponent cooperates with 0.9 throughout.
  EXPECT_NEAR(r.gain, 0.5 * (0.9 * 3 + 0.1 * 0) + 0.5 * (0.9 * 5 + 0.1 * 1), 1e-9);
  EXPECT_NEAR(oracle::enumerate_best_gain(m), r.gain, 1e-9);
}

TEST(Solve, GainWithinStageBounds) {
  Rng rng(35);
  for (int i = 0; i < 20; ++i) {
    const MdpModel m = build_mdp(oracle::random_kmemory(rng, 2), kStage, 2);
    const SolveResult r = solve_average_reward(m);
    EXPECT_GE(r.gain, kStage.min_row_utility());
    EXPECT_LE(r.gain, kStage.max_row_utility());
  }
}

TEST(Solve, IterationCap) {
  SolverConfig cfg;
  cfg.max_iterations = 2;
  EXPECT_RGBR_ERROR(solve_average_reward(build_mdp(oracle::stf2t(), kStage, 2), cfg), NoConvergence);
}

TEST(PolicyGain, MatchesSolver) {
  Rng rng(36);
  for (int i = 0; i < 20; ++i) {
    const MdpModel m = build_mdp(oracle::random_kmemory(rng, 2), kStage, 2);
    const SolveResult r = solve_average_reward(m);
    const PolicyGain g = policy_gain(m, r.policy);
    EXPECT_NEAR(g.max_gain(), r.gain, 1e-9);
    for (double x : g.start_gains) EXPECT_NEAR(x, r.gain, 1e-9);
  }
}

TEST(PolicyGain, AllDefectMemoryOne) {
  const MdpModel m = build_mdp(one({0.9, 0.5, 0.2, 0.1}), kStage, 1);
  const PolicyGain g = policy_gain(m, {1, 1, 1, 1});
  ASSERT_EQ(g.class_gains.size(), 1u);
  EXPECT_NEAR(g.class_gains[0], 5.0 / 3, 1e-12);
  EXPECT_FALSE(g.start_dependent);
}

TEST(PolicyGain, EveryPureMemoryOnePolicy) {
  Rng rng(37);
  for (int i = 0; i < 50; ++i) {
    const GameSpec g = oracle::random_game(rng);
    const Vec4 q = oracle::random_mixed(rng);
    const MdpModel m = build_mdp(one(q), StageGame::prisoners_dilemma(g), 1);
    for (int k = 0; k < 16; ++k) {
      if (k == PureStrategyIndex::kRepeat) continue;
      const Vec4 p = PureStrategyIndex(k).decode();
      PurePolicy pi(4);
      for (int s = 0; s < 4; ++s) pi[s] = p[s] == 1.0 ? 0 : 1;
      const double expect = average_payoffs(validate_strategy(p), validate_strategy(q), g).s_x;
      const PolicyGain pg = policy_gain(m, pi);
      EXPECT_NEAR(pg.max_gain(), expect, 1e-9);
      for (double x : pg.start_gains) EXPECT_NEAR(x, expect, 1e-9);
    }
  }
}

TEST(PolicyGain, AgreesWithCesaroLimit) {
  Rng rng(38);
  for (int i = 0; i < 10; ++i) {
    const MdpModel m = build_mdp(oracle::random_kmemory(rng, 2, 0.05), kStage, 2);
    for (int j = 0; j < 50; ++j) {
      PurePolicy pi(16);
      for (auto& a : pi) a = rng.below(2);
      const PolicyGain pg = policy_gain(m, pi);
      const auto oracle = oracle::cesaro_gains(m, pi);
      for (std::size_t s = 0; s < 16; ++s) EXPECT_NEAR(pg.start_gains[s], oracle[s], 1e-9);
    }
  }
}

TEST(PolicyGain, MultipleRecurrentClasses) {
  // Two absorbing states with different rewards, one transient state.
  const MdpModel m(3, 1, {{{0, 1.0}}, {{1, 1.0}}, {{0, 0.25}, {1, 0.75}}}, {1.0, 3.0, 0.0});
  const PolicyGain g = policy_gain(m, {0, 0, 0});
  EXPECT_EQ(g.class_gains.size(), 2u);
  EXPECT_TRUE(g.start_dependent);
  EXPECT_NEAR(g.start_gains[2], 0.25 * 1 + 0.75 * 3, 1e-12);
  EXPECT_EQ(g.max_gain(), 3.0);
}

TEST(BestResponseKmem, MemoryOneExamples) {
  const auto u = best_response_kmem(one({0.4, 0.8, 0.2, 0.6}), kStage);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(u.strategy.probability(s, 1), 1.0);
  const auto h = best_response_kmem(one({0.5, 0.5, 0.5, 0.5}), kStage);
  EXPECT_NEAR(h.gain, 3.0, 1e-9);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(h.strategy.probability(s, 1), 1.0);
  EXPECT_TRUE(h.strategy.is_pure());
}

TEST(BestResponseKmem, SuspiciousTitForTwoTats) {
  const auto br = best_response_kmem(oracle::stf2t(), kStage);
  EXPECT_EQ(br.strategy.memory(), 2);
  EXPECT_TRUE(br.strategy.is_pure());
  EXPECT_NEAR(br.gain, 3.65, 1e-9);
}
