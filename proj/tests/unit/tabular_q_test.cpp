#include <gtest/gtest.h>

#include <unordered_map>

#include "cheesebench/harness.hpp"
#include "cheesebench/render.hpp"
#include "cheesebench/tabular_q.hpp"
#include "generators.hpp"

namespace cheesebench {
namespace {

const QLearningConfig kCfg{};

TEST(QlUpdate, FirstRewardFromZeroTable) {
  QTable q;
  TransitionGraph g;
  ql_update(q, g, kCfg, 1, Action::kForward, 1.0, 2);
  EXPECT_DOUBLE_EQ(q.get(1, Action::kForward), 0.1);
  EXPECT_TRUE(g.is_goal(2));
  EXPECT_EQ(g.successor(1, Action::kForward), 2u);
}

TEST(QlUpdate, ZeroRewardIntoZeroStateIsFixedPoint) {
  QTable q;
  TransitionGraph g;
  ql_update(q, g, kCfg, 1, Action::kStay, 0.0, 2);
  EXPECT_EQ(q.get(1, Action::kStay), 0.0);
  EXPECT_FALSE(g.has_goals());
}

TEST(QlUpdate, BelowThresholdIsNotAGoal) {
  QTable q;
  TransitionGraph g;
  ql_update(q, g, kCfg, 1, Action::kForward, 0.1, 2);
  EXPECT_FALSE(g.is_goal(2));
}

TEST(QlUpdate, ThreeStepChainConverges) {
  // s0 -R-> s1 -R-> s2 -R-> goal (+1). Every other action loops back to s0.
  QTable q;
  TransitionGraph g;
  constexpr QState kGoal = 99;
  for (int episode = 0; episode < 2000; ++episode) {
    for (QState s = 0; s < 3; ++s) {
      for (Action a : kAllActions) {
        if (a == Action::kRotateRight)
          ql_update(q, g, kCfg, s, a, s == 2 ? 1.0 : 0.0, s == 2 ? kGoal : s + 1);
        else
          ql_update(q, g, kCfg, s, a, 0.0, 0);
      }
    }
  }
  // Fixed point: Q(s, R) = gamma^(2 - s).
  EXPECT_NEAR(q.get(2, Action::kRotateRight), 1.0, 1e-6);
  EXPECT_NEAR(q.get(1, Action::kRotateRight), 0.95, 1e-6);
  EXPECT_NEAR(q.get(0, Action::kRotateRight), 0.9025, 1e-6);
  QState s = 0;
  for (int i = 0; i < 3; ++i) {
    ASSERT_EQ(q.greedy(s), Action::kRotateRight);
    s = *g.successor(s, q.greedy(s));
  }
  EXPECT_EQ(s, kGoal);
}

TEST(QTable, GreedyTieOrder) {
  QTable q;
  EXPECT_EQ(q.greedy(5), Action::kForward);
  q.set(5, Action::kForward, -1.0);
  EXPECT_EQ(q.greedy(5), Action::kRotateLeft);
  q.set(5, Action::kStay, 0.5);
  EXPECT_EQ(q.greedy(5), Action::kStay);
}

TEST(QlTurn, FollowsKnownPathToGoal) {
  QTable q;
  TransitionGraph g;
  g.record(1, Action::kForward, 2);
  g.record(2, Action::kForward, 3);
  g.record(1, Action::kRotateLeft, 4);
  g.mark_goal(3);
  Rng rng(0);
  const auto t = ql_turn(q, g, 1, 8, 0.2, rng);
  ASSERT_GE(t.actions.size(), 2u);
  EXPECT_EQ(t.actions[0], Action::kForward);
  EXPECT_EQ(t.actions[1], Action::kForward);
}

TEST(QlTurn, BfsPrefersShortestThenActionOrder) {
  TransitionGraph g;
  g.record(1, Action::kStay, 9);        // one step, but via the last action in tie order
  g.record(1, Action::kForward, 2);
  g.record(2, Action::kForward, 9);
  g.mark_goal(9);
  EXPECT_EQ(g.path_to_goal(1), std::vector<Action>{Action::kStay});
  g.record(1, Action::kRotateLeft, 9);
  EXPECT_EQ(g.path_to_goal(1), std::vector<Action>{Action::kRotateLeft});
}

TEST(QlTurn, EmptyGraphZeroEpsilonGoesForward) {
  QTable q;
  TransitionGraph g;
  Rng rng(0);
  const auto t = ql_turn(q, g, 7, 4, 0.0, rng);
  EXPECT_EQ(t.actions, std::vector<Action>(4, Action::kForward));
}

TEST(QlTurn, ZeroEpsilonIsDeterministicGivenTable) {
  QTable q;
  TransitionGraph g;
  Rng gen(3);
  for (int i = 0; i < 200; ++i) {
    const QState a = gen.below(20), b = gen.below(20);
    ql_update(q, g, kCfg, a, testing::random_action(gen), gen.uniform() * 0.5, b);
  }
  for (QState s = 0; s < 20; ++s) {
    Rng r1(1), r2(12345);
    EXPECT_EQ(ql_turn(q, g, s, 8, 0.0, r1), ql_turn(q, g, s, 8, 0.0, r2));
  }
}

TEST(QlTurn, NeverLongerThanK) {
  QTable q;
  TransitionGraph g;
  Rng rng(4);
  for (int i = 0; i < 50; ++i) g.record(i, Action::kForward, i + 1);
  g.mark_goal(50);
  for (int k : {1, 4, 8, 16}) EXPECT_LE(ql_turn(q, g, 0, k, 0.2, rng).actions.size(), static_cast<std::size_t>(k));
}

TEST(QState, SceneTextDropsStepAndReward) {
  const std::string a = "#.#\nSTEP 3 / 10\nREWARD 0.00\nON .\n";
  const std::string b = "#.#\nSTEP 4 / 10\nREWARD -1.00\nON .\n";
  EXPECT_EQ(scene_text(a), "#.#\nON .\n");
  EXPECT_EQ(qstate_of(scene_text(a)), qstate_of(scene_text(b)));
  EXPECT_NE(qstate_of(a), qstate_of(b));
}

TEST(QState, NoCollisionsOverObservationCorpus) {
  Rng rng(8);
  std::unordered_map<QState, std::string> seen;
  for (const auto& spec : all_paradigms()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto s = reset_trial(spec, 0, seed);
      while (!s.done) {
        for (RenderMode m : {RenderMode::kAscii2d, RenderMode::kAscii2dFpv, RenderMode::kAscii3d}) {
          const std::string text = render(s, m).text;
          const auto [it, inserted] = seen.emplace(qstate_of(text), text);
          ASSERT_TRUE(inserted || it->second == text) << "collision in " << spec.name;
        }
        advance(s, testing::random_action(rng));
      }
    }
  }
  EXPECT_GT(seen.size(), 10000u);
}

TEST(TabularQAgent, EpsilonDecaysPerTrial) {
  TabularQAgent agent(kCfg, 1);
  agent.end_trial(false);
  agent.end_trial(true);
  EXPECT_NEAR(agent.epsilon(), 0.2 * 0.995 * 0.995, 1e-12);
}

TEST(TabularQAgent, LearnsOperantChamber) {
  TabularQAgent agent(kCfg, derive_seed(kDefaultSeed, "agent:OperantChamber"));
  const auto result = run_session(spec_of(Paradigm::kOperantChamber), agent, HarnessConfig{});
  int wins = 0;
  for (const auto& r : result.records) wins += r.success;
  EXPECT_GE(static_cast<double>(wins) / result.records.size(), 0.95);
}

}  // namespace
}  // namespace cheesebench
