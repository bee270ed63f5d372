#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cheesebench/agents.hpp"
#include "cheesebench/harness.hpp"
#include "cheesebench/paradigms.hpp"
#include "cheesebench/report.hpp"
#include "generators.hpp"

namespace cheesebench {
namespace {

using testing::random_action;
using testing::random_actions;

std::size_t code_points(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

// --- env-core --------------------------------------------------------------------

TEST(Properties, FourLeftTurnsAreIdentity) {
  Rng rng(1);
  for (const auto& spec : all_paradigms()) {
    const auto s = reset_trial(spec, 0, 1);
    for (int i = 0; i < 200; ++i) {
      const Pose p = testing::random_pose(rng, s.grid, s.pose);
      Pose q = p;
      for (int k = 0; k < 4; ++k) q = apply_action(q, Action::kRotateLeft, s.grid);
      ASSERT_EQ(q, p);
      EXPECT_EQ(apply_action(apply_action(p, Action::kRotateLeft, s.grid), Action::kRotateRight, s.grid), p);
    }
  }
}

TEST(Properties, ReplaysAreIdentical) {
  Rng rng(2);
  for (const auto& spec : all_paradigms()) {
    for (int rep = 0; rep < 5; ++rep) {
      const std::uint64_t seed = rng.next();
      const int trial = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.trials)));
      const auto actions = random_actions(rng, static_cast<std::size_t>(spec.max_steps));
      auto a = reset_trial(spec, trial, seed);
      auto b = reset_trial(spec, trial, seed);
      for (Action act : actions) {
        if (a.done) break;
        ASSERT_EQ(advance(a, act), advance(b, act));
        ASSERT_EQ(a, b);
      }
    }
  }
}

TEST(Properties, AgentStaysOnOpenCellsInsideTheBorder) {
  Rng rng(3);
  for (const auto& spec : all_paradigms()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto s = reset_trial(spec, static_cast<int>(seed), seed);
      ASSERT_TRUE(s.grid.border_is_walled()) << spec.name;
      int calls = 0;
      while (!s.done) {
        advance(s, random_action(rng));
        ++calls;
        ASSERT_TRUE(s.grid.traversable(s.pose.x, s.pose.y)) << spec.name;
        ASSERT_GT(s.pose.x, 0);
        ASSERT_GT(s.pose.y, 0);
        ASSERT_LT(s.pose.x, s.grid.width() - 1);
        ASSERT_LT(s.pose.y, s.grid.height() - 1);
      }
      EXPECT_LE(calls, spec.max_steps);
    }
  }
}

// --- paradigms -------------------------------------------------------------------

TEST(Properties, RadialSuccessMeansFourBaitsAndNoRepeats) {
  Rng rng(4);
  const auto& spec = spec_of(Paradigm::kRadialArmMaze);
  int successes = 0;
  for (int rep = 0; rep < 400; ++rep) {
    auto s = reset_trial(spec, rep % spec.trials, rng.next());
    int baits = 0;
    std::vector<int> entered;
    // Biased walk so some trials actually finish: mostly forward.
    while (!s.done) {
      const Action a = rng.chance(0.6) ? Action::kForward : random_action(rng);
      const int was = paradigms::radial_arm_at(s.pose.x, s.pose.y);
      const auto o = advance(s, a);
      baits += o.reward == 1.0;
      const int now = paradigms::radial_arm_at(s.pose.x, s.pose.y);
      if (now >= 0 && now != was) entered.push_back(now);
    }
    if (s.success) {
      ++successes;
      EXPECT_EQ(baits, 4);
      auto sorted = entered;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
    }
  }
  RecordProperty("ram_successes", successes);
}

TEST(Properties, ShuttleSuccessLiesInTheCsWindow) {
  Rng rng(5);
  const auto& spec = spec_of(Paradigm::kShuttleBox);
  int successes = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    auto s = reset_trial(spec, rep % spec.trials, rng.next());
    while (!s.done) advance(s, random_action(rng));
    const auto& f = std::get<ShuttleFlags>(s.flags);
    if (s.success) {
      ++successes;
      EXPECT_GE(f.crossing_step, f.cs_onset);
      EXPECT_LT(f.crossing_step, f.cs_onset + kShuttleCsWindow);
    }
    if (f.us_active) EXPECT_EQ(f.cs_countdown, 0);
  }
  EXPECT_GT(successes, 0);
}

TEST(Properties, DnmsPhasesOnlyMoveForward) {
  Rng rng(6);
  const auto& spec = spec_of(Paradigm::kDnmsTask);
  for (int rep = 0; rep < 300; ++rep) {
    auto s = reset_trial(spec, rep % spec.trials, rng.next());
    auto last = std::get<DnmsFlags>(s.flags).phase;
    while (!s.done) {
      advance(s, rng.chance(0.5) ? Action::kForward : random_action(rng));
      const auto now = std::get<DnmsFlags>(s.flags).phase;
      EXPECT_GE(static_cast<int>(now), static_cast<int>(last));
      EXPECT_LE(static_cast<int>(now) - static_cast<int>(last), 1);
      last = now;
    }
  }
}

// --- render ----------------------------------------------------------------------

TEST(Properties, RenderIsAPureFunctionOfState) {
  Rng rng(7);
  for (const auto& spec : all_paradigms()) {
    auto s = reset_trial(spec, 0, rng.next());
    for (int i = 0; i < 25 && !s.done; ++i) {
      const auto copy = s;
      for (RenderMode m : {RenderMode::kAscii2d, RenderMode::kAscii2dFpv, RenderMode::kAscii3d})
        ASSERT_EQ(render(s, m), render(copy, m));
      ASSERT_EQ(s, copy);
      advance(s, random_action(rng));
    }
  }
}

// --- parsing -----------------------------------------------------------------------

TEST(Properties, ParseNeverThrowsOnRandomBytes) {
  Rng rng(8);
  for (int i = 0; i < 10000; ++i) {
    const std::string raw = i % 2 ? testing::random_bytes(rng, 300) : testing::random_reply(rng);
    const int k = static_cast<int>(1 + rng.below(16));
    AgentTurn t;
    ASSERT_NO_THROW(t = parse_agent_response(raw, k)) << "case " << i;
    ASSERT_FALSE(t.actions.empty());
    ASSERT_LE(t.actions.size(), static_cast<std::size_t>(k));
    ASSERT_LE(code_points(t.learnings), 500u);
    ASSERT_GE(t.parse_failures, 0);
  }
}

TEST(Properties, WastedStepAccountingIsExact) {
  static const std::vector<std::string> kValid = {"FORWARD", "forward", "Rotate_Left", "ROTATE_RIGHT", "stay"};
  static const std::vector<std::string> kInvalid = {"jump", "FORWARDS", "left", "go", "north", "42"};
  static const std::vector<std::string> kSeparators = {",", " ", ", ", "\n", "\t", ";"};
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    const int k = static_cast<int>(1 + rng.below(16));
    std::string raw = rng.chance(0.5) ? "ACTIONS:" : "actions: ";
    std::vector<Action> expected;
    int invalid = 0;
    const std::size_t n = rng.below(24);
    for (std::size_t j = 0; j < n; ++j) {
      if (j) raw += kSeparators[rng.below(kSeparators.size())];
      if (rng.chance(0.7)) {
        const auto& tok = kValid[rng.below(kValid.size())];
        raw += tok;
        expected.push_back(*parse_action(tok));
      } else {
        raw += kInvalid[rng.below(kInvalid.size())];
        ++invalid;
      }
    }
    const auto t = parse_agent_response(raw, k);
    if (expected.empty()) {
      ASSERT_EQ(t.actions, std::vector<Action>{Action::kStay}) << raw;
      ASSERT_EQ(t.parse_failures, invalid + 1) << raw;
    } else {
      if (expected.size() > static_cast<std::size_t>(k)) expected.resize(static_cast<std::size_t>(k));
      ASSERT_EQ(t.actions, expected) << raw;
      ASSERT_EQ(t.parse_failures, invalid) << raw;
    }
  }
}

TEST(Properties, FormatThenParseIsIdentity) {
  Rng rng(10);
  for (int i = 0; i < 2000; ++i) {
    AgentTurn t;
    const int k = static_cast<int>(1 + rng.below(16));
    t.actions = random_actions(rng, 1 + rng.below(static_cast<std::uint64_t>(k)));
    if (rng.chance(0.5)) {
      t.learnings_present = true;
      for (std::size_t j = rng.below(60); j > 0; --j) t.learnings += static_cast<char>('a' + rng.below(26));
    }
    ASSERT_EQ(parse_agent_response(format_turn(t), k), t);
  }
}

// --- harness -----------------------------------------------------------------------

TEST(Properties, StepConservationAndEarlyStop) {
  Rng rng(11);
  for (const auto& spec : all_paradigms()) {
    HarnessConfig cfg;
    cfg.trials_override = 3;
    cfg.batch = kBatchGrid[rng.below(4)];
    cfg.history = kHistoryGrid[rng.below(4)];
    cfg.seed = rng.next();
    // Scripted replies mix valid batches, junk and oversized batches.
    std::vector<std::string> replies;
    for (int i = 0; i < 50; ++i) {
      if (rng.chance(0.2)) {
        replies.push_back(testing::random_reply(rng));
      } else {
        AgentTurn t;
        t.actions = random_actions(rng, 1 + rng.below(20));
        if (rng.chance(0.3)) {
          t.learnings_present = true;
          t.learnings = std::string(rng.below(800), 'z');
        }
        replies.push_back(format_turn(t));
      }
    }
    ScriptedAgent agent(replies, true);
    std::vector<TurnTrace> turns;
    const auto result = run_session(spec, agent, cfg, [&](const TurnTrace& t) { turns.push_back(t); });
    ASSERT_EQ(result.records.size(), 3u);
    for (const auto& r : result.records) {
      int executed = 0;
      bool ended = false;
      for (const auto& t : turns) {
        if (t.trial != r.trial_index) continue;
        ASSERT_FALSE(ended) << "turn after the trial ended";
        ASSERT_LE(t.executed.size(), t.parsed.size());
        ASSERT_LE(t.parsed.size(), static_cast<std::size_t>(cfg.batch));
        ASSERT_LE(code_points(t.learnings), 500u);
        executed += static_cast<int>(t.executed.size());
        ended = t.terminated || t.truncated;
        if (t.executed.size() < t.parsed.size()) ASSERT_TRUE(ended);
      }
      EXPECT_TRUE(ended);
      EXPECT_EQ(executed, r.steps_used);
      EXPECT_LE(r.steps_used, spec.max_steps);
    }
  }
}

// --- metrics -----------------------------------------------------------------------

TEST(Properties, StandardErrorFormula) {
  Rng rng(12);
  for (int i = 0; i < 5000; ++i) {
    const int n = static_cast<int>(1 + rng.below(500));
    const int wins = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    const double p = static_cast<double>(wins) / n;
    EXPECT_DOUBLE_EQ(binomial_se(wins, n), std::sqrt(p * (1 - p) / n));
  }
}

TEST(Properties, AggregationIgnoresRecordOrder) {
  Rng rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<TrialRecord> recs;
    for (const auto& spec : all_paradigms()) {
      if (rng.chance(0.2)) continue;
      const int n = static_cast<int>(1 + rng.below(40));
      for (int t = 0; t < n; ++t) recs.push_back(TrialRecord{std::string(spec.name), t, rng.chance(0.4)});
    }
    if (recs.empty()) continue;
    const auto base = summarize(recs);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      for (std::size_t i = recs.size() - 1; i > 0; --i) std::swap(recs[i], recs[rng.below(i + 1)]);
      ASSERT_EQ(summarize(recs), base);
    }
  }
}

}  // namespace
}  // namespace cheesebench
