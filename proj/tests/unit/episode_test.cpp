#include <gtest/gtest.h>

#include <set>

#include "cheesebench/episode.hpp"
#include "cheesebench/errors.hpp"
#include "cheesebench/paradigms.hpp"
#include "shortest_path.hpp"

namespace cheesebench {
namespace {

const ParadigmSpec& mwm() { return spec_of(Paradigm::kMorrisWaterMaze); }

TEST(ResetTrial, SameArgumentsGiveIdenticalStates) {
  EXPECT_EQ(reset_trial(mwm(), 0, 42), reset_trial(mwm(), 0, 42));
}

TEST(ResetTrial, MwmStartsVaryAcrossTrials) {
  for (std::uint64_t seed : {1ULL, 42ULL, 7777ULL}) {
    std::set<std::pair<int, int>> starts;
    for (int t = 0; t < 4; ++t) {
      const auto s = reset_trial(mwm(), t, seed);
      starts.insert({s.pose.x, s.pose.y});
    }
    EXPECT_GE(starts.size(), 2u) << "seed " << seed;
    // Starts cycle through the four rim positions.
    EXPECT_EQ(starts.size(), 4u) << "seed " << seed;
  }
}

TEST(ResetTrial, FreshTrialStartsAtStepZero) {
  const auto s = reset_trial(spec_of(Paradigm::kTMaze), 0, 5);
  EXPECT_EQ(s.step, 0);
  EXPECT_EQ(s.max_steps, 200);
  EXPECT_FALSE(s.done);
}

TEST(ResetTrial, UnknownNameIsConfigError) {
  EXPECT_THROW(reset_trial("HamsterWheel", 0, 1), ConfigError);
  EXPECT_NO_THROW(reset_trial("tmaze", 0, 1));
}

TEST(ResetTrial, SessionChoicesDependOnSeedOnly) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = std::get<MwmFlags>(reset_trial(mwm(), 0, seed).flags);
    const auto b = std::get<MwmFlags>(reset_trial(mwm(), 13, seed).flags);
    EXPECT_EQ(a.platform_quadrant, b.platform_quadrant);
  }
}

TEST(Advance, StayInNeutralCellGivesNothing) {
  auto s = reset_trial(mwm(), 0, 1);
  const auto o = advance(s, Action::kStay);
  EXPECT_EQ(o.reward, 0.0);
  EXPECT_FALSE(o.terminated);
  EXPECT_FALSE(o.truncated);
  EXPECT_EQ(s.step, 1);
}

TEST(Advance, LastBudgetStepTruncates) {
  auto s = reset_trial(mwm(), 0, 1);
  for (int i = 0; i < s.max_steps - 1; ++i) ASSERT_FALSE(advance(s, Action::kStay).truncated);
  const auto o = advance(s, Action::kStay);
  EXPECT_TRUE(o.truncated);
  EXPECT_FALSE(o.terminated);
  EXPECT_FALSE(o.success);
  EXPECT_EQ(s.step, 500);
  EXPECT_TRUE(s.done);
}

TEST(Advance, AfterTheEndIsUsageError) {
  auto s = reset_trial(spec_of(Paradigm::kDnmsTask), 0, 1);
  while (!s.done) advance(s, Action::kStay);
  EXPECT_THROW(advance(s, Action::kStay), UsageError);
}

TEST(Advance, ForwardOntoPlatformEndsTrialWithSuccess) {
  auto s = reset_trial(mwm(), 0, 9);
  const auto [px, py] = paradigms::kMwmPlatforms[std::get<MwmFlags>(s.flags).platform_quadrant];
  // Walk around the platform to the cell south of it, face north, then step on.
  GridMap detour = s.grid;
  detour.set(px, py, CellKind::kWall);
  for (Action a : testing::route_to(detour, s.pose, px, py + 1)) ASSERT_FALSE(advance(s, a).terminated);
  for (Action a : testing::face(s.pose.heading, Heading::kNorth)) advance(s, a);
  const auto o = advance(s, Action::kForward);
  EXPECT_TRUE(o.terminated);
  EXPECT_TRUE(o.success);
  EXPECT_EQ(o.reward, 1.0);
}

TEST(Advance, StepIncrementsByExactlyOne) {
  auto s = reset_trial(spec_of(Paradigm::kStarMaze), 3, 11);
  for (int i = 1; i <= 20; ++i) {
    advance(s, kAllActions[i % 4]);
    EXPECT_EQ(s.step, i);
  }
}

TEST(Seeds, TrialSeedsDifferFromSessionSeed) {
  std::set<std::uint64_t> seen{session_seed(20240917ULL, Paradigm::kTMaze)};
  for (int t = 0; t < 50; ++t) seen.insert(trial_seed(20240917ULL, Paradigm::kTMaze, t));
  EXPECT_EQ(seen.size(), 51u);
}

}  // namespace
}  // namespace cheesebench
