#include "cheesebench/paradigms.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <numbers>

namespace cheesebench::paradigms {

namespace {

struct Move {
  Pose before;
  bool entered = false;  // FORWARD moved onto a new cell
  bool bumped = false;   // FORWARD was blocked
  int bump_x = 0;
  int bump_y = 0;
};

Move move_agent(EpisodeState& s, Action a) {
  Move m{s.pose};
  s.pose = apply_action(s.pose, a, s.grid);
  if (a == Action::kForward) {
    if (s.pose == m.before) {
      m.bumped = true;
      std::tie(m.bump_x, m.bump_y) = ahead_of(m.before);
    } else {
      m.entered = true;
    }
  }
  ++s.step;
  return m;
}

/// `success` is the verdict if the trial ends on this step (termination or budget).
StepOutcome finish(EpisodeState& s, double reward, bool terminated, bool success) {
  StepOutcome o;
  o.reward = reward;
  o.terminated = terminated;
  if (!terminated && s.step >= s.max_steps) o.truncated = true;
  o.success = (o.terminated || o.truncated) && success;
  s.last_reward = reward;
  s.cumulative_reward += reward;
  s.done = o.terminated || o.truncated;
  s.success = o.success;
  return o;
}

const Cell& here(const EpisodeState& s) { return s.grid.at(s.pose.x, s.pose.y); }

GridMap walled_room(int width, int height, CellKind floor) {
  GridMap g(width, height);
  for (int y = 1; y < height - 1; ++y)
    for (int x = 1; x < width - 1; ++x) g.set(x, y, floor);
  return g;
}

GridMap disc(CellKind floor, int radius_sq) {
  GridMap g(kMwmSize, kMwmSize);
  constexpr int c = kMwmSize / 2;
  for (int y = 0; y < kMwmSize; ++y)
    for (int x = 0; x < kMwmSize; ++x)
      if ((x - c) * (x - c) + (y - c) * (y - c) <= radius_sq) g.set(x, y, floor);
  return g;
}

// Pool and Barnes table both fill the arena.
constexpr int kPoolRadiusSq = 90;
constexpr int kTableRadiusSq = 90;

Heading random_heading(Rng& rng) { return static_cast<Heading>(rng.below(4)); }

// Place preference: two 7x7 chambers with a three-row opening between them.
constexpr int kPlaceWidth = 16;
constexpr int kPlaceHeight = 9;

}  // namespace

const std::array<std::pair<int, int>, 12>& barnes_holes() {
  static const std::array<std::pair<int, int>, 12> holes = [] {
    std::array<std::pair<int, int>, 12> out{};
    const GridMap g = disc(CellKind::kFloor, kTableRadiusSq);
    constexpr double c = kMwmSize / 2;
    for (int i = 0; i < 12; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / 12.0;
      std::pair<int, int> last{static_cast<int>(c), static_cast<int>(c)};
      for (double r = 0.0; r <= c; r += 0.05) {
        const int x = static_cast<int>(std::lround(c + r * std::cos(theta)));
        const int y = static_cast<int>(std::lround(c + r * std::sin(theta)));
        if (!g.traversable(x, y)) break;
        last = {x, y};
      }
      out[i] = last;
    }
    return out;
  }();
  return holes;
}

int radial_arm_at(int x, int y) {
  for (int i = 0; i < kRadialArms; ++i) {
    if (kRadialArmEnds[i] == std::pair{x, y}) return i;
  }
  return -1;
}

int shuttle_compartment_at(int x) {
  if (x < kShuttleDivider) return 0;
  if (x > kShuttleDivider) return 1;
  return -1;
}

// --- Morris water maze ------------------------------------------------------

void init_mwm(EpisodeState& s, Rng& session, Rng& trial) {
  (void)trial;
  MwmFlags f;
  f.platform_quadrant = static_cast<int>(session.below(4));
  const int offset = static_cast<int>(session.below(4));
  f.start_index = (s.trial_index + offset) % 4;

  s.grid = disc(CellKind::kWater, kPoolRadiusSq);
  // Distal cues sit in the wall ring on the diagonals.
  constexpr std::array<std::pair<int, int>, 4> kLandmarks = {
      std::pair{3, 3}, std::pair{17, 3}, std::pair{17, 17}, std::pair{3, 17}};
  for (std::uint8_t i = 0; i < kLandmarks.size(); ++i)
    s.grid.set(kLandmarks[i].first, kLandmarks[i].second, CellKind::kLandmark, i);
  const auto [px, py] = kMwmPlatforms[f.platform_quadrant];
  s.grid.set(px, py, CellKind::kGoal);
  s.pose = kMwmStarts[f.start_index];
  s.flags = f;
}

StepOutcome step_mwm(EpisodeState& s, Action a) {
  move_agent(s, a);
  if (here(s).kind == CellKind::kGoal) return finish(s, s.spec().reward.goal_reward, true, true);
  return finish(s, s.spec().reward.step_penalty, false, false);
}

// --- Barnes maze -------------------------------------------------------------

void init_barnes(EpisodeState& s, Rng& session, Rng& trial) {
  BarnesFlags f;
  f.target_hole = static_cast<int>(session.below(kBarnesHoles));
  s.grid = disc(CellKind::kFloor, kTableRadiusSq);
  const auto& holes = barnes_holes();
  for (const auto& [x, y] : holes) s.grid.set(x, y, CellKind::kHole);
  s.pose = Pose{kMwmSize / 2, kMwmSize / 2, random_heading(trial)};
  s.flags = f;
}

StepOutcome step_barnes(EpisodeState& s, Action a) {
  const Move m = move_agent(s, a);
  const auto& f = std::get<BarnesFlags>(s.flags);
  if (m.entered && std::pair{s.pose.x, s.pose.y} == barnes_holes()[f.target_hole])
    return finish(s, s.spec().reward.goal_reward, true, true);
  return finish(s, s.spec().reward.step_penalty, false, false);
}

// --- Star maze ---------------------------------------------------------------

void init_star(EpisodeState& s, Rng& session, Rng& trial) {
  StarFlags f;
  f.goal_arm = static_cast<int>(session.below(kStarArms));
  f.start_arm = static_cast<int>(trial.below(kStarArms - 1));
  if (f.start_arm >= f.goal_arm) ++f.start_arm;

  GridMap g(21, 21);
  for (int y = 8; y <= 12; ++y)
    for (int x = 8; x <= 12; ++x) g.set(x, y, CellKind::kFloor);
  for (int y = 1; y <= 7; ++y) g.set(10, y, CellKind::kFloor);   // N
  for (int x = 13; x <= 19; ++x) g.set(x, 11, CellKind::kFloor); // E
  for (int y = 13; y <= 19; ++y) g.set(12, y, CellKind::kFloor); // SE
  for (int y = 13; y <= 19; ++y) g.set(8, y, CellKind::kFloor);  // SW
  for (int x = 1; x <= 7; ++x) g.set(x, 9, CellKind::kFloor);    // W
  const auto [gx, gy] = kStarArmEnds[f.goal_arm];
  g.set(gx, gy, CellKind::kGoal);
  s.grid = std::move(g);

  constexpr std::array<Heading, 5> kInward = {Heading::kSouth, Heading::kWest, Heading::kNorth, Heading::kNorth,
                                              Heading::kEast};
  const auto [sx, sy] = kStarArmEnds[f.start_arm];
  s.pose = Pose{sx, sy, kInward[f.start_arm]};
  s.flags = f;
}

StepOutcome step_star(EpisodeState& s, Action a) {
  move_agent(s, a);
  if (here(s).kind == CellKind::kGoal) return finish(s, s.spec().reward.goal_reward, true, true);
  return finish(s, s.spec().reward.step_penalty, false, false);
}

// --- T-maze ------------------------------------------------------------------

void init_tmaze(EpisodeState& s, Rng& session, Rng& trial) {
  (void)trial;
  TMazeFlags f;
  const int first = static_cast<int>(session.below(2));
  f.rewarded_arm = (first + s.trial_index) % 2;

  GridMap g(13, 12);
  for (int x = 1; x <= 11; ++x) g.set(x, 1, CellKind::kFloor);
  for (int y = 2; y <= 10; ++y) g.set(6, y, CellKind::kFloor);
  s.grid = std::move(g);
  s.pose = Pose{kTMazeStart.first, kTMazeStart.second, Heading::kNorth};
  s.flags = f;
}

StepOutcome step_tmaze(EpisodeState& s, Action a) {
  const Move m = move_agent(s, a);
  const auto& f = std::get<TMazeFlags>(s.flags);
  for (int arm = 0; arm < 2; ++arm) {
    if (m.entered && std::pair{s.pose.x, s.pose.y} == kTMazeArmEnds[arm]) {
      const bool rewarded = arm == f.rewarded_arm;
      return finish(s, rewarded ? s.spec().reward.goal_reward : 0.0, true, rewarded);
    }
  }
  return finish(s, s.spec().reward.step_penalty, false, false);
}

// --- Radial arm maze -----------------------------------------------------------

void init_ram(EpisodeState& s, Rng& session, Rng& trial) {
  RadialFlags f;
  std::array<int, kRadialArms> arms{0, 1, 2, 3, 4, 5, 6, 7};
  for (int i = 0; i < kRadialBaited; ++i) {
    const int j = i + static_cast<int>(session.below(kRadialArms - i));
    std::swap(arms[i], arms[j]);
    f.baited_arms |= static_cast<std::uint8_t>(1u << arms[i]);
  }

  GridMap g(21, 21);
  for (int y = 8; y <= 12; ++y)
    for (int x = 8; x <= 12; ++x) g.set(x, y, CellKind::kFloor);
  for (int k = 2; k <= 7; ++k) {
    g.set(9, k, CellKind::kFloor);
    g.set(11, k, CellKind::kFloor);
    g.set(k, 9, CellKind::kFloor);
    g.set(k, 11, CellKind::kFloor);
  }
  for (int k = 13; k <= 18; ++k) {
    g.set(9, k, CellKind::kFloor);
    g.set(11, k, CellKind::kFloor);
    g.set(k, 9, CellKind::kFloor);
    g.set(k, 11, CellKind::kFloor);
  }
  s.grid = std::move(g);
  s.pose = Pose{10, 10, random_heading(trial)};
  s.flags = f;
}

StepOutcome step_ram(EpisodeState& s, Action a) {
  const Move m = move_agent(s, a);
  auto& f = std::get<RadialFlags>(s.flags);
  double reward = s.spec().reward.step_penalty;
  const int arm = m.entered ? radial_arm_at(s.pose.x, s.pose.y) : -1;
  if (arm >= 0) {
    const auto bit = static_cast<std::uint8_t>(1u << arm);
    if (f.visited_arms & bit) {
      f.working_memory_error = true;
    } else {
      f.visited_arms |= bit;
      if (f.baited_arms & bit) {
        ++f.baits_collected;
        reward = s.spec().reward.goal_reward;
      }
    }
  }
  if (f.baits_collected == kRadialBaited) return finish(s, reward, true, !f.working_memory_error);
  return finish(s, reward, false, false);
}

// --- Delayed non-match to sample ---------------------------------------------

void init_dnms(EpisodeState& s, Rng& session, Rng& trial) {
  (void)session;
  DnmsFlags f;
  f.sample_symbol = static_cast<int>(trial.below(kDnmsAlphabetSize));
  f.novel_symbol = static_cast<int>(trial.below(kDnmsAlphabetSize - 1));
  if (f.novel_symbol >= f.sample_symbol) ++f.novel_symbol;
  f.novel_on_left = trial.below(2) == 0;

  s.grid = walled_room(kDnmsWidth, kDnmsHeight, CellKind::kFloor);
  s.grid.set(kDnmsSampleCell.first, kDnmsSampleCell.second, CellKind::kSymbol,
             static_cast<std::uint8_t>(f.sample_symbol));
  s.pose = kDnmsStart;
  s.flags = f;
}

StepOutcome step_dnms(EpisodeState& s, Action a) {
  auto& f = std::get<DnmsFlags>(s.flags);
  // The agent is held in place while the delay runs; the step still counts.
  Move m{s.pose};
  if (f.phase == DnmsPhase::kDelay) {
    ++s.step;
  } else {
    m = move_agent(s, a);
  }
  switch (f.phase) {
    case DnmsPhase::kSample:
      if (m.entered && here(s).kind == CellKind::kSymbol) {
        s.grid.set(s.pose.x, s.pose.y, CellKind::kFloor);
        f.phase = DnmsPhase::kDelay;
        f.delay_remaining = kDnmsDelaySteps;
      }
      break;
    case DnmsPhase::kDelay:
      if (--f.delay_remaining == 0) {
        f.phase = DnmsPhase::kChoice;
        const auto left = static_cast<std::uint8_t>(f.novel_on_left ? f.novel_symbol : f.sample_symbol);
        const auto right = static_cast<std::uint8_t>(f.novel_on_left ? f.sample_symbol : f.novel_symbol);
        s.grid.set(kDnmsChoiceCells[0].first, kDnmsChoiceCells[0].second, CellKind::kSymbol, left);
        s.grid.set(kDnmsChoiceCells[1].first, kDnmsChoiceCells[1].second, CellKind::kSymbol, right);
      }
      break;
    case DnmsPhase::kChoice:
      if (m.entered && here(s).kind == CellKind::kSymbol) {
        const bool non_match = here(s).id == f.novel_symbol;
        return finish(s, non_match ? s.spec().reward.goal_reward : 0.0, true, non_match);
      }
      break;
  }
  return finish(s, s.spec().reward.step_penalty, false, false);
}

// --- Operant chamber ---------------------------------------------------------

void init_operant(EpisodeState& s, Rng& session, Rng& trial) {
  (void)trial;
  OperantFlags f;
  f.correct_lever = static_cast<int>(session.below(2));
  s.grid = walled_room(kOperantWidth, kOperantHeight, CellKind::kFloor);
  s.grid.set(kOperantLevers[0].first, kOperantLevers[0].second, CellKind::kLeverA);
  s.grid.set(kOperantLevers[1].first, kOperantLevers[1].second, CellKind::kLeverB);
  s.grid.set(kOperantMagazine.first, kOperantMagazine.second, CellKind::kMagazine);
  s.pose = kOperantStart;
  s.flags = f;
}

StepOutcome step_operant(EpisodeState& s, Action a) {
  const Move m = move_agent(s, a);
  auto& f = std::get<OperantFlags>(s.flags);
  if (m.bumped) {
    const CellKind lever = f.correct_lever == 0 ? CellKind::kLeverA : CellKind::kLeverB;
    if (s.grid.cell_or_wall(m.bump_x, m.bump_y).kind == lever && !f.reward_pending) {
      f.reward_pending = true;
      // The pellet drops into the magazine where it can be seen.
      s.grid.set(kOperantMagazine.first, kOperantMagazine.second, CellKind::kMagazine, 1);
    }
  }
  // A pellet dropped while the agent sits in the magazine is eaten at once.
  if (here(s).kind == CellKind::kMagazine && f.reward_pending)
    return finish(s, s.spec().reward.goal_reward, true, true);
  return finish(s, s.spec().reward.step_penalty, false, false);
}

// --- Shuttle box ---------------------------------------------------------------

namespace {

void update_shuttle_timers(const EpisodeState& s, ShuttleFlags& f) {
  f.cs_active = s.step >= f.cs_onset;
  f.cs_countdown = f.cs_active ? std::max(0, f.cs_onset + kShuttleCsWindow - s.step) : kShuttleCsWindow;
  f.us_active = s.step >= f.cs_onset + kShuttleCsWindow;
}

}  // namespace

void init_shuttle(EpisodeState& s, Rng& session, Rng& trial) {
  (void)session;
  ShuttleFlags f;
  f.cs_onset = trial.range(kShuttleCsOnsetMin, kShuttleCsOnsetMax);
  f.compartment = static_cast<int>(trial.below(2));

  GridMap g = walled_room(kShuttleWidth, kShuttleHeight, CellKind::kFloor);
  for (int y = 1; y < kShuttleHeight - 1; ++y)
    if (y != kShuttleDoorY) g.set(kShuttleDivider, y, CellKind::kWall);
  s.grid = std::move(g);
  const int x = f.compartment == 0 ? kShuttleDivider - 1 : kShuttleDivider + 1;
  s.pose = Pose{x, kShuttleDoorY, random_heading(trial)};
  update_shuttle_timers(s, f);
  s.flags = f;
}

StepOutcome step_shuttle(EpisodeState& s, Action a) {
  auto& f = std::get<ShuttleFlags>(s.flags);
  const int t = s.step;  // index of the action being executed
  move_agent(s, a);
  const int now = shuttle_compartment_at(s.pose.x);
  const bool crossed = now >= 0 && now != f.compartment;
  if (now >= 0) f.compartment = now;

  const bool cs_on = t >= f.cs_onset;
  const bool us_on = t >= f.cs_onset + kShuttleCsWindow;
  StepOutcome o;
  if (crossed && cs_on && !us_on) {
    f.crossing_step = t;
    o = finish(s, s.spec().reward.goal_reward, true, true);
  } else if (crossed && us_on) {
    o = finish(s, 0.0, true, false);  // escape, not avoidance
  } else {
    o = finish(s, us_on ? s.spec().reward.aversive_penalty : s.spec().reward.step_penalty, false, false);
  }
  update_shuttle_timers(s, f);
  return o;
}

// --- Conditioned place preference --------------------------------------------

void init_cpp(EpisodeState& s, Rng& session, Rng& trial) {
  PlaceFlags f;
  f.paired_chamber = static_cast<int>(session.below(2));
  f.phase = s.trial_index < kPlaceConditioningTrials ? PlacePhase::kConditioning : PlacePhase::kTest;

  GridMap g(kPlaceWidth, kPlaceHeight);
  for (int y = 1; y < kPlaceHeight - 1; ++y) {
    for (int x = 1; x <= 7; ++x) g.set(x, y, CellKind::kChamberA);
    for (int x = 8; x <= 14; ++x) g.set(x, y, CellKind::kChamberB);
  }
  // Partition with a three-row opening in the middle.
  for (int y : {1, 2, 6, 7}) {
    g.set(7, y, CellKind::kWall);
    g.set(8, y, CellKind::kWall);
  }
  s.grid = std::move(g);
  const int x = trial.below(2) == 0 ? 7 : 8;
  s.pose = Pose{x, 4, trial.below(2) == 0 ? Heading::kNorth : Heading::kSouth};
  s.flags = f;
}

StepOutcome step_cpp(EpisodeState& s, Action a) {
  move_agent(s, a);
  auto& f = std::get<PlaceFlags>(s.flags);
  const int chamber = here(s).kind == CellKind::kChamberA ? 0 : 1;
  const bool paired = chamber == f.paired_chamber;
  (paired ? f.steps_in_paired : f.steps_in_unpaired)++;
  const double reward = f.phase == PlacePhase::kConditioning && paired ? kPlacePairingReward : 0.0;

  bool success;
  if (f.phase == PlacePhase::kConditioning) {
    success = s.cumulative_reward + reward > 0.0;
  } else {
    const int total = f.steps_in_paired + f.steps_in_unpaired;
    // paired / total > 0.55, kept in integers so exactly 55% is a failure.
    success = 20 * f.steps_in_paired > 11 * total;
  }
  return finish(s, reward, false, success);
}

}  // namespace cheesebench::paradigms
