#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "cheesebench/grid.hpp"
#include "cheesebench/paradigm.hpp"
#include "cheesebench/rng.hpp"

namespace cheesebench {

struct MwmFlags {
  int start_index = 0;
  int platform_quadrant = 0;

  friend bool operator==(const MwmFlags&, const MwmFlags&) = default;
};

struct BarnesFlags {
  int target_hole = 0;

  friend bool operator==(const BarnesFlags&, const BarnesFlags&) = default;
};

struct StarFlags {
  int goal_arm = 0;
  int start_arm = 0;

  friend bool operator==(const StarFlags&, const StarFlags&) = default;
};

struct TMazeFlags {
  int rewarded_arm = 0;  // 0 = left, 1 = right

  friend bool operator==(const TMazeFlags&, const TMazeFlags&) = default;
};

struct RadialFlags {
  std::uint8_t baited_arms = 0;   // bitmask over arms 0..7, popcount 4
  std::uint8_t visited_arms = 0;  // bitmask of arm ends entered at least once
  int baits_collected = 0;
  bool working_memory_error = false;

  friend bool operator==(const RadialFlags&, const RadialFlags&) = default;
};

enum class DnmsPhase : std::uint8_t { kSample, kDelay, kChoice };

struct DnmsFlags {
  DnmsPhase phase = DnmsPhase::kSample;
  int sample_symbol = 0;
  int novel_symbol = 1;
  bool novel_on_left = false;
  int delay_remaining = 0;

  friend bool operator==(const DnmsFlags&, const DnmsFlags&) = default;
};

struct OperantFlags {
  int correct_lever = 0;  // 0 = A, 1 = B
  bool reward_pending = false;

  friend bool operator==(const OperantFlags&, const OperantFlags&) = default;
};

struct ShuttleFlags {
  int cs_onset = 0;           // step index at which the CS switches on
  bool cs_active = false;
  int cs_countdown = 0;       // steps left before the US
  bool us_active = false;
  int compartment = 0;        // 0 = left, 1 = right (last compartment occupied)
  int crossing_step = -1;     // step index of the successful crossing, -1 if none

  friend bool operator==(const ShuttleFlags&, const ShuttleFlags&) = default;
};

enum class PlacePhase : std::uint8_t { kConditioning, kTest };

struct PlaceFlags {
  PlacePhase phase = PlacePhase::kConditioning;
  int paired_chamber = 0;  // 0 = A (':'), 1 = B ('.')
  int steps_in_paired = 0;
  int steps_in_unpaired = 0;

  friend bool operator==(const PlaceFlags&, const PlaceFlags&) = default;
};

using ParadigmFlags = std::variant<MwmFlags, BarnesFlags, StarFlags, TMazeFlags, RadialFlags, DnmsFlags,
                                   OperantFlags, ShuttleFlags, PlaceFlags>;

struct StepOutcome {
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  bool success = false;

  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

struct EpisodeState {
  Paradigm paradigm = Paradigm::kMorrisWaterMaze;
  GridMap grid;
  Pose pose;
  int step = 0;
  int max_steps = 0;
  int trial_index = 0;
  std::uint64_t seed = 0;
  Rng rng;
  ParadigmFlags flags;
  double last_reward = 0.0;
  double cumulative_reward = 0.0;
  bool done = false;
  bool success = false;

  const ParadigmSpec& spec() const { return spec_of(paradigm); }

  friend bool operator==(const EpisodeState&, const EpisodeState&) = default;
};

/// Fresh trial. Layout, start pose and every randomized element are a pure
/// function of (seed, paradigm, trial_index). Session-level choices (platform
/// quadrant, baited arms, correct lever, ...) depend on (seed, paradigm) only.
EpisodeState reset_trial(const ParadigmSpec& spec, int trial_index, std::uint64_t seed);
/// Throws ConfigError for an unknown paradigm name.
EpisodeState reset_trial(std::string_view paradigm_name, int trial_index, std::uint64_t seed);

/// One step: moves the agent, applies the paradigm rule and the step budget.
/// Throws UsageError if the trial already ended.
StepOutcome advance(EpisodeState& state, Action action);

/// Seeds used for session-level and per-trial randomness.
std::uint64_t session_seed(std::uint64_t master, Paradigm p);
std::uint64_t trial_seed(std::uint64_t master, Paradigm p, int trial_index);

}  // namespace cheesebench
