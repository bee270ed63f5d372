#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace cheesebench {

enum class Paradigm : std::uint8_t {
  kMorrisWaterMaze,
  kBarnesMaze,
  kStarMaze,
  kTMaze,
  kRadialArmMaze,
  kDnmsTask,
  kOperantChamber,
  kShuttleBox,
  kPlacePreference,
};

inline constexpr std::size_t kParadigmCount = 9;

enum class CognitiveDimension : std::uint8_t {
  kSpatialLearning,
  kEgocentricNavigation,
  kWorkingMemory,
  kInstrumentalConditioning,
  kAvoidanceLearning,
  kAssociativeLearning,
};

inline constexpr std::size_t kDimensionCount = 6;

std::string_view to_string(CognitiveDimension d);
std::optional<CognitiveDimension> dimension_from_name(std::string_view name);

struct RewardRule {
  double goal_reward = 1.0;
  double step_penalty = 0.0;      // <= 0, charged on every non-terminal step
  double aversive_penalty = -1.0; // < step_penalty
};

struct ParadigmSpec {
  Paradigm id;
  std::string_view name;
  int trials;
  int max_steps;
  CognitiveDimension dimension;
  bool goal_visible;  // a 'G' cell appears in the rendered map
  RewardRule reward;
  /// Approximate asymptotic rodent success rate (reference anchor only).
  double rodent_reference;
};

/// The nine paradigms, in canonical order.
std::span<const ParadigmSpec, kParadigmCount> all_paradigms();
const ParadigmSpec& spec_of(Paradigm p);
std::optional<Paradigm> paradigm_from_name(std::string_view name);
/// Throws ConfigError listing the valid names.
const ParadigmSpec& require_paradigm(std::string_view name);

/// Reward per step spent in the paired chamber during place-preference conditioning.
inline constexpr double kPlacePairingReward = 0.1;
/// Place-preference test trials succeed above this fraction of steps in the paired chamber.
inline constexpr double kPlacePreferenceThreshold = 0.55;
inline constexpr int kPlaceConditioningTrials = 8;
inline constexpr int kDnmsDelaySteps = 10;
inline constexpr int kDnmsAlphabetSize = 4;
inline constexpr int kShuttleCsWindow = 10;
inline constexpr int kShuttleCsOnsetMin = 5;
inline constexpr int kShuttleCsOnsetMax = 15;
inline constexpr int kRadialArms = 8;
inline constexpr int kRadialBaited = 4;
inline constexpr int kBarnesHoles = 12;
inline constexpr int kStarArms = 5;

}  // namespace cheesebench
