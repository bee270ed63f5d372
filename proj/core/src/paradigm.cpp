#include "cheesebench/paradigm.hpp"

#include <cctype>
#include <string>

#include "cheesebench/errors.hpp"

namespace cheesebench {

namespace {

using enum CognitiveDimension;

constexpr RewardRule kPlain{1.0, 0.0, -1.0};
constexpr RewardRule kAversiveSteps{1.0, -0.01, -1.0};

// Trials and steps per trial are the evaluation budgets of the benchmark.
constexpr std::array<ParadigmSpec, kParadigmCount> kSpecs = {{
    {Paradigm::kMorrisWaterMaze, "MorrisWaterMaze", 20, 500, kSpatialLearning, true, kPlain, 0.85},
    {Paradigm::kBarnesMaze, "BarnesMaze", 16, 300, kSpatialLearning, false, kAversiveSteps, 0.80},
    {Paradigm::kStarMaze, "StarMaze", 40, 300, kSpatialLearning, true, kPlain, 0.80},
    {Paradigm::kTMaze, "TMaze", 40, 200, kEgocentricNavigation, false, kPlain, 0.80},
    {Paradigm::kRadialArmMaze, "RadialArmMaze", 20, 400, kWorkingMemory, false, kPlain, 0.70},
    {Paradigm::kDnmsTask, "DNMSTask", 100, 50, kWorkingMemory, false, kPlain, 0.80},
    {Paradigm::kOperantChamber, "OperantChamber", 50, 100, kInstrumentalConditioning, false, kPlain, 0.90},
    {Paradigm::kShuttleBox, "ShuttleBox", 40, 50, kAvoidanceLearning, false, kPlain, 0.70},
    {Paradigm::kPlacePreference, "PlacePreference", 12, 300, kAssociativeLearning, false, kPlain, 0.75},
}};

constexpr std::array<std::string_view, kDimensionCount> kDimensionNames = {
    "Spatial Learning",          "Egocentric Navigation", "Working Memory",
    "Instrumental Conditioning", "Avoidance Learning",    "Associative Learning",
};

}  // namespace

std::string_view to_string(CognitiveDimension d) { return kDimensionNames[static_cast<std::size_t>(d)]; }

std::optional<CognitiveDimension> dimension_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
    if (kDimensionNames[i] == name) return static_cast<CognitiveDimension>(i);
  }
  return std::nullopt;
}

std::span<const ParadigmSpec, kParadigmCount> all_paradigms() { return kSpecs; }

const ParadigmSpec& spec_of(Paradigm p) { return kSpecs[static_cast<std::size_t>(p)]; }

std::optional<Paradigm> paradigm_from_name(std::string_view name) {
  // Short names used on the command line.
  static constexpr std::array<std::pair<std::string_view, Paradigm>, 9> kAliases = {{
      {"mwm", Paradigm::kMorrisWaterMaze},   {"barnes", Paradigm::kBarnesMaze},
      {"star", Paradigm::kStarMaze},         {"tmaze", Paradigm::kTMaze},
      {"ram", Paradigm::kRadialArmMaze},     {"dnms", Paradigm::kDnmsTask},
      {"operant", Paradigm::kOperantChamber}, {"shuttle", Paradigm::kShuttleBox},
      {"cpp", Paradigm::kPlacePreference},
  }};
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const auto& s : kSpecs) {
    std::string spec_lower;
    for (char c : s.name) spec_lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (spec_lower == lower) return s.id;
  }
  for (const auto& [alias, p] : kAliases)
    if (alias == lower) return p;
  return std::nullopt;
}

const ParadigmSpec& require_paradigm(std::string_view name) {
  if (auto p = paradigm_from_name(name)) return spec_of(*p);
  std::string valid;
  for (const auto& s : kSpecs) {
    if (!valid.empty()) valid += ", ";
    valid += s.name;
  }
  throw ConfigError("unknown environment '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace cheesebench
