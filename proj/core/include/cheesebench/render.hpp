#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cheesebench/episode.hpp"

namespace cheesebench {

enum class RenderMode : std::uint8_t { kAscii2d, kAscii2dFpv, kAscii3d };

std::string_view to_string(RenderMode m);
/// Accepts "ascii_2d", "ascii_2d_fpv", "ascii_3d" in any case.
std::optional<RenderMode> render_mode_from_name(std::string_view name);

struct Observation {
  std::string text;

  friend bool operator==(const Observation&, const Observation&) = default;
};

inline constexpr int kDefaultFpvRadius = 5;
inline constexpr int kDefaultViewDepth = 6;
inline constexpr int kViewColumns = 7;

/// Palette glyph. CHAMBER_B shares '.' with FLOOR (they never share a grid).
char glyph_of(const Cell& c);

// Every mode renders a grid block followed by status lines:
//   STEP n / max
//   REWARD r        (reward of the last step, two decimals)
//   ON g            (glyph of the cell under the agent)
//   CS ON           (shuttle box only, while the warning signal is active)
Observation render_topdown(const EpisodeState& s);
Observation render_fpv(const EpisodeState& s, int radius = kDefaultFpvRadius);
Observation render_3d(const EpisodeState& s, int depth = kDefaultViewDepth);
Observation render(const EpisodeState& s, RenderMode mode);

struct ParsedTopdown {
  GridMap grid;
  Pose pose;
  int step = 0;
  int max_steps = 0;
  double last_reward = 0.0;
  bool cs_on = false;
};

/// Inverse of render_topdown. '.' reads as FLOOR unless `place_preference`
/// is set, in which case it reads as CHAMBER_B. Throws ParseError.
ParsedTopdown parse_topdown(std::string_view text, bool place_preference = false);

}  // namespace cheesebench
