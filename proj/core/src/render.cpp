#include "cheesebench/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <vector>

#include "cheesebench/errors.hpp"

namespace cheesebench {

std::string_view to_string(RenderMode m) {
  switch (m) {
    case RenderMode::kAscii2d: return "ascii_2d";
    case RenderMode::kAscii2dFpv: return "ascii_2d_fpv";
    case RenderMode::kAscii3d: return "ascii_3d";
  }
  return "?";
}

std::optional<RenderMode> render_mode_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (RenderMode m : {RenderMode::kAscii2d, RenderMode::kAscii2dFpv, RenderMode::kAscii3d})
    if (lower == to_string(m)) return m;
  return std::nullopt;
}

char glyph_of(const Cell& c) {
  switch (c.kind) {
    case CellKind::kWall: return '#';
    case CellKind::kFloor: return '.';
    case CellKind::kWater: return '~';
    case CellKind::kGoal: return 'G';
    case CellKind::kHole: return 'O';
    case CellKind::kLeverA: return 'A';
    case CellKind::kLeverB: return 'B';
    case CellKind::kMagazine: return c.id ? '*' : 'M';
    case CellKind::kLandmark: return static_cast<char>('1' + c.id);
    case CellKind::kChamberA: return ':';
    case CellKind::kChamberB: return '.';
    case CellKind::kSymbol: return static_cast<char>('a' + c.id);
  }
  return '?';
}

namespace {

std::optional<Cell> cell_from_glyph(char g, bool place_preference) {
  switch (g) {
    case '#': return Cell{CellKind::kWall};
    case '.': return Cell{place_preference ? CellKind::kChamberB : CellKind::kFloor};
    case '~': return Cell{CellKind::kWater};
    case 'G': return Cell{CellKind::kGoal};
    case 'O': return Cell{CellKind::kHole};
    case 'A': return Cell{CellKind::kLeverA};
    case 'B': return Cell{CellKind::kLeverB};
    case 'M': return Cell{CellKind::kMagazine};
    case '*': return Cell{CellKind::kMagazine, 1};
    case ':': return Cell{CellKind::kChamberA};
    default: break;
  }
  if (g >= '1' && g <= '9') return Cell{CellKind::kLandmark, static_cast<std::uint8_t>(g - '1')};
  if (g >= 'a' && g <= 'z') return Cell{CellKind::kSymbol, static_cast<std::uint8_t>(g - 'a')};
  return std::nullopt;
}

void append_status(std::string& out, const EpisodeState& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "STEP %d / %d\nREWARD %.2f\n", s.step, s.max_steps, s.last_reward);
  out += buf;
  out += "ON ";
  out += glyph_of(s.grid.at(s.pose.x, s.pose.y));
  out += '\n';
  if (const auto* f = std::get_if<ShuttleFlags>(&s.flags); f && f->cs_active) out += "CS ON\n";
}

}  // namespace

Observation render_topdown(const EpisodeState& s) {
  std::string out;
  out.reserve(static_cast<std::size_t>((s.grid.width() + 1) * s.grid.height() + 64));
  for (int y = 0; y < s.grid.height(); ++y) {
    for (int x = 0; x < s.grid.width(); ++x) {
      out += (x == s.pose.x && y == s.pose.y) ? heading_glyph(s.pose.heading) : glyph_of(s.grid.at(x, y));
    }
    out += '\n';
  }
  append_status(out, s);
  return {std::move(out)};
}

Observation render_fpv(const EpisodeState& s, int radius) {
  if (radius < 1) throw UsageError("FPV radius must be >= 1");
  const Heading h = s.pose.heading;
  const Heading right = turn_right(h);
  std::string out;
  for (int r = 0; r <= 2 * radius; ++r) {
    const int ahead = radius - r;
    for (int c = 0; c <= 2 * radius; ++c) {
      const int side = c - radius;
      if (ahead == 0 && side == 0) {
        out += '^';
        continue;
      }
      const int x = s.pose.x + ahead * dx(h) + side * dx(right);
      const int y = s.pose.y + ahead * dy(h) + side * dy(right);
      out += glyph_of(s.grid.cell_or_wall(x, y));
    }
    out += '\n';
  }
  append_status(out, s);
  return {std::move(out)};
}

namespace {

constexpr int kViewRows = 7;
constexpr int kHorizon = kViewRows / 2;
constexpr int kColumnWidth = 3;

char shade(int distance) {
  if (distance <= 1) return '@';
  if (distance == 2) return '#';
  if (distance <= 4) return '+';
  return '-';
}

bool is_feature(CellKind k) {
  switch (k) {
    case CellKind::kGoal:
    case CellKind::kHole:
    case CellKind::kLeverA:
    case CellKind::kLeverB:
    case CellKind::kMagazine:
    case CellKind::kLandmark:
    case CellKind::kSymbol:
      return true;
    default:
      return false;
  }
}

}  // namespace

Observation render_3d(const EpisodeState& s, int depth) {
  if (depth < 1) throw UsageError("3D view depth must be >= 1");
  const Heading h = s.pose.heading;
  const Heading right = turn_right(h);
  constexpr int half = kViewColumns / 2;

  std::vector<std::string> rows(kViewRows, std::string(kViewColumns * kColumnWidth, ' '));
  for (int col = 0; col < kViewColumns; ++col) {
    const int lateral_scale = col - half;
    int hit = depth + 1;  // no hit within depth
    char feature = 0;
    for (int d = 1; d <= depth; ++d) {
      const int side = static_cast<int>(std::lround(static_cast<double>(lateral_scale) * d / half));
      const int x = s.pose.x + d * dx(h) + side * dx(right);
      const int y = s.pose.y + d * dy(h) + side * dy(right);
      const Cell c = s.grid.cell_or_wall(x, y);
      if (c.kind == CellKind::kWall) {
        hit = d;
        break;
      }
      if (is_feature(c.kind)) {
        hit = d;
        feature = glyph_of(c);
        break;
      }
    }
    const int span = std::max(0, kHorizon + 1 - hit);
    for (int r = 0; r < kViewRows; ++r) {
      char g;
      if (r == kHorizon && feature) {
        g = feature;
      } else if (std::abs(r - kHorizon) <= span) {
        g = shade(hit);
      } else {
        g = r < kHorizon ? ' ' : '_';
      }
      for (int i = 0; i < kColumnWidth; ++i) rows[r][col * kColumnWidth + i] = g;
    }
  }
  std::string out;
  for (const auto& r : rows) out += r + '\n';
  append_status(out, s);
  return {std::move(out)};
}

Observation render(const EpisodeState& s, RenderMode mode) {
  switch (mode) {
    case RenderMode::kAscii2d: return render_topdown(s);
    case RenderMode::kAscii2dFpv: return render_fpv(s);
    case RenderMode::kAscii3d: return render_3d(s);
  }
  return render_topdown(s);
}

ParsedTopdown parse_topdown(std::string_view text, bool place_preference) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }

  ParsedTopdown out;
  std::size_t first_status = 0;
  while (first_status < lines.size() && !lines[first_status].starts_with("STEP ")) ++first_status;
  if (first_status == 0) throw ParseError("observation has no grid block");
  if (first_status == lines.size()) throw ParseError("observation has no STEP line");

  const int height = static_cast<int>(first_status);
  const int width = static_cast<int>(lines[0].size());
  out.grid = GridMap(width, height);
  bool found_agent = false;
  for (int y = 0; y < height; ++y) {
    if (static_cast<int>(lines[y].size()) != width) throw ParseError("ragged grid line " + std::to_string(y));
    for (int x = 0; x < width; ++x) {
      const char g = lines[y][x];
      if (auto hd = heading_from_glyph(g)) {
        if (found_agent) throw ParseError("more than one agent glyph");
        found_agent = true;
        out.pose = Pose{x, y, *hd};
        out.grid.set(x, y, place_preference ? CellKind::kChamberB : CellKind::kFloor);
        continue;
      }
      const auto cell = cell_from_glyph(g, place_preference);
      if (!cell) throw ParseError(std::string("unknown glyph '") + g + "'");
      out.grid.at(x, y) = *cell;
    }
  }
  if (!found_agent) throw ParseError("no agent glyph");

  for (std::size_t i = first_status; i < lines.size(); ++i) {
    const std::string line(lines[i]);
    if (line.starts_with("STEP ")) {
      if (std::sscanf(line.c_str(), "STEP %d / %d", &out.step, &out.max_steps) != 2)
        throw ParseError("bad STEP line: " + line);
    } else if (line.starts_with("REWARD ")) {
      if (std::sscanf(line.c_str(), "REWARD %lf", &out.last_reward) != 1) throw ParseError("bad REWARD line: " + line);
    } else if (line.starts_with("ON ") && line.size() == 4) {
      const auto cell = cell_from_glyph(line[3], place_preference);
      if (!cell) throw ParseError("bad ON line: " + line);
      out.grid.at(out.pose.x, out.pose.y) = *cell;
    } else if (line == "CS ON") {
      out.cs_on = true;
    } else if (!line.empty()) {
      throw ParseError("unknown status line: " + line);
    }
  }
  return out;
}

}  // namespace cheesebench
