#include "cheesebench/grid.hpp"

#include <cctype>

namespace cheesebench {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::kForward: return "FORWARD";
    case Action::kRotateLeft: return "ROTATE_LEFT";
    case Action::kRotateRight: return "ROTATE_RIGHT";
    case Action::kStay: return "STAY";
  }
  return "STAY";
}

std::optional<Action> parse_action(std::string_view token) {
  std::string upper(token);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Action a : kAllActions) {
    if (upper == to_string(a)) return a;
  }
  return std::nullopt;
}

Heading turn_left(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 3) % 4); }
Heading turn_right(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 1) % 4); }

int dx(Heading h) {
  switch (h) {
    case Heading::kEast: return 1;
    case Heading::kWest: return -1;
    default: return 0;
  }
}

int dy(Heading h) {
  switch (h) {
    case Heading::kNorth: return -1;
    case Heading::kSouth: return 1;
    default: return 0;
  }
}

char heading_glyph(Heading h) {
  static constexpr char kGlyphs[] = {'^', '>', 'v', '<'};
  return kGlyphs[static_cast<int>(h)];
}

std::optional<Heading> heading_from_glyph(char c) {
  switch (c) {
    case '^': return Heading::kNorth;
    case '>': return Heading::kEast;
    case 'v': return Heading::kSouth;
    case '<': return Heading::kWest;
    default: return std::nullopt;
  }
}

bool is_traversable(CellKind k) {
  switch (k) {
    case CellKind::kWall:
    case CellKind::kLeverA:
    case CellKind::kLeverB:
    case CellKind::kLandmark:
      return false;
    default:
      return true;
  }
}

GridMap::GridMap(int width, int height, Cell fill)
    : width_(width), height_(height), cells_(static_cast<std::size_t>(width) * height, fill) {}

bool GridMap::border_is_walled() const {
  for (int x = 0; x < width_; ++x) {
    if (at(x, 0).kind != CellKind::kWall || at(x, height_ - 1).kind != CellKind::kWall) return false;
  }
  for (int y = 0; y < height_; ++y) {
    if (at(0, y).kind != CellKind::kWall || at(width_ - 1, y).kind != CellKind::kWall) return false;
  }
  return true;
}

Pose apply_action(const Pose& pose, Action action, const GridMap& grid) {
  Pose next = pose;
  switch (action) {
    case Action::kRotateLeft: next.heading = turn_left(pose.heading); break;
    case Action::kRotateRight: next.heading = turn_right(pose.heading); break;
    case Action::kStay: break;
    case Action::kForward: {
      auto [tx, ty] = ahead_of(pose);
      if (grid.traversable(tx, ty)) {
        next.x = tx;
        next.y = ty;
      }
      break;
    }
  }
  return next;
}

}  // namespace cheesebench
