#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cheesebench {

enum class Action : std::uint8_t { kForward = 0, kRotateLeft = 1, kRotateRight = 2, kStay = 3 };

/// Fixed order used for every tie-break in the project.
inline constexpr std::array<Action, 4> kAllActions = {Action::kForward, Action::kRotateLeft,
                                                      Action::kRotateRight, Action::kStay};

std::string_view to_string(Action a);
/// Case-insensitive; accepts exactly the four canonical names.
std::optional<Action> parse_action(std::string_view token);

enum class Heading : std::uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

Heading turn_left(Heading h);
Heading turn_right(Heading h);
int dx(Heading h);
int dy(Heading h);
char heading_glyph(Heading h);
std::optional<Heading> heading_from_glyph(char c);

// y grows downwards (row index), x grows to the right (column index).
struct Pose {
  int x = 0;
  int y = 0;
  Heading heading = Heading::kNorth;

  friend bool operator==(const Pose&, const Pose&) = default;
};

enum class CellKind : std::uint8_t {
  kWall,
  kFloor,
  kWater,
  kGoal,
  kHole,
  kLeverA,
  kLeverB,
  kMagazine,
  kLandmark,
  kChamberA,
  kChamberB,
  kSymbol,
};

struct Cell {
  CellKind kind = CellKind::kWall;
  std::uint8_t id = 0;  // landmark / symbol index, 1 for a baited magazine, 0 otherwise

  friend bool operator==(const Cell&, const Cell&) = default;
};

bool is_traversable(CellKind k);

class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, Cell fill = Cell{});

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  const Cell& at(int x, int y) const { return cells_[index(x, y)]; }
  Cell& at(int x, int y) { return cells_[index(x, y)]; }
  void set(int x, int y, CellKind kind, std::uint8_t id = 0) { cells_[index(x, y)] = Cell{kind, id}; }

  /// Off-grid cells read as walls.
  Cell cell_or_wall(int x, int y) const { return in_bounds(x, y) ? at(x, y) : Cell{}; }
  bool traversable(int x, int y) const { return in_bounds(x, y) && is_traversable(at(x, y).kind); }

  /// True iff every cell on the outer ring is a wall.
  bool border_is_walled() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<Cell> cells_;
};

/// Egocentric kinematics. Blocked FORWARD leaves the pose unchanged.
Pose apply_action(const Pose& pose, Action action, const GridMap& grid);

/// Cell directly ahead of the pose (may be off-grid).
inline std::pair<int, int> ahead_of(const Pose& p) { return {p.x + dx(p.heading), p.y + dy(p.heading)}; }

}  // namespace cheesebench
