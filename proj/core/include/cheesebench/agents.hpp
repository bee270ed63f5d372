#pragma once

#include <deque>
#include <istream>
#include <optional>
#include <ostream>

#include "cheesebench/agent.hpp"
#include "cheesebench/render.hpp"
#include "cheesebench/rng.hpp"

namespace cheesebench {

/// k actions drawn i.i.d. uniform over the four actions, empty learnings.
AgentTurn random_turn(int k, Rng& rng);

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  std::string_view name() const override { return "random"; }
  std::string act(const TurnRequest& request) override;

 private:
  Rng rng_;
};

/// Shortest plan in (cell, heading) space using FORWARD / ROTATE_LEFT /
/// ROTATE_RIGHT to the nearest GOAL cell. nullopt if no goal is reachable.
std::optional<std::vector<Action>> oracle_plan(const GridMap& grid, const Pose& start);
/// First <= k actions of the plan for a top-down observation, or k STAYs when
/// no goal is visible. Throws ParseError on anything that is not a top-down render.
AgentTurn oracle_turn(std::string_view observation, int k);

class OracleAgent final : public Agent {
 public:
  std::string_view name() const override { return "oracle"; }
  std::string act(const TurnRequest& request) override;
};

/// Replays canned responses in order; after the last one it repeats the last
/// (or cycles, if requested). Used for tests and for trace replay.
class ScriptedAgent final : public Agent {
 public:
  explicit ScriptedAgent(std::vector<std::string> responses, bool cycle = false);
  std::string_view name() const override { return "scripted"; }
  std::string act(const TurnRequest& request) override;
  std::size_t calls() const { return calls_; }

 private:
  std::vector<std::string> responses_;
  bool cycle_;
  std::size_t calls_ = 0;
};

/// Keyboard mapping for play mode: w / up-arrow FORWARD, a / left ROTATE_LEFT,
/// d / right ROTATE_RIGHT, s / down / space STAY, q quits.
enum class KeyCommand : std::uint8_t { kAction, kQuit, kIgnore };
struct KeyResult {
  KeyCommand command = KeyCommand::kIgnore;
  Action action = Action::kStay;
};
/// Consumes one key (or one escape sequence) from `in`. EOF reads as quit.
KeyResult read_key(std::istream& in);

class InteractiveAgent final : public Agent {
 public:
  InteractiveAgent(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string_view name() const override { return "interactive"; }
  std::string act(const TurnRequest& request) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace cheesebench
