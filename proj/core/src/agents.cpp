#include "cheesebench/agents.hpp"

#include <queue>

#include "cheesebench/errors.hpp"

namespace cheesebench {

AgentTurn random_turn(int k, Rng& rng) {
  AgentTurn t;
  t.actions.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t.actions.push_back(kAllActions[rng.below(4)]);
  return t;
}

std::string RandomAgent::act(const TurnRequest& request) { return format_turn(random_turn(request.k, rng_)); }

// --- oracle --------------------------------------------------------------------

std::optional<std::vector<Action>> oracle_plan(const GridMap& grid, const Pose& start) {
  const int w = grid.width();
  const int h = grid.height();
  auto index = [w](const Pose& p) { return (static_cast<std::size_t>(p.y) * w + p.x) * 4 + static_cast<int>(p.heading); };

  struct Back {
    std::size_t parent = 0;
    Action action = Action::kStay;
    bool seen = false;
  };
  std::vector<Back> back(static_cast<std::size_t>(w) * h * 4);
  std::queue<Pose> frontier;
  back[index(start)].seen = true;
  frontier.push(start);

  constexpr std::array<Action, 3> kMoves = {Action::kForward, Action::kRotateLeft, Action::kRotateRight};
  while (!frontier.empty()) {
    const Pose p = frontier.front();
    frontier.pop();
    if (grid.at(p.x, p.y).kind == CellKind::kGoal) {
      std::vector<Action> plan;
      for (std::size_t i = index(p); i != index(start); i = back[i].parent) plan.push_back(back[i].action);
      return std::vector<Action>(plan.rbegin(), plan.rend());
    }
    for (Action a : kMoves) {
      const Pose next = apply_action(p, a, grid);
      if (next == p) continue;
      Back& b = back[index(next)];
      if (b.seen) continue;
      b = Back{index(p), a, true};
      frontier.push(next);
    }
  }
  return std::nullopt;
}

AgentTurn oracle_turn(std::string_view observation, int k) {
  const ParsedTopdown parsed = parse_topdown(observation);
  AgentTurn t;
  const auto plan = oracle_plan(parsed.grid, parsed.pose);
  if (!plan || plan->empty()) {
    t.actions.assign(static_cast<std::size_t>(k), Action::kStay);
    return t;
  }
  const auto n = std::min(plan->size(), static_cast<std::size_t>(k));
  t.actions.assign(plan->begin(), plan->begin() + static_cast<std::ptrdiff_t>(n));
  return t;
}

std::string OracleAgent::act(const TurnRequest& request) {
  return format_turn(oracle_turn(request.observation, request.k));
}

// --- scripted ------------------------------------------------------------------

ScriptedAgent::ScriptedAgent(std::vector<std::string> responses, bool cycle)
    : responses_(std::move(responses)), cycle_(cycle) {
  if (responses_.empty()) throw UsageError("ScriptedAgent needs at least one response");
}

std::string ScriptedAgent::act(const TurnRequest&) {
  const std::size_t i = cycle_ ? calls_ % responses_.size() : std::min(calls_, responses_.size() - 1);
  ++calls_;
  return responses_[i];
}

// --- interactive -----------------------------------------------------------------

KeyResult read_key(std::istream& in) {
  const int c = in.get();
  if (c == std::char_traits<char>::eof()) return {KeyCommand::kQuit};
  switch (c) {
    case 'w': case 'W': return {KeyCommand::kAction, Action::kForward};
    case 'a': case 'A': return {KeyCommand::kAction, Action::kRotateLeft};
    case 'd': case 'D': return {KeyCommand::kAction, Action::kRotateRight};
    case 's': case 'S': case ' ': return {KeyCommand::kAction, Action::kStay};
    case 'q': case 'Q': return {KeyCommand::kQuit};
    case 0x1b: {
      // ESC [ A..D arrow sequences
      if (in.peek() != '[') return {KeyCommand::kIgnore};
      in.get();
      switch (in.get()) {
        case 'A': return {KeyCommand::kAction, Action::kForward};
        case 'B': return {KeyCommand::kAction, Action::kStay};
        case 'C': return {KeyCommand::kAction, Action::kRotateRight};
        case 'D': return {KeyCommand::kAction, Action::kRotateLeft};
        default: return {KeyCommand::kIgnore};
      }
    }
    default: return {KeyCommand::kIgnore};
  }
}

std::string InteractiveAgent::act(const TurnRequest& request) {
  out_ << request.observation << "[w/a/d/s, arrows, q to quit] " << std::flush;
  for (;;) {
    const KeyResult key = read_key(in_);
    if (key.command == KeyCommand::kQuit) {
      out_ << '\n';
      throw SessionAborted("player quit");
    }
    if (key.command == KeyCommand::kAction) {
      out_ << to_string(key.action) << '\n';
      AgentTurn t;
      t.actions = {key.action};
      return format_turn(t);
    }
  }
}

}  // namespace cheesebench
