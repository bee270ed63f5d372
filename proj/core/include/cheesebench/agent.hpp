#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cheesebench/grid.hpp"

namespace cheesebench {

inline constexpr std::size_t kLearningsLimit = 500;

struct AgentTurn {
  std::vector<Action> actions;
  std::string learnings;
  bool learnings_present = false;  // a LEARNINGS section was found (even if empty)
  int parse_failures = 0;

  friend bool operator==(const AgentTurn&, const AgentTurn&) = default;
};

/// First 500 code points of `text` (UTF-8 aware; invalid bytes count as one each).
std::string truncate_learnings(std::string_view text);

/// Canonical response text. parse_agent_response(format_turn(t), k) == t for
/// any turn with 1..k actions and learnings free of section keywords.
std::string format_turn(const AgentTurn& turn);

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct TurnRequest {
  std::string observation;
  std::vector<ChatMessage> messages;  // empty unless the agent wants_prompt()
  int k = 8;
  int trial_index = 0;
  int turn_index = 0;
};

/// One executed action, reported to agents that learn from transitions.
struct Transition {
  std::string before;
  Action action = Action::kStay;
  double reward = 0.0;
  std::string after;
  bool done = false;
};

/// Agents return raw response text; the harness parses every reply the same way.
/// Throwing TransportError means "no reply this turn"; SessionAborted ends the session.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;
  virtual bool wants_prompt() const { return false; }
  virtual bool wants_transitions() const { return false; }

  virtual std::string act(const TurnRequest& request) = 0;
  virtual void observe(const Transition&) {}
  virtual void begin_trial(int /*trial_index*/) {}
  virtual void end_trial(bool /*success*/) {}
};

}  // namespace cheesebench
