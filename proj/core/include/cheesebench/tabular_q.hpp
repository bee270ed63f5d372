#pragma once

#include <array>
#include <unordered_map>
#include <unordered_set>

#include "cheesebench/agent.hpp"
#include "cheesebench/rng.hpp"

namespace cheesebench {

struct QLearningConfig {
  double alpha = 0.1;
  double gamma = 0.95;
  double epsilon = 0.2;
  double epsilon_decay = 0.995;  // multiplied in after every trial
  double goal_threshold = 1.0;   // arrival reward that marks a goal node
};

/// 64-bit FNV-1a of the observation text.
using QState = std::uint64_t;
QState qstate_of(std::string_view observation);
// Observation text without the STEP and REWARD lines. The agent keys its table
// on this: the step counter would make every state unique, and the reward
// reaches the learner as the reward signal, not as part of the state.
std::string scene_text(std::string_view observation);

class QTable {
 public:
  double get(QState s, Action a) const;
  void set(QState s, Action a, double v);
  double max_value(QState s) const;
  /// argmax with ties broken FORWARD < ROTATE_LEFT < ROTATE_RIGHT < STAY.
  Action greedy(QState s) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::unordered_map<QState, std::array<double, 4>> values_;
};

class TransitionGraph {
 public:
  void record(QState from, Action a, QState to);
  void mark_goal(QState s) { goals_.insert(s); }
  bool is_goal(QState s) const { return goals_.contains(s); }
  bool has_goals() const { return !goals_.empty(); }
  /// Most recently observed successor of (from, a).
  std::optional<QState> successor(QState from, Action a) const;
  /// Shortest action path to any goal node (BFS, fixed action order), at
  /// least one edge long. nullopt if no goal is reachable.
  std::optional<std::vector<Action>> path_to_goal(QState from) const;
  std::size_t node_count() const { return edges_.size(); }

 private:
  struct Node {
    std::array<std::vector<QState>, 4> successors;  // distinct, in first-seen order
    std::array<std::optional<QState>, 4> last;
  };
  std::unordered_map<QState, Node> edges_;
  std::unordered_set<QState> goals_;
};

void ql_update(QTable& q, TransitionGraph& graph, const QLearningConfig& cfg, QState prev, Action action,
               double reward, QState next);

/// BFS to a known goal if one is reachable, else epsilon-greedy; later slots of
/// the batch re-query the policy at the predicted next node, or repeat the
/// greedy action once the prediction runs off the graph.
AgentTurn ql_turn(const QTable& q, const TransitionGraph& graph, QState current, int k, double epsilon, Rng& rng);

class TabularQAgent final : public Agent {
 public:
  TabularQAgent(QLearningConfig cfg, std::uint64_t seed) : cfg_(cfg), epsilon_(cfg.epsilon), rng_(seed) {}
  std::string_view name() const override { return "tabular-ql"; }
  bool wants_transitions() const override { return true; }
  std::string act(const TurnRequest& request) override;
  void observe(const Transition& t) override;
  void end_trial(bool success) override;

  double epsilon() const { return epsilon_; }
  const QTable& table() const { return q_; }
  const TransitionGraph& graph() const { return graph_; }

 private:
  QLearningConfig cfg_;
  double epsilon_;
  Rng rng_;
  QTable q_;
  TransitionGraph graph_;
};

}  // namespace cheesebench
