#include "cheesebench/tabular_q.hpp"

#include <algorithm>
#include <queue>


namespace cheesebench {

QState qstate_of(std::string_view observation) { return fnv1a64(observation); }

std::string scene_text(std::string_view observation) {
  std::string out;
  out.reserve(observation.size());
  while (!observation.empty()) {
    const auto nl = observation.find('\n');
    const auto len = nl == std::string_view::npos ? observation.size() : nl + 1;
    const auto line = observation.substr(0, len);
    if (!line.starts_with("STEP ") && !line.starts_with("REWARD ")) out += line;
    observation.remove_prefix(len);
  }
  return out;
}

double QTable::get(QState s, Action a) const {
  const auto it = values_.find(s);
  return it == values_.end() ? 0.0 : it->second[static_cast<std::size_t>(a)];
}

void QTable::set(QState s, Action a, double v) { values_[s][static_cast<std::size_t>(a)] = v; }

double QTable::max_value(QState s) const {
  const auto it = values_.find(s);
  if (it == values_.end()) return 0.0;
  return *std::max_element(it->second.begin(), it->second.end());
}

Action QTable::greedy(QState s) const {
  Action best = kAllActions[0];
  for (Action a : kAllActions)
    if (get(s, a) > get(s, best)) best = a;
  return best;
}

void TransitionGraph::record(QState from, Action a, QState to) {
  Node& n = edges_[from];
  auto& succ = n.successors[static_cast<std::size_t>(a)];
  if (std::find(succ.begin(), succ.end(), to) == succ.end()) succ.push_back(to);
  n.last[static_cast<std::size_t>(a)] = to;
}

std::optional<QState> TransitionGraph::successor(QState from, Action a) const {
  const auto it = edges_.find(from);
  if (it == edges_.end()) return std::nullopt;
  return it->second.last[static_cast<std::size_t>(a)];
}

std::optional<std::vector<Action>> TransitionGraph::path_to_goal(QState from) const {
  if (goals_.empty() || !edges_.contains(from)) return std::nullopt;
  struct Back {
    QState parent;
    Action action;
  };
  std::unordered_map<QState, Back> back;
  std::unordered_set<QState> seen{from};
  std::queue<QState> frontier;
  frontier.push(from);
  while (!frontier.empty()) {
    const QState s = frontier.front();
    frontier.pop();
    const auto it = edges_.find(s);
    if (it == edges_.end()) continue;
    for (Action a : kAllActions) {
      for (QState next : it->second.successors[static_cast<std::size_t>(a)]) {
        if (!seen.insert(next).second) continue;
        back[next] = Back{s, a};
        if (goals_.contains(next)) {
          std::vector<Action> path;
          for (QState n = next; n != from; n = back.at(n).parent) path.push_back(back.at(n).action);
          std::reverse(path.begin(), path.end());
          return path;
        }
        frontier.push(next);
      }
    }
  }
  return std::nullopt;
}

void ql_update(QTable& q, TransitionGraph& graph, const QLearningConfig& cfg, QState prev, Action action,
               double reward, QState next) {
  const double old = q.get(prev, action);
  q.set(prev, action, old + cfg.alpha * (reward + cfg.gamma * q.max_value(next) - old));
  graph.record(prev, action, next);
  if (reward >= cfg.goal_threshold) graph.mark_goal(next);
}

AgentTurn ql_turn(const QTable& q, const TransitionGraph& graph, QState current, int k, double epsilon, Rng& rng) {
  AgentTurn t;
  const auto want = static_cast<std::size_t>(k);
  std::optional<QState> node = current;
  Action last_greedy = q.greedy(current);
  while (t.actions.size() < want) {
    if (!node) {
      t.actions.push_back(last_greedy);
      continue;
    }
    if (auto path = graph.path_to_goal(*node)) {
      for (Action a : *path) {
        if (t.actions.size() == want) break;
        t.actions.push_back(a);
      }
      // Stop at the end of the plan and replan from what actually happened.
      break;
    }
    last_greedy = q.greedy(*node);
    const Action a = rng.chance(epsilon) ? kAllActions[rng.below(4)] : last_greedy;
    t.actions.push_back(a);
    node = graph.successor(*node, a);
  }
  return t;
}

std::string TabularQAgent::act(const TurnRequest& request) {
  return format_turn(ql_turn(q_, graph_, qstate_of(scene_text(request.observation)), request.k, epsilon_, rng_));
}

void TabularQAgent::observe(const Transition& t) {
  ql_update(q_, graph_, cfg_, qstate_of(scene_text(t.before)), t.action, t.reward,
            qstate_of(scene_text(t.after)));
}

void TabularQAgent::end_trial(bool) { epsilon_ *= cfg_.epsilon_decay; }

}  // namespace cheesebench
