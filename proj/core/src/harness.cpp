#include "cheesebench/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include <json.hpp>

#include "cheesebench/errors.hpp"

namespace cheesebench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool iequals_prefix(std::string_view text, std::string_view word) {
  if (text.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(text[i])) != word[i]) return false;
  return true;
}

enum class Section { kNone, kLearnings, kActions };

// Recognises "LEARNINGS:" / "**Actions**:" / "## ACTIONS" style header lines.
// On a match, `rest` receives the text after the header on the same line.
Section header_of(std::string_view line, std::string_view& rest) {
  std::size_t i = 0;
  while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == '*' ||
                             line[i] == '#' || line[i] == '>' || line[i] == '-'))
    ++i;
  line.remove_prefix(i);
  Section s = Section::kNone;
  std::size_t len = 0;
  if (iequals_prefix(line, "LEARNINGS")) {
    s = Section::kLearnings;
    len = 9;
  } else if (iequals_prefix(line, "ACTIONS")) {
    s = Section::kActions;
    len = 7;
  } else {
    return Section::kNone;
  }
  line.remove_prefix(len);
  while (!line.empty() && (line.front() == '*' || line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  if (line.empty()) {
    rest = {};
    return s;
  }
  if (line.front() != ':') return Section::kNone;
  line.remove_prefix(1);
  while (!line.empty() && line.front() == '*') line.remove_prefix(1);
  rest = line;
  return s;
}

bool is_token_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

AgentTurn parse_agent_response(std::string_view raw, int k) {
  AgentTurn turn;
  std::string learnings;
  std::string actions_text;
  bool have_actions = false;
  Section current = Section::kNone;
  bool seen_learnings = false;

  while (!raw.empty()) {
    const auto nl = raw.find('\n');
    std::string_view line = raw.substr(0, nl);
    raw.remove_prefix(nl == std::string_view::npos ? raw.size() : nl + 1);

    std::string_view rest;
    const Section h = header_of(line, rest);
    if (h == Section::kLearnings && !seen_learnings) {
      seen_learnings = true;
      current = Section::kLearnings;
      learnings.append(rest);
      continue;
    }
    if (h == Section::kActions && !have_actions) {
      have_actions = true;
      current = Section::kActions;
      actions_text.append(rest);
      continue;
    }
    if (h != Section::kNone) {
      current = Section::kNone;  // repeated section: ignore it
      continue;
    }
    if (current == Section::kLearnings) {
      learnings += '\n';
      learnings.append(line);
    } else if (current == Section::kActions) {
      actions_text += '\n';
      actions_text.append(line);
    }
  }

  if (seen_learnings) {
    turn.learnings_present = true;
    turn.learnings = truncate_learnings(trim(learnings));
  }

  std::size_t valid = 0;
  std::string_view rest = actions_text;
  while (!rest.empty()) {
    const auto end = rest.find_first_of(", \t\r\n;");
    std::string_view token = rest.substr(0, end);
    rest.remove_prefix(end == std::string_view::npos ? rest.size() : end + 1);
    while (!token.empty() && !is_token_char(token.front())) token.remove_prefix(1);
    while (!token.empty() && !is_token_char(token.back())) token.remove_suffix(1);
    if (token.empty()) continue;
    if (const auto a = parse_action(token)) {
      ++valid;
      if (turn.actions.size() < static_cast<std::size_t>(k)) turn.actions.push_back(*a);
    } else {
      ++turn.parse_failures;
    }
  }
  if (valid == 0) {
    turn.actions = {Action::kStay};
    ++turn.parse_failures;
  }
  return turn;
}

// --- trace ---------------------------------------------------------------------

namespace {

using nlohmann::json;

json actions_json(const std::vector<Action>& actions) {
  json out = json::array();
  for (Action a : actions) out.push_back(std::string(to_string(a)));
  return out;
}

std::vector<Action> actions_from_json(const json& j) {
  std::vector<Action> out;
  for (const auto& item : j) {
    const auto a = parse_action(item.get<std::string>());
    if (!a) throw ParseError("trace: bad action " + item.dump());
    out.push_back(*a);
  }
  return out;
}

}  // namespace

std::string to_jsonl(const TurnTrace& t) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(t.obs_hash));
  const json j = {
      {"env", t.env},
      {"trial", t.trial},
      {"turn", t.turn},
      {"step", t.step},
      {"obs_hash", hash},
      {"raw", t.raw},
      {"transport_error", t.transport_error},
      {"parsed", actions_json(t.parsed)},
      {"learnings", t.learnings},
      {"learnings_present", t.learnings_present},
      {"executed", actions_json(t.executed)},
      {"rewards", t.rewards},
      {"parse_failures", t.parse_failures},
      {"step_after", t.step_after},
      {"terminated", t.terminated},
      {"truncated", t.truncated},
      {"success", t.success},
      {"cumulative_reward", t.cumulative_reward},
  };
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

TurnTrace turn_trace_from_jsonl(std::string_view line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("trace line is not a JSON object");
  try {
    TurnTrace t;
    t.env = j.at("env").get<std::string>();
    t.trial = j.at("trial").get<int>();
    t.turn = j.at("turn").get<int>();
    t.step = j.at("step").get<int>();
    t.obs_hash = std::stoull(j.at("obs_hash").get<std::string>(), nullptr, 16);
    t.raw = j.at("raw").get<std::string>();
    t.transport_error = j.at("transport_error").get<bool>();
    t.parsed = actions_from_json(j.at("parsed"));
    t.learnings = j.at("learnings").get<std::string>();
    t.learnings_present = j.at("learnings_present").get<bool>();
    t.executed = actions_from_json(j.at("executed"));
    t.rewards = j.at("rewards").get<std::vector<double>>();
    t.parse_failures = j.at("parse_failures").get<int>();
    t.step_after = j.at("step_after").get<int>();
    t.terminated = j.at("terminated").get<bool>();
    t.truncated = j.at("truncated").get<bool>();
    t.success = j.at("success").get<bool>();
    t.cumulative_reward = j.at("cumulative_reward").get<double>();
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("trace line: ") + e.what());
  } catch (const std::logic_error& e) {  // stoull
    throw ParseError(std::string("trace line: bad obs_hash: ") + e.what());
  }
}

std::vector<TrialRecord> records_from_trace(const std::vector<TurnTrace>& turns) {
  std::vector<TrialRecord> out;
  for (const TurnTrace& t : turns) {
    if (t.turn == 0) {
      out.push_back(TrialRecord{t.env, t.trial});
    } else if (out.empty() || out.back().env != t.env || out.back().trial_index != t.trial) {
      throw ParseError("trace: turn " + std::to_string(t.turn) + " of " + t.env + " trial " +
                       std::to_string(t.trial) + " without its first turn");
    }
    TrialRecord& r = out.back();
    r.success = t.success;
    r.steps_used = t.step_after;
    r.cumulative_reward = t.cumulative_reward;
    r.parse_failures += t.parse_failures;
    r.turn_count = t.turn + 1;
  }
  return out;
}

std::string ReplayAgent::act(const TurnRequest& request) {
  if (next_ >= turns_.size())
    throw ParseError("replay: trace has no reply for trial " + std::to_string(request.trial_index) + " turn " +
                     std::to_string(request.turn_index));
  const TurnTrace& t = turns_[next_++];
  if (t.transport_error) throw TransportError("recorded transport error");
  return t.raw;
}

// --- trial loop ------------------------------------------------------------------

TrialRecord run_trial(const ParadigmSpec& spec, int trial_index, Agent& agent, const HarnessConfig& cfg,
                      ContextWindow& context, const TraceFn& trace) {
  EpisodeState state = reset_trial(spec, trial_index, cfg.seed);
  TrialRecord record{std::string(spec.name), trial_index};
  context.clear_history();
  agent.begin_trial(trial_index);

  Observation obs = render(state, cfg.render_mode);
  for (int turn = 0; !state.done; ++turn) {
    TurnRequest request;
    request.observation = obs.text;
    request.k = cfg.batch;
    request.trial_index = trial_index;
    request.turn_index = turn;
    if (agent.wants_prompt()) request.messages = assemble_prompt(cfg, context, obs);

    TurnTrace t;
    t.env = record.env;
    t.trial = trial_index;
    t.turn = turn;
    t.step = state.step;
    t.obs_hash = fnv1a64(obs.text);

    AgentTurn parsed;
    try {
      t.raw = agent.act(request);
      parsed = parse_agent_response(t.raw, cfg.batch);
    } catch (const TransportError&) {
      t.transport_error = true;
      parsed.actions.assign(static_cast<std::size_t>(cfg.batch), Action::kStay);
      parsed.parse_failures = 1;
    }

    HistoryRecord hist;
    hist.observation = obs.text;
    for (Action a : parsed.actions) {
      if (state.done) break;
      const StepOutcome o = advance(state, a);
      Observation next = render(state, cfg.render_mode);
      if (agent.wants_transitions()) agent.observe(Transition{obs.text, a, o.reward, next.text, state.done});
      obs = std::move(next);
      hist.actions.push_back(a);
      hist.rewards.push_back(o.reward);
      hist.reward_total += o.reward;
      t.terminated = o.terminated;
      t.truncated = o.truncated;
    }

    record.parse_failures += parsed.parse_failures;
    record.turn_count = turn + 1;
    t.parsed = parsed.actions;
    t.learnings = parsed.learnings;
    t.learnings_present = parsed.learnings_present;
    t.executed = hist.actions;
    t.rewards = hist.rewards;
    t.parse_failures = parsed.parse_failures;
    t.step_after = state.step;
    t.success = state.success;
    t.cumulative_reward = state.cumulative_reward;

    context.push(std::move(hist));
    context.update_scratchpad(parsed);
    if (trace) trace(t);
  }

  record.success = state.success;
  record.steps_used = state.step;
  record.cumulative_reward = state.cumulative_reward;
  agent.end_trial(record.success);
  return record;
}

SessionResult run_session(const ParadigmSpec& spec, Agent& agent, const HarnessConfig& cfg, const TraceFn& trace) {
  cfg.validate();
  SessionResult out;
  ContextWindow context(cfg.history);
  const int trials = cfg.trials_for(spec);
  out.records.reserve(static_cast<std::size_t>(trials));
  try {
    for (int i = 0; i < trials; ++i) out.records.push_back(run_trial(spec, i, agent, cfg, context, trace));
  } catch (const SessionAborted&) {
    out.aborted = true;
  }
  return out;
}

}  // namespace cheesebench
