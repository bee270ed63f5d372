#pragma once

#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cheesebench/agent.hpp"
#include "cheesebench/episode.hpp"
#include "cheesebench/render.hpp"

namespace cheesebench {

enum class PromptVariant : std::uint8_t { kDefault, kMinimal, kCot, kFewShot };

std::string_view to_string(PromptVariant v);
/// "default", "minimal", "cot", "fewshot" (any case; "few-shot" and "few_shot" also accepted).
std::optional<PromptVariant> prompt_variant_from_name(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::array<int, 4> kHistoryGrid = {1, 3, 5, 10};
inline constexpr std::array<int, 4> kBatchGrid = {1, 4, 8, 16};

struct HarnessConfig {
  int history = 5;
  int batch = 8;
  PromptVariant prompt = PromptVariant::kDefault;
  RenderMode render_mode = RenderMode::kAscii2d;
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> trials_override;

  /// Throws ConfigError for non-positive history, batch or trial count.
  void validate() const;
  int trials_for(const ParadigmSpec& spec) const { return trials_override.value_or(spec.trials); }
};

// --- prompt --------------------------------------------------------------------

inline constexpr std::string_view kPromptVersion = "cheesebench-prompt/1";

/// System message for a variant. `k` fills the "up to k ACTIONS" slot.
std::string system_prompt(PromptVariant variant, int k);

struct HistoryRecord {
  std::string observation;
  std::vector<Action> actions;  // actions actually executed
  std::vector<double> rewards;  // one per executed action
  double reward_total = 0.0;
};

class ContextWindow {
 public:
  explicit ContextWindow(int history) : capacity_(static_cast<std::size_t>(history)) {}

  void push(HistoryRecord r);
  /// Replaces the scratchpad when the turn carried a LEARNINGS section.
  void update_scratchpad(const AgentTurn& turn);
  void clear_history() { records_.clear(); }

  const std::deque<HistoryRecord>& records() const { return records_; }
  const std::string& scratchpad() const { return scratchpad_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<HistoryRecord> records_;
  std::string scratchpad_;
};

/// [system, user]. The user message holds the scratchpad, the history records
/// and the current observation, in that order.
std::vector<ChatMessage> assemble_prompt(const HarnessConfig& cfg, const ContextWindow& context,
                                         const Observation& obs);

// --- response parsing ------------------------------------------------------------

/// Total function: never throws. Unknown action tokens are counted in
/// parse_failures; a reply with no valid action becomes a single wasted STAY.
AgentTurn parse_agent_response(std::string_view raw, int k);

// --- trial / session ---------------------------------------------------------------

struct TrialRecord {
  std::string env;
  int trial_index = 0;
  bool success = false;
  int steps_used = 0;
  double cumulative_reward = 0.0;
  int parse_failures = 0;
  int turn_count = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// One line of the trace log.
struct TurnTrace {
  std::string env;
  int trial = 0;
  int turn = 0;
  int step = 0;               // step counter before the turn
  std::uint64_t obs_hash = 0; // fnv1a64 of the observation shown to the agent
  std::string raw;            // agent reply, verbatim
  bool transport_error = false;
  std::vector<Action> parsed;
  std::string learnings;
  bool learnings_present = false;
  std::vector<Action> executed;
  std::vector<double> rewards;
  int parse_failures = 0;
  int step_after = 0;
  bool terminated = false;
  bool truncated = false;
  bool success = false;
  double cumulative_reward = 0.0;

  friend bool operator==(const TurnTrace&, const TurnTrace&) = default;
};

/// One JSON object, keys sorted, no trailing newline.
std::string to_jsonl(const TurnTrace& t);
/// Throws ParseError.
TurnTrace turn_trace_from_jsonl(std::string_view line);

using TraceFn = std::function<void(const TurnTrace&)>;

/// Runs one trial. `context` carries history and scratchpad in and out.
TrialRecord run_trial(const ParadigmSpec& spec, int trial_index, Agent& agent, const HarnessConfig& cfg,
                      ContextWindow& context, const TraceFn& trace = {});

struct SessionResult {
  std::vector<TrialRecord> records;
  bool aborted = false;  // the agent raised SessionAborted; records hold the finished trials
};

/// All trials of one environment with one agent instance, so learned state
/// and the scratchpad carry over between trials.
SessionResult run_session(const ParadigmSpec& spec, Agent& agent, const HarnessConfig& cfg,
                          const TraceFn& trace = {});

/// Feeds recorded replies back in order, re-raising recorded transport errors.
/// Throws ParseError if asked for more turns than were recorded.
class ReplayAgent final : public Agent {
 public:
  explicit ReplayAgent(std::vector<TurnTrace> turns) : turns_(std::move(turns)) {}
  std::string_view name() const override { return "replay"; }
  std::string act(const TurnRequest& request) override;
  std::size_t remaining() const { return turns_.size() - next_; }

 private:
  std::vector<TurnTrace> turns_;
  std::size_t next_ = 0;
};

/// Rebuilds the per-trial records from a trace (last turn of each trial).
std::vector<TrialRecord> records_from_trace(const std::vector<TurnTrace>& turns);

}  // namespace cheesebench
