#include <algorithm>
#include <cctype>
#include <cstdio>

#include "cheesebench/errors.hpp"
#include "cheesebench/harness.hpp"

namespace cheesebench {

namespace {

constexpr std::string_view kPreamble =
    "You are an embodied agent placed in a behavioral experiment. Your only goal is to maximize "
    "cumulative reward.\n"
    "\n"
    "Each turn you receive a text observation of your surroundings. Walls are '#'. Your position and "
    "facing are shown by an arrow: ^ north, > east, v south, < west. Other characters are features of "
    "the environment; what they mean is for you to find out. Below the map you see the step counter and "
    "the reward of your last step.\n"
    "\n"
    "ACTIONS available:\n"
    "  FORWARD       move one cell in the direction you face (blocked by walls)\n"
    "  ROTATE_LEFT   turn 90 degrees to the left\n"
    "  ROTATE_RIGHT  turn 90 degrees to the right\n"
    "  STAY          do nothing\n"
    "Every action uses one step, including blocked moves. Replies that contain no valid action waste a "
    "step.\n"
    "\n"
    "You keep a LEARNINGS scratchpad of at most 500 characters. It is shown to you every turn, also after "
    "the environment resets for a new trial. Whatever you write under LEARNINGS replaces it; omit the "
    "section to keep it unchanged.\n";

constexpr std::string_view kStrategy =
    "\n"
    "STRATEGY:\n"
    "1. Reward signals: positive -> repeat, negative -> change.\n"
    "2. Spatial memory: track position.\n"
    "3. Hypothesis testing.\n"
    "4. Pattern recognition.\n"
    "5. Efficient planning.\n";

constexpr std::string_view kFormat =
    "\n"
    "Respond with LEARNINGS and up to %d ACTIONS, in this format:\n"
    "LEARNINGS: <what you have learned so far>\n"
    "ACTIONS: <action>, <action>, ...\n";

constexpr std::string_view kCot =
    "\n"
    "Before the LEARNINGS section, think step by step about what you observe and what to do next, under a "
    "line starting with REASONING:\n";

constexpr std::string_view kFewShot =
    "\n"
    "EXAMPLES (a different room, for format only):\n"
    "\n"
    "Observation:\n"
    "#####\n"
    "#.^.#\n"
    "#...#\n"
    "#####\n"
    "STEP 0 / 40\n"
    "REWARD 0.00\n"
    "ON .\n"
    "Reply:\n"
    "LEARNINGS: Small room. North of me is a wall. Nothing rewarding seen yet.\n"
    "ACTIONS: ROTATE_RIGHT, FORWARD, ROTATE_RIGHT, FORWARD\n"
    "\n"
    "Observation:\n"
    "#####\n"
    "#...#\n"
    "#..v#\n"
    "#####\n"
    "STEP 4 / 40\n"
    "REWARD 0.00\n"
    "ON .\n"
    "Reply:\n"
    "LEARNINGS: Small room. Explored the east side, no reward there. Try the west side next.\n"
    "ACTIONS: ROTATE_RIGHT, FORWARD, FORWARD\n";

}  // namespace

std::string_view to_string(PromptVariant v) {
  switch (v) {
    case PromptVariant::kDefault: return "default";
    case PromptVariant::kMinimal: return "minimal";
    case PromptVariant::kCot: return "cot";
    case PromptVariant::kFewShot: return "fewshot";
  }
  return "?";
}

std::optional<PromptVariant> prompt_variant_from_name(std::string_view name) {
  std::string lower;
  for (char c : name)
    if (c != '-' && c != '_') lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto v : {PromptVariant::kDefault, PromptVariant::kMinimal, PromptVariant::kCot, PromptVariant::kFewShot})
    if (lower == to_string(v)) return v;
  return std::nullopt;
}

std::string system_prompt(PromptVariant variant, int k) {
  std::string out(kPreamble);
  if (variant != PromptVariant::kMinimal) out += kStrategy;
  if (variant == PromptVariant::kCot) out += kCot;
  char buf[256];
  std::snprintf(buf, sizeof buf, std::string(kFormat).c_str(), k);
  out += buf;
  if (variant == PromptVariant::kFewShot) out += kFewShot;
  return out;
}

void HarnessConfig::validate() const {
  if (history < 1) throw ConfigError("history length must be >= 1");
  if (batch < 1) throw ConfigError("action batch size must be >= 1");
  if (trials_override && *trials_override < 1) throw ConfigError("trial count must be >= 1");
}

void ContextWindow::push(HistoryRecord r) {
  records_.push_back(std::move(r));
  while (records_.size() > capacity_) records_.pop_front();
}

void ContextWindow::update_scratchpad(const AgentTurn& turn) {
  if (turn.learnings_present) scratchpad_ = truncate_learnings(turn.learnings);
}

std::vector<ChatMessage> assemble_prompt(const HarnessConfig& cfg, const ContextWindow& context,
                                         const Observation& obs) {
  std::string user = "LEARNINGS SO FAR:\n";
  user += context.scratchpad().empty() ? "(empty)" : context.scratchpad();
  user += "\n\n";

  const auto& records = context.records();
  if (!records.empty()) {
    user += "RECENT HISTORY (oldest first):\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const HistoryRecord& r = records[i];
      char buf[64];
      std::snprintf(buf, sizeof buf, "--- record %zu of %zu ---\n", i + 1, records.size());
      user += buf;
      user += "OBSERVATION:\n" + r.observation;
      user += "ACTIONS TAKEN:";
      for (std::size_t j = 0; j < r.actions.size(); ++j) {
        user += j ? ", " : " ";
        user += to_string(r.actions[j]);
      }
      std::snprintf(buf, sizeof buf, "\nREWARD: total %+.2f (", r.reward_total);
      user += buf;
      for (std::size_t j = 0; j < r.rewards.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%s%+.2f", j ? ", " : "", r.rewards[j]);
        user += buf;
      }
      user += ")\n";
    }
    user += "\n";
  }

  user += "CURRENT OBSERVATION:\n" + obs.text;
  user += "\nRespond with LEARNINGS and up to " + std::to_string(cfg.batch) + " ACTIONS.\n";
  return {ChatMessage{"system", system_prompt(cfg.prompt, cfg.batch)}, ChatMessage{"user", std::move(user)}};
}

}  // namespace cheesebench
