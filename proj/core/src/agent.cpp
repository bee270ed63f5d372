#include "cheesebench/agent.hpp"

namespace cheesebench {

std::string truncate_learnings(std::string_view text) {
  std::size_t i = 0;
  std::size_t points = 0;
  while (i < text.size() && points < kLearningsLimit) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) len = 4;
    else if (lead >= 0xE0) len = lead < 0xF0 ? 3 : 1;
    else if (lead >= 0xC0) len = 2;
    // Only take the whole sequence if its continuation bytes are really there.
    if (len > 1) {
      if (i + len > text.size()) len = 1;
      for (std::size_t j = 1; j < len; ++j)
        if ((static_cast<unsigned char>(text[i + j]) & 0xC0) != 0x80) len = 1;
    }
    i += len;
    ++points;
  }
  return std::string(text.substr(0, i));
}

std::string format_turn(const AgentTurn& turn) {
  std::string out;
  if (turn.learnings_present) {
    out += "LEARNINGS: ";
    out += turn.learnings;
    out += '\n';
  }
  out += "ACTIONS:";
  for (std::size_t i = 0; i < turn.actions.size(); ++i) {
    out += i ? ", " : " ";
    out += to_string(turn.actions[i]);
  }
  return out;
}

}  // namespace cheesebench
