#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cheesebench/chat_client.hpp"
#include "cheesebench/harness.hpp"
#include "cheesebench/tabular_q.hpp"

namespace cheesebench::cli {

inline constexpr std::string_view kAgentNames[] = {"random", "tabular-ql", "oracle", "llm", "interactive"};

struct RunConfig {
  HarnessConfig harness;
  std::vector<std::string> envs;  // canonical paradigm names, empty = all
  std::string agent = "random";
  EndpointConfig endpoint;
  QLearningConfig ql;
  std::filesystem::path out;
  int jobs = 1;
};

/// Throws ConfigError for unknown agent/env names and agent-specific gaps
/// (llm without endpoint or model, oracle without the top-down view, ...).
void validate(RunConfig& cfg);

/// Config snapshot written into every run directory (API key redacted).
std::string config_snapshot_json(const RunConfig& cfg);
/// Reads a snapshot back (the API key comes back empty).
RunConfig config_from_snapshot(std::string_view json_text);

/// Entry point shared by the executable and the tests. Returns the exit status:
/// 0 success, 1 runtime failure, 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace cheesebench::cli
