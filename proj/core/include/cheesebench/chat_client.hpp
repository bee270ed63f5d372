#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cheesebench/agent.hpp"

namespace cheesebench {

struct EndpointConfig {
  /// Full URL of the chat-completion endpoint. A URL without a path gets
  /// kDefaultChatPath appended.
  std::string url;
  std::string model;
  std::string api_key;  // sent as a Bearer token when non-empty
  double temperature = 0.7;
  int max_tokens = 512;
  int retries = 3;               // extra attempts after the first one
  double backoff_seconds = 1.0;  // doubled after every failed attempt
  double timeout_seconds = 120.0;
};

inline constexpr std::string_view kDefaultChatPath = "/v1/chat/completions";

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};
/// Throws ConfigError for anything that is not http(s)://host[:port][/path].
SplitUrl split_endpoint_url(std::string_view url);

/// JSON request body (model, messages, temperature, max_tokens).
std::string chat_request_body(const EndpointConfig& cfg, const std::vector<ChatMessage>& messages);
/// Text of the first choice's message. Throws ParseError.
std::string extract_completion(std::string_view response_body);

class ChatClient {
 public:
  using SleepFn = std::function<void(double seconds)>;

  explicit ChatClient(EndpointConfig cfg, SleepFn sleep = {});

  /// Raw completion text. Connection errors, 429 and 5xx are retried with
  /// backoff; anything else, or running out of retries, throws TransportError.
  std::string complete(const std::vector<ChatMessage>& messages);

  const EndpointConfig& config() const { return cfg_; }
  int last_attempts() const { return last_attempts_; }

 private:
  EndpointConfig cfg_;
  SplitUrl target_;
  SleepFn sleep_;
  int last_attempts_ = 0;
};

class ChatAgent final : public Agent {
 public:
  explicit ChatAgent(EndpointConfig cfg, ChatClient::SleepFn sleep = {}) : client_(std::move(cfg), std::move(sleep)) {}
  std::string_view name() const override { return "llm"; }
  bool wants_prompt() const override { return true; }
  std::string act(const TurnRequest& request) override { return client_.complete(request.messages); }

 private:
  ChatClient client_;
};

}  // namespace cheesebench
