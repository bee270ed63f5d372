#include "cheesebench/chat_client.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cheesebench/errors.hpp"

namespace cheesebench {

using nlohmann::json;

SplitUrl split_endpoint_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) throw ConfigError("endpoint URL needs a scheme: " + std::string(url));
  const std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https")
    throw ConfigError("endpoint URL scheme must be http or https: " + std::string(url));
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = std::string(url.substr(0, path_start));
  if (out.origin.size() <= scheme_end + 3) throw ConfigError("endpoint URL has no host: " + std::string(url));
  out.path = path_start == std::string_view::npos || path_start + 1 == url.size()
                 ? std::string(kDefaultChatPath)
                 : std::string(url.substr(path_start));
  return out;
}

std::string chat_request_body(const EndpointConfig& cfg, const std::vector<ChatMessage>& messages) {
  json msgs = json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  const json body = {
      {"model", cfg.model},
      {"messages", std::move(msgs)},
      {"temperature", cfg.temperature},
      {"max_tokens", cfg.max_tokens},
  };
  return body.dump();
}

std::string extract_completion(std::string_view response_body) {
  const json doc = json::parse(response_body, nullptr, false);
  if (doc.is_discarded()) throw ParseError("chat response is not JSON");
  try {
    const json& content = doc.at("choices").at(0).at("message").at("content");
    if (content.is_null()) return {};
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("chat response has no choices[0].message.content: ") + e.what());
  }
}

ChatClient::ChatClient(EndpointConfig cfg, SleepFn sleep)
    : cfg_(std::move(cfg)), target_(split_endpoint_url(cfg_.url)), sleep_(std::move(sleep)) {
  if (cfg_.model.empty()) throw ConfigError("chat endpoint needs a model name");
  if (cfg_.retries < 0) throw ConfigError("retries must be >= 0");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (cfg_.url.starts_with("https://"))
    throw ConfigError("this build has no TLS support; use an http:// endpoint or rebuild with OpenSSL");
#endif
  if (!sleep_) {
    sleep_ = [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
  }
}

std::string ChatClient::complete(const std::vector<ChatMessage>& messages) {
  httplib::Client client(target_.origin);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(cfg_.timeout_seconds));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  if (!cfg_.api_key.empty()) client.set_bearer_token_auth(cfg_.api_key);

  const std::string body = chat_request_body(cfg_, messages);
  std::string last_error;
  double backoff = cfg_.backoff_seconds;
  last_attempts_ = 0;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0) {
      sleep_(backoff);
      backoff *= 2.0;
    }
    ++last_attempts_;
    const auto res = client.Post(target_.path, body, "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) {
      try {
        return extract_completion(res->body);
      } catch (const ParseError& e) {
        throw TransportError(e.what());
      }
    }
    last_error = "HTTP " + std::to_string(res->status);
    const bool transient = res->status == 429 || res->status >= 500;
    if (!transient) throw TransportError(last_error + " from " + target_.origin + target_.path);
  }
  throw TransportError("giving up after " + std::to_string(last_attempts_) + " attempts: " + last_error);
}

}  // namespace cheesebench
