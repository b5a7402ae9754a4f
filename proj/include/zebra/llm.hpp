// Copyright 2026 The zebra-qa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Chat-completion gateways. Everything that talks to a language model goes
// through ChatGateway; decorators add retry and a persistent response cache.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "zebra/error.hpp"

namespace zebra {

class HttpTransport;

enum class Role { system, user, assistant };

std::string_view role_name(Role r);
Role role_from_name(std::string_view name);

struct ChatMessage {
  Role role = Role::user;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

using ChatPrompt = std::vector<ChatMessage>;

/// Logprob assigned to a candidate label the endpoint did not report. Sorts
/// below any real log-probability.
inline constexpr double kMissingLogprob = -1e9;

struct ChatRequest {
  ChatPrompt messages;
  double temperature = 0.0;
  int max_new_tokens = 256;
  bool want_label_logprobs = false;
  std::vector<std::string> candidate_labels;
  std::optional<std::uint64_t> seed;

  /// Throws ValidationError if the request breaks its invariants.
  void validate() const;
};

struct ChatResponse {
  std::string text;
  /// One entry per candidate label, by label. Present only when requested.
  std::optional<std::map<std::string, double>> label_logprobs;
  std::string model_name;

  bool operator==(const ChatResponse&) const = default;
};

class GatewayError : public Error {
 public:
  using Error::Error;
};

/// Retryable failure: transport errors, HTTP 429 and 5xx.
class TransientGatewayError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

/// The endpoint cannot return label log-probabilities.
class LogprobsUnsupported : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

class ChatGateway {
 public:
  virtual ~ChatGateway() = default;
  virtual ChatResponse chat(const ChatRequest& req) = 0;
  virtual std::string model_name() const = 0;
};

/// "<|role|>\ncontent\n" for each message, concatenated. Mock matchers run
/// against this rendering.
std::string render_canonical(const ChatPrompt& messages);

/// Content hash over (model, messages, temperature, max tokens, labels).
std::string request_key(std::string_view model_name, const ChatRequest& req);

nlohmann::ordered_json request_to_json(const ChatRequest& req);
nlohmann::ordered_json response_to_json(const ChatResponse& resp);
ChatResponse response_from_json(const nlohmann::json& j);

/// Maps first-token top alternatives onto candidate labels. A token matches a
/// label after stripping one leading space, exact case; missing labels get
/// kMissingLogprob. Duplicate matches keep the larger value.
std::map<std::string, double> map_label_logprobs(
    const std::vector<std::pair<std::string, double>>& top,
    const std::vector<std::string>& candidates);

// ---------------------------------------------------------------------------
// Scripted mock

struct MockRule {
  enum class Match { exact, contains };
  Match match = Match::contains;
  std::string pattern;
  std::string text;
  /// First-token alternatives returned when label logprobs are requested.
  std::optional<std::vector<std::pair<std::string, double>>> top_logprobs;
};

/// Deterministic gateway: the first rule whose pattern matches the canonical
/// rendering answers; otherwise a fallback derived from the seed and request.
class MockGateway final : public ChatGateway {
 public:
  MockGateway(std::vector<MockRule> rules, std::uint64_t fallback_seed,
              std::string model_name = "mock", bool supports_logprobs = true);

  ChatResponse chat(const ChatRequest& req) override;
  std::string model_name() const override { return model_name_; }
  std::size_t calls() const { return calls_.load(); }

 private:
  std::vector<MockRule> rules_;
  std::uint64_t fallback_seed_;
  std::string model_name_;
  bool supports_logprobs_;
  std::atomic<std::size_t> calls_{0};
};

std::shared_ptr<MockGateway> configure_mock(std::vector<MockRule> script,
                                            std::uint64_t fallback_seed);

/// Mock script file: {"fallback_seed": n, "model_name": s,
/// "supports_logprobs": b, "rules": [{"contains"|"exact": s, "text": s,
/// "top_logprobs": {"A": -0.1, ...}}]}.
std::shared_ptr<MockGateway> load_mock_script(const std::filesystem::path& path,
                                              std::optional<std::uint64_t> seed_override = {});

// ---------------------------------------------------------------------------
// Remote endpoint

struct RemoteChatConfig {
  std::string name;
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string model;
  std::string api_key_env;
  int top_logprobs = 20;
  std::size_t max_in_flight = 4;
};

/// OpenAI-compatible `/chat/completions` client.
class RemoteGateway final : public ChatGateway {
 public:
  RemoteGateway(RemoteChatConfig cfg, std::shared_ptr<HttpTransport> transport);
  ChatResponse chat(const ChatRequest& req) override;
  std::string model_name() const override { return cfg_.model; }

 private:
  RemoteChatConfig cfg_;
  std::shared_ptr<HttpTransport> transport_;
  std::counting_semaphore<64> in_flight_;
};

// ---------------------------------------------------------------------------
// Decorators

struct RetryPolicy {
  std::chrono::milliseconds initial_delay{1000};
  double factor = 2.0;
  int max_attempts = 5;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Retries TransientGatewayError with exponential backoff; after the last
/// attempt the error surfaces as a GatewayError.
class RetryingGateway final : public ChatGateway {
 public:
  RetryingGateway(std::shared_ptr<ChatGateway> inner, RetryPolicy policy = {},
                  Sleeper sleep = {});
  ChatResponse chat(const ChatRequest& req) override;
  std::string model_name() const override { return inner_->model_name(); }

 private:
  std::shared_ptr<ChatGateway> inner_;
  RetryPolicy policy_;
  Sleeper sleep_;
};

/// Content-addressed response cache, persisted as JSON lines
/// {key, request, response, timestamp} when a file is given. Writes are
/// serialized; reads never block on the inner gateway.
class CachingGateway final : public ChatGateway {
 public:
  explicit CachingGateway(std::shared_ptr<ChatGateway> inner,
                          std::optional<std::filesystem::path> file = std::nullopt);
  ChatResponse chat(const ChatRequest& req) override;
  std::string model_name() const override { return inner_->model_name(); }

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }
  std::size_t size() const;

 private:
  std::shared_ptr<ChatGateway> inner_;
  std::optional<std::filesystem::path> file_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, ChatResponse> entries_;
  std::atomic<std::size_t> hits_{0}, misses_{0};
};

}  // namespace zebra
