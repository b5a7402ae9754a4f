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

#include "zebra/llm.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include "zebra/http.hpp"
#include "zebra/kb.hpp"
#include "zebra/rng.hpp"
#include "zebra/text.hpp"

namespace zebra {

using ojson = nlohmann::ordered_json;

std::string_view role_name(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "user";
}

Role role_from_name(std::string_view name) {
  if (name == "system") return Role::system;
  if (name == "user") return Role::user;
  if (name == "assistant") return Role::assistant;
  throw ParseError("unknown chat role \"" + std::string(name) + "\"");
}

void ChatRequest::validate() const {
  if (messages.empty()) throw ValidationError("chat request without messages");
  for (std::size_t i = 0; i < messages.size(); ++i) {
    bool trailing_cue = i + 1 == messages.size() && messages[i].role == Role::assistant;
    if (messages[i].content.empty() && !trailing_cue)
      throw ValidationError("empty message content at position " + std::to_string(i));
  }
  if (!(temperature >= 0.0)) throw ValidationError("temperature must be non-negative");
  if (max_new_tokens < 1) throw ValidationError("max_new_tokens must be positive");
  if (want_label_logprobs && candidate_labels.empty())
    throw ValidationError("label logprobs requested without candidate labels");
}

std::string render_canonical(const ChatPrompt& messages) {
  std::string out;
  for (const auto& m : messages) {
    out += "<|";
    out += role_name(m.role);
    out += "|>\n";
    out += m.content;
    out += '\n';
  }
  return out;
}

ojson request_to_json(const ChatRequest& req) {
  ojson j;
  auto& msgs = j["messages"] = ojson::array();
  for (const auto& m : req.messages)
    msgs.push_back({{"role", std::string(role_name(m.role))}, {"content", m.content}});
  j["temperature"] = req.temperature;
  j["max_new_tokens"] = req.max_new_tokens;
  j["candidate_labels"] = req.want_label_logprobs ? req.candidate_labels : std::vector<std::string>{};
  if (req.seed) j["seed"] = *req.seed;
  return j;
}

std::string request_key(std::string_view model_name, const ChatRequest& req) {
  ojson j;
  j["model"] = std::string(model_name);
  auto& msgs = j["messages"] = ojson::array();
  for (const auto& m : req.messages)
    msgs.push_back({{"role", std::string(role_name(m.role))}, {"content", m.content}});
  j["temperature"] = req.temperature;
  j["max_new_tokens"] = req.max_new_tokens;
  j["candidate_labels"] = req.want_label_logprobs ? req.candidate_labels : std::vector<std::string>{};
  return sha256_hex(j.dump());
}

ojson response_to_json(const ChatResponse& resp) {
  ojson j;
  j["text"] = resp.text;
  if (resp.label_logprobs) {
    auto& lp = j["label_logprobs"] = ojson::object();
    for (const auto& [label, v] : *resp.label_logprobs) lp[label] = v;
  } else {
    j["label_logprobs"] = nullptr;
  }
  j["model_name"] = resp.model_name;
  return j;
}

ChatResponse response_from_json(const nlohmann::json& j) {
  ChatResponse r;
  r.text = j.at("text").get<std::string>();
  if (j.contains("label_logprobs") && !j["label_logprobs"].is_null()) {
    std::map<std::string, double> lp;
    for (auto it = j["label_logprobs"].begin(); it != j["label_logprobs"].end(); ++it)
      lp[it.key()] = it.value().get<double>();
    r.label_logprobs = std::move(lp);
  }
  r.model_name = j.value("model_name", std::string());
  return r;
}

std::map<std::string, double> map_label_logprobs(
    const std::vector<std::pair<std::string, double>>& top,
    const std::vector<std::string>& candidates) {
  std::map<std::string, double> out;
  for (const auto& label : candidates) out[label] = kMissingLogprob;
  for (const auto& [token, logprob] : top) {
    std::string_view t = token;
    if (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    auto it = out.find(std::string(t));
    if (it == out.end()) continue;
    if (it->second == kMissingLogprob || logprob > it->second) it->second = logprob;
  }
  return out;
}

// ---------------------------------------------------------------------------

MockGateway::MockGateway(std::vector<MockRule> rules, std::uint64_t fallback_seed,
                         std::string model_name, bool supports_logprobs)
    : rules_(std::move(rules)),
      fallback_seed_(fallback_seed),
      model_name_(std::move(model_name)),
      supports_logprobs_(supports_logprobs) {}

ChatResponse MockGateway::chat(const ChatRequest& req) {
  req.validate();
  ++calls_;
  if (req.want_label_logprobs && !supports_logprobs_)
    throw LogprobsUnsupported("mock gateway configured without logprob support");

  const std::string canonical = render_canonical(req.messages);
  const MockRule* rule = nullptr;
  for (const auto& r : rules_) {
    bool hit = r.match == MockRule::Match::exact ? canonical == r.pattern
                                                 : canonical.find(r.pattern) != std::string::npos;
    if (hit) {
      rule = &r;
      break;
    }
  }

  ChatResponse resp;
  resp.model_name = model_name_;
  const std::uint64_t h = splitmix64(fallback_seed_ ^ fnv1a64(request_key(model_name_, req)));
  if (rule) {
    resp.text = rule->text;
  } else {
    std::ostringstream os;
    os << "mock response " << std::hex << h;
    resp.text = os.str();
  }
  if (req.want_label_logprobs) {
    if (rule && rule->top_logprobs) {
      resp.label_logprobs = map_label_logprobs(*rule->top_logprobs, req.candidate_labels);
    } else {
      // Near-uniform with a small seeded perturbation.
      Rng rng(h);
      const double base = -std::log(static_cast<double>(req.candidate_labels.size()));
      std::map<std::string, double> lp;
      for (const auto& label : req.candidate_labels)
        lp[label] = base + (static_cast<double>(rng.below(2001)) - 1000.0) * 1e-5;
      resp.label_logprobs = std::move(lp);
    }
  }
  return resp;
}

std::shared_ptr<MockGateway> configure_mock(std::vector<MockRule> script,
                                            std::uint64_t fallback_seed) {
  return std::make_shared<MockGateway>(std::move(script), fallback_seed);
}

std::shared_ptr<MockGateway> load_mock_script(const std::filesystem::path& path,
                                              std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError(path.string() + ": malformed JSON");
  std::vector<MockRule> rules;
  try {
    for (const auto& r : j.value("rules", nlohmann::json::array())) {
      MockRule rule;
      if (r.contains("exact")) {
        rule.match = MockRule::Match::exact;
        rule.pattern = r["exact"].get<std::string>();
      } else {
        rule.pattern = r.at("contains").get<std::string>();
      }
      rule.text = r.value("text", std::string());
      if (r.contains("top_logprobs")) {
        std::vector<std::pair<std::string, double>> top;
        for (auto it = r["top_logprobs"].begin(); it != r["top_logprobs"].end(); ++it)
          top.emplace_back(it.key(), it.value().get<double>());
        rule.top_logprobs = std::move(top);
      }
      rules.push_back(std::move(rule));
    }
    auto seed = seed_override.value_or(j.value("fallback_seed", std::uint64_t{0}));
    return std::make_shared<MockGateway>(std::move(rules), seed,
                                         j.value("model_name", std::string("mock")),
                                         j.value("supports_logprobs", true));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

RemoteGateway::RemoteGateway(RemoteChatConfig cfg, std::shared_ptr<HttpTransport> transport)
    : cfg_(std::move(cfg)),
      transport_(std::move(transport)),
      in_flight_(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(cfg_.max_in_flight, 1, 64))) {}

ChatResponse RemoteGateway::chat(const ChatRequest& req) {
  req.validate();
  ojson body;
  body["model"] = cfg_.model;
  auto& msgs = body["messages"] = ojson::array();
  for (const auto& m : req.messages)
    msgs.push_back({{"role", std::string(role_name(m.role))}, {"content", m.content}});
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_new_tokens;
  if (req.seed) body["seed"] = *req.seed;
  if (req.want_label_logprobs) {
    body["logprobs"] = true;
    body["top_logprobs"] = cfg_.top_logprobs;
  }
  HttpHeaders headers;
  if (auto key = api_key_from_env(cfg_.api_key_env); !key.empty())
    headers.emplace_back("Authorization", "Bearer " + key);

  HttpResponse res;
  in_flight_.acquire();
  try {
    res = transport_->post_json(cfg_.base_url + "/chat/completions", body.dump(), headers);
  } catch (const TransportError& e) {
    in_flight_.release();
    throw TransientGatewayError(e.what());
  } catch (...) {
    in_flight_.release();
    throw;
  }
  in_flight_.release();

  const std::string where = cfg_.name.empty() ? cfg_.model : cfg_.name;
  if (res.status == 429 || res.status >= 500)
    throw TransientGatewayError(where + ": HTTP " + std::to_string(res.status));
  if (res.status != 200) {
    if (req.want_label_logprobs && res.status == 400 &&
        res.body.find("logprobs") != std::string::npos)
      throw LogprobsUnsupported(where + ": endpoint rejected logprobs");
    throw GatewayError(where + ": HTTP " + std::to_string(res.status) + ": " +
                       res.body.substr(0, 300));
  }

  auto j = nlohmann::json::parse(res.body, nullptr, false);
  if (j.is_discarded() || !j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty())
    throw GatewayError(where + ": malformed completion response");
  const auto& choice = j["choices"][0];
  ChatResponse out;
  out.model_name = j.value("model", cfg_.model);
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string())
    out.text = choice["message"]["content"].get<std::string>();

  if (req.want_label_logprobs) {
    const nlohmann::json* first = nullptr;
    if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
        choice["logprobs"].contains("content") && choice["logprobs"]["content"].is_array() &&
        !choice["logprobs"]["content"].empty())
      first = &choice["logprobs"]["content"][0];
    if (!first || !first->contains("top_logprobs"))
      throw LogprobsUnsupported(where + ": response carries no token logprobs");
    std::vector<std::pair<std::string, double>> top;
    for (const auto& alt : (*first)["top_logprobs"])
      top.emplace_back(alt.at("token").get<std::string>(), alt.at("logprob").get<double>());
    // The sampled token itself may be missing from the alternatives.
    if (first->contains("token") && first->contains("logprob"))
      top.emplace_back((*first)["token"].get<std::string>(), (*first)["logprob"].get<double>());
    out.label_logprobs = map_label_logprobs(top, req.candidate_labels);
  }
  return out;
}

// ---------------------------------------------------------------------------

RetryingGateway::RetryingGateway(std::shared_ptr<ChatGateway> inner, RetryPolicy policy,
                                 Sleeper sleep)
    : inner_(std::move(inner)), policy_(policy), sleep_(std::move(sleep)) {
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (policy_.max_attempts < 1) policy_.max_attempts = 1;
}

ChatResponse RetryingGateway::chat(const ChatRequest& req) {
  auto delay = policy_.initial_delay;
  for (int attempt = 1;; ++attempt) {
    try {
      return inner_->chat(req);
    } catch (const TransientGatewayError& e) {
      if (attempt >= policy_.max_attempts)
        throw GatewayError("giving up after " + std::to_string(attempt) +
                           " attempts: " + e.what());
      sleep_(delay);
      delay = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(delay.count()) * policy_.factor));
    }
  }
}

// ---------------------------------------------------------------------------

CachingGateway::CachingGateway(std::shared_ptr<ChatGateway> inner,
                               std::optional<std::filesystem::path> file)
    : inner_(std::move(inner)), file_(std::move(file)) {
  if (!file_ || !std::filesystem::exists(*file_)) return;
  std::ifstream in(*file_, std::ios::binary);
  if (!in) throw IoError("cannot open cache " + file_->string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("response"))
      throw ParseError(file_->string() + ":" + std::to_string(line_no) + ": bad cache entry");
    entries_.insert_or_assign(j["key"].get<std::string>(), response_from_json(j["response"]));
  }
}

std::size_t CachingGateway::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

ChatResponse CachingGateway::chat(const ChatRequest& req) {
  const auto key = request_key(inner_->model_name(), req);
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  ++misses_;
  ChatResponse resp = inner_->chat(req);

  std::lock_guard lock(mu_);
  auto [it, inserted] = entries_.emplace(key, resp);
  if (!inserted) return it->second;  // a concurrent caller got there first
  if (file_) {
    if (file_->has_parent_path()) std::filesystem::create_directories(file_->parent_path());
    std::ofstream out(*file_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot append to cache " + file_->string());
    ojson entry;
    entry["key"] = key;
    entry["request"] = request_to_json(req);
    entry["response"] = response_to_json(resp);
    entry["timestamp"] = static_cast<long long>(std::time(nullptr));
    out << entry.dump() << '\n';
  }
  return resp;
}

}  // namespace zebra
