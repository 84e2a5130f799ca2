#pragma once

// Response collection against a chat-completions style HTTP endpoint.
//
// Request body (POST to the configured URL):
//   {"model": <model>, "messages": [{"role": "system", "content": <system>},
//    {"role": "user", "content": <user>}], "temperature": <t>, "max_tokens": <n>}
// Reply fields read: choices[0].message.content (text, null treated as empty)
// and choices[0].finish_reason ("length" marks the response truncated).
// The bearer credential, if any, comes from NUMERALKIT_API_KEY.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include <httplib.h>

#include "numeralkit/records.hpp"

namespace numeralkit {

struct RunConfig {
  std::string endpoint;  // e.g. http://localhost:8000/v1/chat/completions
  std::string model;
  std::optional<double> temperature;  // default depends on the suite track
  int max_tokens = 512;
  double timeout_seconds = 60.0;
  int retries = 3;
  int concurrency = 4;
  int backoff_ms = 500;

  /// 0.7 for script suites, 0.3 for format suites unless configured.
  double temperature_for(const Variant& v) const {
    if (temperature) return *temperature;
    return std::holds_alternative<ScriptId>(v) ? 0.7 : 0.3;
  }
};

inline void validate(const RunConfig& c) {
  auto bad = [](const std::string& why) { return Error(ErrorKind::ConfigError, why); };
  if (c.endpoint.rfind("http://", 0) != 0 && c.endpoint.rfind("https://", 0) != 0)
    throw bad("endpoint must be an http:// or https:// URL");
  if (c.model.empty()) throw bad("model is required");
  if (c.temperature && !(*c.temperature >= 0.0 && *c.temperature <= 2.0)) throw bad("temperature must lie in [0, 2]");
  if (c.max_tokens < 1) throw bad("max_tokens must be positive");
  if (!(c.timeout_seconds > 0)) throw bad("timeout_seconds must be positive");
  if (c.retries < 0) throw bad("retries must be nonnegative");
  if (c.concurrency < 1) throw bad("concurrency must be at least 1");
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.endpoint = j.at("endpoint").get<std::string>();
    c.model = j.at("model").get<std::string>();
    if (j.contains("temperature") && !j["temperature"].is_null()) c.temperature = j["temperature"].get<double>();
    c.max_tokens = j.value("max_tokens", c.max_tokens);
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
    c.retries = j.value("retries", c.retries);
    c.concurrency = j.value("concurrency", c.concurrency);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("run config: ") + e.what());
  }
  validate(c);
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open run config '" + path + "'");
  try {
    return run_config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, "run config '" + path + "': " + e.what());
  }
}

namespace detail {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

inline Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

struct Reply {
  std::string text;
  bool truncated = false;
};

inline Reply parse_reply(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
    const auto& choice = j.at("choices").at(0);
    Reply r;
    const auto& content = choice.at("message").at("content");
    r.text = content.is_null() ? std::string() : content.get<std::string>();
    r.truncated = choice.contains("finish_reason") && choice["finish_reason"] == "length";
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Network, std::string("malformed completion reply: ") + e.what());
  }
}

inline std::string response_key(std::int64_t case_id, const Variant& v, PromptStrategy s) {
  return std::to_string(case_id) + "\t" + variant_name(v) + "\t" + std::string(strategy_name(s));
}

}  // namespace detail

struct CollectStats {
  std::size_t requests = 0;       // HTTP requests issued, retries included
  std::size_t collected = 0;      // new responses
  std::size_t skipped = 0;        // already present
};

/// Sends every prompt lacking a response for cfg.model and returns the
/// merged response list ordered by case id. On a hard failure the responses
/// gathered so far are passed to `on_partial` before the error propagates.
inline std::vector<ModelResponse> collect(const std::vector<RenderedPrompt>& suite, const RunConfig& cfg,
                                          std::vector<ModelResponse> existing, CollectStats* stats = nullptr,
                                          const std::function<void(const std::vector<ModelResponse>&)>& on_partial = {}) {
  validate(cfg);
  std::set<std::string> done;
  for (const auto& r : existing)
    if (r.model_id == cfg.model) done.insert(detail::response_key(r.case_id, r.variant, r.strategy));
  std::vector<const RenderedPrompt*> pending;
  for (const auto& p : suite)
    if (!done.count(detail::response_key(p.case_id, p.variant, p.strategy))) pending.push_back(&p);
  CollectStats local;
  local.skipped = suite.size() - pending.size();

  const auto ep = detail::split_url(cfg.endpoint);
  const char* key = std::getenv("NUMERALKIT_API_KEY");
  std::atomic<std::size_t> next{0}, requests{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::vector<ModelResponse> fresh;
  std::optional<Error> first_error;

  auto worker = [&] {
    httplib::Client client(ep.origin);
    const auto timeout = std::chrono::duration<double>(cfg.timeout_seconds);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    if (key && *key) client.set_bearer_token_auth(key);
    for (;;) {
      if (failed) return;
      const std::size_t i = next++;
      if (i >= pending.size()) return;
      const RenderedPrompt& p = *pending[i];
      const nlohmann::json body = {
          {"model", cfg.model},
          {"messages", {{{"role", "system"}, {"content", p.system_text}}, {{"role", "user"}, {"content", p.user_text}}}},
          {"temperature", cfg.temperature_for(p.variant)},
          {"max_tokens", cfg.max_tokens}};
      const std::string payload = body.dump();
      std::string last_problem;
      bool ok = false;
      for (int attempt = 0; attempt <= cfg.retries && !failed; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(cfg.backoff_ms << (attempt - 1)));
        ++requests;
        auto res = client.Post(ep.path, payload, "application/json");
        if (!res) {
          last_problem = "request failed: " + httplib::to_string(res.error());
          continue;
        }
        if (res->status == 429 || res->status >= 500) {
          last_problem = "HTTP " + std::to_string(res->status);
          continue;
        }
        if (res->status != 200) {
          last_problem = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
          break;  // client errors are not retried
        }
        try {
          const auto reply = detail::parse_reply(res->body);
          std::lock_guard<std::mutex> lock(mu);
          fresh.push_back(ModelResponse{p.case_id, p.variant, p.strategy, cfg.model, reply.text, reply.truncated});
          ok = true;
        } catch (const Error& e) {
          last_problem = e.what();
        }
        if (ok) break;
      }
      if (!ok) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error)
          first_error = Error(ErrorKind::Network, "case " + std::to_string(p.case_id) + " (" + variant_name(p.variant) +
                                                      ", " + std::string(strategy_name(p.strategy)) + "): " + last_problem);
        failed = true;
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  const int n = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.concurrency), pending.size()));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  local.requests = requests;
  local.collected = fresh.size();
  if (stats) *stats = local;

  std::vector<ModelResponse> merged = std::move(existing);
  merged.insert(merged.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
  std::stable_sort(merged.begin(), merged.end(), [](const ModelResponse& a, const ModelResponse& b) {
    return std::make_tuple(a.case_id, a.model_id, variant_name(a.variant), static_cast<int>(a.strategy)) <
           std::make_tuple(b.case_id, b.model_id, variant_name(b.variant), static_cast<int>(b.strategy));
  });
  if (first_error) {
    if (on_partial) on_partial(merged);
    throw *first_error;
  }
  return merged;
}

}  // namespace numeralkit
