#include "mergeprobe/generation.hpp"

#include <condition_variable>
#include <fstream>
#include <mutex>

#include "httplib.h"
#include "json.hpp"

namespace mergeprobe {
namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds elapsed_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

// Counting semaphore with a runtime permit count.
class Gate {
 public:
  explicit Gate(int permits) : permits_(permits) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return permits_ > 0; });
    --permits_;
  }

  void release() {
    {
      std::lock_guard lock(mu_);
      ++permits_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int permits_;
};

}  // namespace

std::string_view generation_error_name(GenerationError error) {
  switch (error) {
    case GenerationError::Timeout: return "Timeout";
    case GenerationError::Transport: return "Transport";
    case GenerationError::Malformed: return "Malformed";
  }
  return "Unknown";
}

PromptKey prompt_key(const Prompt& prompt) {
  return {prompt.scenario_id, prompt.branch, prompt.variant.variant_id, prompt.format};
}

void StubTable::put(const PromptKey& key, std::vector<std::string> responses) {
  entries_[key] = std::move(responses);
}

const std::vector<std::string>* StubTable::find(const PromptKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

StubTable StubTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open stub table: " + path.string());
  }
  nlohmann::json doc = nlohmann::json::parse(in);
  StubTable table;
  if (auto it = doc.find("default_text"); it != doc.end()) {
    table.set_default_text(it->get<std::string>());
  }
  for (const auto& entry : doc.value("entries", nlohmann::json::array())) {
    PromptKey key;
    key.scenario_id = entry.at("scenario_id").get<std::string>();
    auto branch = parse_version_key(entry.at("branch").get<std::string>());
    if (!branch) {
      throw std::runtime_error("stub table entry has unknown branch: " +
                               entry.at("branch").get<std::string>());
    }
    key.branch = *branch;
    key.variant_id = entry.at("variant_id").get<int>();
    auto format = parse_format_key(entry.at("format").get<std::string>());
    if (!format) {
      throw std::runtime_error("stub table entry has unknown format: " +
                               entry.at("format").get<std::string>());
    }
    key.format = *format;
    std::vector<std::string> responses;
    for (const auto& r : entry.at("responses")) {
      responses.push_back(r.get<std::string>());
    }
    table.put(key, std::move(responses));
  }
  return table;
}

std::vector<RawResponse> stub_generate(const Prompt& prompt, const StubTable& table,
                                       int responses_per_prompt) {
  PromptKey key = prompt_key(prompt);
  const std::vector<std::string>* canned = table.find(key);
  std::vector<RawResponse> out;
  out.reserve(static_cast<std::size_t>(responses_per_prompt));
  for (int i = 0; i < responses_per_prompt; ++i) {
    RawResponse r;
    r.prompt = key;
    r.response_index = i;
    if (canned && !canned->empty()) {
      r.text = (*canned)[static_cast<std::size_t>(i) % canned->size()];
    } else {
      r.text = table.default_text();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawResponse> StubBackend::generate(const Prompt& prompt,
                                               const GenerationConfig& cfg) {
  return stub_generate(prompt, table_, cfg.responses_per_prompt);
}

std::string chat_request_body(const Prompt& prompt, const GenerationConfig& cfg) {
  nlohmann::ordered_json body;
  body["model"] = cfg.model_name;
  body["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : prompt.messages) {
    body["messages"].push_back({{"role", std::string(role_key(m.role))},
                                {"content", m.content}});
  }
  body["stream"] = false;
  body["options"] = {{"temperature", cfg.temperature}, {"seed", cfg.seed}};
  return body.dump();
}

struct HttpBackend::Impl {
  Impl(std::string host_, int port_, int max_in_flight)
      : host(std::move(host_)), port(port_), gate(max_in_flight) {}

  std::string host;
  int port;
  Gate gate;
};

HttpBackend::HttpBackend(std::string host, int port, int max_in_flight)
    : impl_(std::make_unique<Impl>(std::move(host), port, max_in_flight < 1 ? 1 : max_in_flight)) {}

HttpBackend::~HttpBackend() = default;

std::vector<RawResponse> HttpBackend::generate(const Prompt& prompt,
                                               const GenerationConfig& cfg) {
  PromptKey key = prompt_key(prompt);
  std::string body = chat_request_body(prompt, cfg);
  auto start = Clock::now();
  auto deadline = start + cfg.timeout;

  std::vector<RawResponse> out;
  out.reserve(static_cast<std::size_t>(cfg.responses_per_prompt));
  for (int i = 0; i < cfg.responses_per_prompt; ++i) {
    RawResponse r;
    r.prompt = key;
    r.response_index = i;

    auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      // Whole-call budget exhausted: outstanding indices become timeouts.
      r.error = GenerationError::Timeout;
      r.latency = elapsed_since(start);
      out.push_back(std::move(r));
      continue;
    }

    impl_->gate.acquire();
    auto request_start = Clock::now();
    bool transport_retry_done = false;
    for (;;) {
      remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
      if (remaining.count() <= 0) {
        r.error = GenerationError::Timeout;
        break;
      }
      httplib::Client client(impl_->host, impl_->port);
      time_t sec = remaining.count() / 1000;
      time_t usec = (remaining.count() % 1000) * 1000;
      client.set_connection_timeout(sec, usec);
      client.set_read_timeout(sec, usec);
      client.set_write_timeout(sec, usec);

      auto res = client.Post("/api/chat", body, "application/json");
      if (!res) {
        if (Clock::now() >= deadline) {
          r.error = GenerationError::Timeout;
        } else if (!transport_retry_done) {
          transport_retry_done = true;
          continue;  // one retry on transport blips
        } else {
          r.error = GenerationError::Transport;
        }
        break;
      }
      if (res->status != 200) {
        r.error = GenerationError::Transport;
        break;
      }
      try {
        auto doc = nlohmann::json::parse(res->body);
        r.text = doc.at("message").at("content").get<std::string>();
      } catch (const nlohmann::json::exception&) {
        r.error = GenerationError::Malformed;
      }
      break;
    }
    r.latency = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                                      request_start);
    impl_->gate.release();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mergeprobe
