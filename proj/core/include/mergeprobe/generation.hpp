#ifndef MERGEPROBE_GENERATION_HPP_
#define MERGEPROBE_GENERATION_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mergeprobe/prompt.hpp"

namespace mergeprobe {

struct GenerationConfig {
  std::string model_name = "codellama:70b";
  double temperature = 0.0;
  int seed = 42;
  int responses_per_prompt = 1;
  std::chrono::milliseconds timeout{300000};  // whole-call budget
};

enum class GenerationError { Timeout, Transport, Malformed };

std::string_view generation_error_name(GenerationError error);

/// Identity of the prompt a response answers; keys the stub table and lets
/// out-of-order arrival never affect attribution.
struct PromptKey {
  std::string scenario_id;
  VersionId branch = VersionId::Left;
  int variant_id = 1;
  PromptFormat format = PromptFormat::ZeroShot;

  auto operator<=>(const PromptKey&) const = default;
};

PromptKey prompt_key(const Prompt& prompt);

struct RawResponse {
  PromptKey prompt;
  int response_index = 0;
  std::string text;  // meaningful only when !error
  std::chrono::milliseconds latency{0};
  std::optional<GenerationError> error;
};

class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;
  virtual std::string name() const = 0;

  /// Returns exactly cfg.responses_per_prompt entries; every failure is a
  /// per-response error, never an exception.
  virtual std::vector<RawResponse> generate(const Prompt& prompt,
                                            const GenerationConfig& cfg) = 0;
};

/// Canned-response table for offline runs: (scenario, branch, variant,
/// format) → response texts. Missing keys yield a configurable default text
/// so downstream sanitization paths still run.
class StubTable {
 public:
  void put(const PromptKey& key, std::vector<std::string> responses);
  const std::vector<std::string>* find(const PromptKey& key) const;

  void set_default_text(std::string text) { default_text_ = std::move(text); }
  const std::string& default_text() const { return default_text_; }

  /// File format: {"default_text": optional string, "entries": [{
  ///   "scenario_id", "branch", "variant_id", "format", "responses": [..]}]}
  static StubTable load(const std::filesystem::path& path);

 private:
  std::map<PromptKey, std::vector<std::string>> entries_;
  std::string default_text_ = "I cannot help with that.";
};

/// Table lookup as a free function: response i takes text i % n of the
/// matched entry. Latency is always zero.
std::vector<RawResponse> stub_generate(const Prompt& prompt, const StubTable& table,
                                       int responses_per_prompt = 1);

class StubBackend : public GenerationBackend {
 public:
  explicit StubBackend(StubTable table) : table_(std::move(table)) {}

  std::string name() const override { return "stub"; }
  std::vector<RawResponse> generate(const Prompt& prompt,
                                    const GenerationConfig& cfg) override;

  const StubTable& table() const { return table_; }

 private:
  StubTable table_;
};

/// Serialized chat request: {"model", "messages":[{"role","content"}...],
/// "stream": false, "options": {"temperature", "seed"}}. The exact bytes are
/// golden-tested; key order is fixed.
std::string chat_request_body(const Prompt& prompt, const GenerationConfig& cfg);

/// Chat endpoint client. POSTs to `/api/chat`; one retry on transport
/// errors, none on timeout. At most `max_in_flight` concurrent requests.
class HttpBackend : public GenerationBackend {
 public:
  HttpBackend(std::string host, int port, int max_in_flight = 1);
  ~HttpBackend() override;

  std::string name() const override { return "http"; }
  std::vector<RawResponse> generate(const Prompt& prompt,
                                    const GenerationConfig& cfg) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mergeprobe

#endif  // MERGEPROBE_GENERATION_HPP_
