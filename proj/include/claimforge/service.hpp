#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimforge/lm.hpp"
#include "claimforge/sampling.hpp"
#include "claimforge/tokenizer.hpp"

namespace claimforge {

/// Immutable model state shared by concurrent requests.
struct ModelSnapshot {
  NGramModel model;
  SubwordModel vocab;
  uint64_t step = 0;
};

struct ServiceConfig {
  uint32_t context_window = 1024;
  size_t max_samples = 30;
  size_t default_max_tokens = 256;
};

/// Keeps the leading floor(C/2) tokens when the prompt is longer, so half
/// the window stays free for generation.
std::vector<uint32_t> truncate_prompt(std::span<const uint32_t> prompt_ids,
                                      uint32_t context_window);

struct HandlerResult {
  int status = 200;
  nlohmann::json body;
};

/// POST /v1/generate body handler. Unknown fields and invariant violations
/// come back as 400 with the offending field name; a missing snapshot is
/// 503.
HandlerResult handle_generate(const std::shared_ptr<const ModelSnapshot>& snapshot,
                              const ServiceConfig& cfg, const nlohmann::json& request);

HandlerResult handle_health(const std::shared_ptr<const ModelSnapshot>& snapshot);

/// HTTP endpoint wrapper. Requests share the current snapshot read-only;
/// swap_snapshot replaces it atomically between requests.
class GenerationService {
 public:
  GenerationService(ServiceConfig cfg, std::shared_ptr<const ModelSnapshot> snapshot);
  ~GenerationService();

  void swap_snapshot(std::shared_ptr<const ModelSnapshot> snapshot);
  std::shared_ptr<const ModelSnapshot> snapshot() const;
  const ServiceConfig& config() const { return cfg_; }

  /// Binds to host:port (port 0 picks a free port). Returns the bound port
  /// or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind.
  void listen_after_bind();
  void stop();

 private:
  struct Impl;

  ServiceConfig cfg_;
  mutable std::mutex mutex_;
  std::shared_ptr<const ModelSnapshot> snapshot_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace claimforge
