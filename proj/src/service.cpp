#include "claimforge/service.hpp"

#include <httplib.h>

#include <random>

#include "claimforge/segmenter.hpp"
#include "claimforge/special_tokens.hpp"

namespace claimforge {

namespace {

using nlohmann::json;

HandlerResult field_error(const std::string& field, const std::string& message) {
  return HandlerResult{400, json{{"error", message}, {"field", field}}};
}

bool whitespace_only(std::string_view s) {
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') return false;
  }
  return true;
}

uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

// Parsed and validated /v1/generate request.
struct ParsedRequest {
  std::string prompt;
  bool unconditional = true;
  size_t num_samples = 1;
  size_t max_tokens = 0;  // filled with the config default
  SamplerConfig sampler;
  bool seed_given = false;
};

constexpr const char* kKnownFields[] = {"prompt", "num_samples", "max_tokens", "strategy",
                                        "k",      "p",           "rho",        "cap",
                                        "temperature", "seed"};

bool parse_request(const json& request, const ServiceConfig& cfg, ParsedRequest& out,
                   HandlerResult& error) {
  if (!request.is_object()) {
    error = HandlerResult{400, json{{"error", "request body must be a JSON object"}}};
    return false;
  }
  for (const auto& [key, value] : request.items()) {
    bool known = false;
    for (const char* field : kKnownFields) known |= key == field;
    if (!known) {
      error = field_error(key, "unknown field: " + key);
      return false;
    }
  }

  out.max_tokens = cfg.default_max_tokens;

  if (auto it = request.find("prompt"); it != request.end() && !it->is_null()) {
    if (!it->is_string()) {
      error = field_error("prompt", "prompt must be a string or null");
      return false;
    }
    out.prompt = it->get<std::string>();
    out.unconditional = out.prompt.empty() || whitespace_only(out.prompt);
  }
  if (auto it = request.find("num_samples"); it != request.end()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      error = field_error("num_samples", "num_samples must be an integer");
      return false;
    }
    const int64_t n = it->get<int64_t>();
    if (n < 1 || n > static_cast<int64_t>(cfg.max_samples)) {
      error = field_error("num_samples", "num_samples must be between 1 and " +
                                             std::to_string(cfg.max_samples));
      return false;
    }
    out.num_samples = static_cast<size_t>(n);
  }
  if (auto it = request.find("max_tokens"); it != request.end()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      error = field_error("max_tokens", "max_tokens must be an integer");
      return false;
    }
    const int64_t n = it->get<int64_t>();
    if (n < 1 || n > static_cast<int64_t>(cfg.context_window)) {
      error = field_error("max_tokens", "max_tokens must be between 1 and context_window (" +
                                            std::to_string(cfg.context_window) + ")");
      return false;
    }
    out.max_tokens = static_cast<size_t>(n);
  }
  if (auto it = request.find("strategy"); it != request.end()) {
    if (!it->is_string()) {
      error = field_error("strategy", "strategy must be a string");
      return false;
    }
    auto parsed = parse_strategy(it->get<std::string>());
    if (!parsed) {
      error = field_error("strategy", "strategy must be top_k, top_p, or dynamic_kp");
      return false;
    }
    out.sampler.strategy = *parsed;
  }
  if (auto it = request.find("k"); it != request.end()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      error = field_error("k", "k must be an integer");
      return false;
    }
    const int64_t k = it->get<int64_t>();
    if (k < 1) {
      error = field_error("k", "k must be >= 1");
      return false;
    }
    out.sampler.k = static_cast<uint32_t>(k);
  }
  if (auto it = request.find("p"); it != request.end()) {
    if (!it->is_number()) {
      error = field_error("p", "p must be a number");
      return false;
    }
    out.sampler.p = it->get<double>();
    if (!(out.sampler.p > 0.0 && out.sampler.p <= 1.0)) {
      error = field_error("p", "p must be in (0,1]");
      return false;
    }
  }
  if (auto it = request.find("rho"); it != request.end()) {
    if (!it->is_number()) {
      error = field_error("rho", "rho must be a number");
      return false;
    }
    out.sampler.rho = it->get<double>();
    if (!(out.sampler.rho > 0.0 && out.sampler.rho <= 1.0)) {
      error = field_error("rho", "rho must be in (0,1]");
      return false;
    }
  }
  if (auto it = request.find("cap"); it != request.end()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      error = field_error("cap", "cap must be an integer");
      return false;
    }
    const int64_t cap = it->get<int64_t>();
    if (cap < 1) {
      error = field_error("cap", "cap must be >= 1");
      return false;
    }
    out.sampler.cap = static_cast<uint32_t>(cap);
  }
  if (auto it = request.find("temperature"); it != request.end()) {
    if (!it->is_number()) {
      error = field_error("temperature", "temperature must be a number");
      return false;
    }
    out.sampler.temperature = it->get<double>();
    if (!(out.sampler.temperature > 0.0)) {
      error = field_error("temperature", "temperature must be > 0");
      return false;
    }
  }
  if (auto it = request.find("seed"); it != request.end() && !it->is_null()) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      error = field_error("seed", "seed must be an integer");
      return false;
    }
    out.sampler.seed = it->is_number_unsigned()
                           ? it->get<uint64_t>()
                           : static_cast<uint64_t>(it->get<int64_t>());
    out.seed_given = true;
  }
  return true;
}

json strategy_echo(const SamplerConfig& cfg) {
  json echo{{"strategy", strategy_name(cfg.strategy)}, {"temperature", cfg.temperature}};
  switch (cfg.strategy) {
    case Strategy::top_k:
      echo["k"] = cfg.k;
      break;
    case Strategy::top_p:
      echo["p"] = cfg.p;
      break;
    case Strategy::dynamic_kp:
      echo["rho"] = cfg.rho;
      echo["cap"] = cfg.cap;
      break;
  }
  return echo;
}

}  // namespace

std::vector<uint32_t> truncate_prompt(std::span<const uint32_t> prompt_ids,
                                      uint32_t context_window) {
  if (context_window < 2) throw std::invalid_argument("truncate_prompt: context_window must be >= 2");
  const size_t keep = context_window / 2;
  if (prompt_ids.size() <= keep) return {prompt_ids.begin(), prompt_ids.end()};
  return {prompt_ids.begin(), prompt_ids.begin() + keep};
}

HandlerResult handle_generate(const std::shared_ptr<const ModelSnapshot>& snapshot,
                              const ServiceConfig& cfg, const nlohmann::json& request) {
  if (!snapshot) {
    return HandlerResult{503, json{{"error", "model not loaded"}}};
  }
  ParsedRequest parsed;
  HandlerResult error;
  if (!parse_request(request, cfg, parsed, error)) return error;
  if (!parsed.seed_given) parsed.sampler.seed = random_seed();

  std::vector<uint32_t> prompt_ids;
  if (!parsed.unconditional) {
    prompt_ids = truncate_prompt(encode(snapshot->vocab, parsed.prompt), cfg.context_window);
  }

  const NGramModel& model = snapshot->model;
  const LogitSource logits = [&model](std::span<const uint32_t> ctx) {
    return model.next_log_distribution(ctx);
  };

  json samples = json::array();
  for (size_t i = 0; i < parsed.num_samples; ++i) {
    Rng rng{parsed.sampler.seed + i};
    const std::vector<uint32_t> sequence =
        generate(logits, parsed.sampler, prompt_ids, parsed.max_tokens, kEndId, rng);
    const std::string raw_text = decode(snapshot->vocab, sequence);
    json claims = json::array();
    for (const ExtractedClaim& claim : extract_claims(raw_text)) {
      claims.push_back(
          json{{"text", claim.text}, {"spans", claim.spans}, {"complete", claim.complete}});
    }
    samples.push_back(json{{"raw_text", raw_text},
                           {"claims", std::move(claims)},
                           {"token_count", sequence.size()}});
  }

  json body{{"samples", std::move(samples)},
            {"model_step", snapshot->step},
            {"strategy_echo", strategy_echo(parsed.sampler)},
            {"effective_prompt_tokens", prompt_ids.size()}};
  return HandlerResult{200, std::move(body)};
}

HandlerResult handle_health(const std::shared_ptr<const ModelSnapshot>& snapshot) {
  if (!snapshot) {
    return HandlerResult{503, json{{"error", "model not loaded"}}};
  }
  return HandlerResult{200, json{{"status", "ok"}, {"model_step", snapshot->step}}};
}

struct GenerationService::Impl {
  httplib::Server server;
};

GenerationService::GenerationService(ServiceConfig cfg,
                                     std::shared_ptr<const ModelSnapshot> snapshot)
    : cfg_(cfg), snapshot_(std::move(snapshot)), impl_(std::make_unique<Impl>()) {
  impl_->server.Post("/v1/generate", [this](const httplib::Request& req, httplib::Response& res) {
    HandlerResult result;
    json request = json::parse(req.body, nullptr, false);
    if (request.is_discarded()) {
      result = HandlerResult{400, json{{"error", "request body is not valid JSON"}}};
    } else {
      result = handle_generate(this->snapshot(), cfg_, request);
    }
    res.status = result.status;
    res.set_content(result.body.dump(), "application/json");
  });
  impl_->server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    HandlerResult result = handle_health(this->snapshot());
    res.status = result.status;
    res.set_content(result.body.dump(), "application/json");
  });
}

GenerationService::~GenerationService() = default;

void GenerationService::swap_snapshot(std::shared_ptr<const ModelSnapshot> snapshot) {
  std::lock_guard lock{mutex_};
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const ModelSnapshot> GenerationService::snapshot() const {
  std::lock_guard lock{mutex_};
  return snapshot_;
}

int GenerationService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void GenerationService::listen_after_bind() { impl_->server.listen_after_bind(); }

void GenerationService::stop() { impl_->server.stop(); }

}  // namespace claimforge
