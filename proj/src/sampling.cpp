#include "claimforge/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "claimforge/special_tokens.hpp"

namespace claimforge {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Indices ordered by value descending, ties to the lower index.
std::vector<uint32_t> order_desc(std::span<const double> values) {
  std::vector<uint32_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&values](uint32_t a, uint32_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  return idx;
}

FilteredLogits keep_ids(std::span<const double> logits, std::vector<uint32_t> kept) {
  std::sort(kept.begin(), kept.end());
  FilteredLogits out;
  out.values.assign(logits.size(), kNegInf);
  for (uint32_t id : kept) out.values[id] = logits[id];
  out.kept = std::move(kept);
  return out;
}

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::top_k: return "top_k";
    case Strategy::top_p: return "top_p";
    case Strategy::dynamic_kp: return "dynamic_kp";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "top_k") return Strategy::top_k;
  if (name == "top_p") return Strategy::top_p;
  if (name == "dynamic_kp") return Strategy::dynamic_kp;
  return std::nullopt;
}

void validate_sampler_config(const SamplerConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("sampler config: k must be >= 1");
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("sampler config: p must be in (0,1]");
  if (!(cfg.rho > 0.0 && cfg.rho <= 1.0)) {
    throw std::invalid_argument("sampler config: rho must be in (0,1]");
  }
  if (cfg.cap < 1) throw std::invalid_argument("sampler config: cap must be >= 1");
  if (!(cfg.temperature > 0.0)) {
    throw std::invalid_argument("sampler config: temperature must be > 0");
  }
}

uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b) {
  auto mix = [](uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  };
  return mix(mix(base ^ mix(a)) ^ mix(b));
}

std::vector<double> softmax(std::span<const double> logits) {
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  std::vector<double> probs(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - max_logit);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<double> apply_temperature(std::vector<double> logits, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  for (double& v : logits) v /= temperature;
  return logits;
}

FilteredLogits filter_top_k(std::span<const double> logits, uint32_t k) {
  if (k < 1) throw std::invalid_argument("filter_top_k: k must be >= 1");
  if (logits.empty()) throw std::invalid_argument("filter_top_k: empty logits");
  std::vector<uint32_t> order = order_desc(logits);
  const size_t keep = std::min<size_t>(k, order.size());
  order.resize(keep);
  return keep_ids(logits, std::move(order));
}

FilteredLogits filter_top_p(std::span<const double> logits, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("filter_top_p: p must be in (0,1]");
  if (logits.empty()) throw std::invalid_argument("filter_top_p: empty logits");
  const std::vector<double> probs = softmax(logits);
  const std::vector<uint32_t> order = order_desc(probs);
  std::vector<uint32_t> kept;
  double cumulative = 0.0;
  for (uint32_t id : order) {
    kept.push_back(id);
    cumulative += probs[id];
    if (cumulative >= p) break;
  }
  return keep_ids(logits, std::move(kept));
}

FilteredLogits filter_dynamic_kp(std::span<const double> logits, double rho, uint32_t cap) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("filter_dynamic_kp: rho must be in (0,1]");
  }
  if (cap < 1) throw std::invalid_argument("filter_dynamic_kp: cap must be >= 1");
  if (logits.empty()) throw std::invalid_argument("filter_dynamic_kp: empty logits");
  const std::vector<double> probs = softmax(logits);
  std::vector<uint32_t> order = order_desc(probs);
  if (order.size() > cap) order.resize(cap);  // the cut-off only sees the top-cap pool
  const double threshold = rho * probs[order.front()];
  uint32_t surviving = 0;
  for (uint32_t id : order) {
    if (probs[id] >= threshold) ++surviving;
  }
  return filter_top_k(logits, surviving);
}

FilteredLogits apply_strategy(std::span<const double> logits, const SamplerConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::top_k: return filter_top_k(logits, cfg.k);
    case Strategy::top_p: return filter_top_p(logits, cfg.p);
    case Strategy::dynamic_kp: return filter_dynamic_kp(logits, cfg.rho, cfg.cap);
  }
  throw std::logic_error("unreachable strategy");
}

uint32_t sample_token(const FilteredLogits& filtered, Rng& rng) {
  if (filtered.kept.empty()) throw std::invalid_argument("sample_token: empty kept set");
  double max_kept = kNegInf;
  for (uint32_t id : filtered.kept) max_kept = std::max(max_kept, filtered.values[id]);
  std::vector<double> weights(filtered.kept.size());
  double sum = 0.0;
  for (size_t i = 0; i < filtered.kept.size(); ++i) {
    weights[i] = std::exp(filtered.values[filtered.kept[i]] - max_kept);
    sum += weights[i];
  }
  const double target = rng.next_unit() * sum;
  double cumulative = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (target < cumulative) return filtered.kept[i];
  }
  return filtered.kept.back();  // target == sum after rounding
}

std::vector<uint32_t> generate(const LogitSource& next_logits, const SamplerConfig& cfg,
                               std::span<const uint32_t> prompt, size_t max_tokens,
                               std::optional<uint32_t> stop_id, Rng& rng) {
  validate_sampler_config(cfg);
  if (max_tokens < 1) throw std::invalid_argument("generate: max_tokens must be >= 1");
  std::vector<uint32_t> out(prompt.begin(), prompt.end());
  if (out.empty()) out.push_back(kStartId);
  for (size_t n = 0; n < max_tokens; ++n) {
    std::vector<double> logits = next_logits(out);
    logits = apply_temperature(std::move(logits), cfg.temperature);
    const FilteredLogits filtered = apply_strategy(logits, cfg);
    const uint32_t token = sample_token(filtered, rng);
    out.push_back(token);
    if (stop_id && token == *stop_id) break;
  }
  return out;
}

}  // namespace claimforge
