#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace claimforge {

enum class Strategy { top_k, top_p, dynamic_kp };

std::string strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct SamplerConfig {
  Strategy strategy = Strategy::dynamic_kp;
  uint32_t k = 40;        // top_k
  double p = 0.9;         // top_p
  double rho = 0.1;       // dynamic_kp: cut-off as a fraction of the top probability
  uint32_t cap = 100;     // dynamic_kp: candidate pool size
  double temperature = 1.0;
  uint64_t seed = 0;
};

void validate_sampler_config(const SamplerConfig& cfg);

/// Result of a cut-off filter: the surviving token ids (ascending) and the
/// logit vector with excluded entries forced to -inf, i.e. zero probability
/// mass.
struct FilteredLogits {
  std::vector<uint32_t> kept;
  std::vector<double> values;
};

/// Seedable, reproducible generator. The unit draw maps the top 53 bits of
/// an mt19937_64 output onto [0,1), so results are identical across
/// platforms and builds.
class Rng {
 public:
  static constexpr std::string_view kAlgorithmId = "mt19937_64/53bit";

  explicit Rng(uint64_t seed) : engine_(seed) {}

  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Deterministic seed derivation for per-sample streams (splitmix64 mixing).
uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b);

std::vector<double> softmax(std::span<const double> logits);

std::vector<double> apply_temperature(std::vector<double> logits, double temperature);

/// Keeps the k highest logits (ties to the lower index); k >= V keeps all.
FilteredLogits filter_top_k(std::span<const double> logits, uint32_t k);

/// Nucleus filter: keeps the smallest probability-sorted prefix whose
/// cumulative mass reaches p. Always contains the argmax.
FilteredLogits filter_top_p(std::span<const double> logits, double p);

/// Relative cut-off: within the top-`cap` candidates, keeps every token
/// whose probability is at least rho times the top probability. At most
/// `cap` ids survive even if more clear the threshold.
FilteredLogits filter_dynamic_kp(std::span<const double> logits, double rho = 0.1,
                                 uint32_t cap = 100);

FilteredLogits apply_strategy(std::span<const double> logits, const SamplerConfig& cfg);

/// Multinomial draw over the kept ids, renormalized. Excluded ids are never
/// returned.
uint32_t sample_token(const FilteredLogits& filtered, Rng& rng);

using LogitSource = std::function<std::vector<double>(std::span<const uint32_t>)>;

/// Sampling loop: temperature, strategy filter, draw. The output begins with
/// the prompt; an empty prompt switches to unconditional mode, which injects
/// the start token. Emits up to max_tokens new tokens and stops after
/// emitting stop_id (when given).
std::vector<uint32_t> generate(const LogitSource& next_logits, const SamplerConfig& cfg,
                               std::span<const uint32_t> prompt, size_t max_tokens,
                               std::optional<uint32_t> stop_id, Rng& rng);

}  // namespace claimforge
