#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "claimforge/binio.hpp"

namespace claimforge {

/// Training settings plus provenance metadata. `learning_rate` and
/// `batch_size` record the gradient-training settings this model family
/// replaces; no computation reads them.
struct TrainConfig {
  uint32_t order = 4;
  // Interpolation weights, highest order first, uniform term last
  // (order + 1 entries). Must sum to 1; the uniform weight must be > 0.
  std::vector<double> weights = {0.5, 0.25, 0.13, 0.09, 0.03};
  uint64_t checkpoint_interval = 100;
  double heldout_fraction = 0.0;
  uint64_t seed = 0;
  double learning_rate = 1e-4;
  uint64_t batch_size = 1;

  bool operator==(const TrainConfig&) const = default;
};

/// Throws std::invalid_argument when a TrainConfig invariant fails.
void validate_train_config(const TrainConfig& cfg);

/// Interpolated n-gram model over token ids. Every token keeps probability
/// at least uniform_weight / vocab_size, so log probabilities stay finite.
class NGramModel {
 public:
  NGramModel(uint32_t vocab_size, TrainConfig cfg);

  uint32_t vocab_size() const { return vocab_size_; }
  const TrainConfig& config() const { return cfg_; }

  /// Adds every k-gram (k = 1..order) of the sequence to the count tables.
  /// Throws std::out_of_range before mutating anything if an id is >= V.
  void update(std::span<const uint32_t> sequence);

  /// p(token | context) for all tokens; uses at most the last order-1
  /// context tokens. Sums to 1 within 1e-9.
  std::vector<double> next_distribution(std::span<const uint32_t> context) const;

  /// Single-token probability; identical arithmetic to next_distribution.
  double token_probability(std::span<const uint32_t> context, uint32_t token) const;

  /// Natural-log probabilities, for the sampling layer.
  std::vector<double> next_log_distribution(std::span<const uint32_t> context) const;

  /// Mean negative log probability per token; every sequence's first token
  /// is scored against the empty context.
  double cross_entropy(const std::vector<std::vector<uint32_t>>& sequences) const;

  bool operator==(const NGramModel& other) const = default;

 private:
  struct ContextCounts {
    std::map<uint32_t, uint64_t> next;
    uint64_t total = 0;
    bool operator==(const ContextCounts&) const = default;
  };
  using Table = std::map<std::vector<uint32_t>, ContextCounts>;

  // Effective per-term weights for a context: unseen higher-order terms
  // cascade their weight downward, ending at the uniform term.
  struct TermWeights {
    // entry L = weight for the context-length-L table (L = 0..order-1)
    std::vector<double> table_weight;
    double uniform_weight = 0.0;
    std::vector<const ContextCounts*> counts;  // nullptr when inactive
  };
  TermWeights resolve_weights(std::span<const uint32_t> context) const;

  uint32_t vocab_size_;
  TrainConfig cfg_;
  std::vector<Table> tables_;  // index = context length, 0..order-1

  friend struct CheckpointCodec;
};

/// A persisted model snapshot.
struct Checkpoint {
  NGramModel model;
  uint64_t step = 0;
  uint64_t created_at = 0;  // unix seconds
};

inline constexpr std::string_view kCheckpointMagic = "PCCK";
inline constexpr uint16_t kCheckpointVersion = 1;

/// Checkpoint file: magic "PCCK", u16 version, serialized TrainConfig,
/// u32 vocab_size, u64 step, u64 created_at, count tables as
/// length-prefixed arrays in canonical (sorted) order, trailing CRC-32
/// over all bytes after the magic.
void save_checkpoint(const std::string& path, const NGramModel& model, uint64_t step,
                     uint64_t created_at);
Checkpoint load_checkpoint(const std::string& path);

std::vector<uint8_t> serialize_checkpoint(const NGramModel& model, uint64_t step,
                                          uint64_t created_at);
Checkpoint parse_checkpoint(std::span<const uint8_t> data, const std::string& context);

/// One loss-log record; the CSV schema is step,split,cross_entropy_nats.
struct LossRow {
  uint64_t step = 0;
  std::string split;  // "train" or "heldout"
  double cross_entropy_nats = 0.0;
};

std::string loss_csv(const std::vector<LossRow>& rows);

}  // namespace claimforge
