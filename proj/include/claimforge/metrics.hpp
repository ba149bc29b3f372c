#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "claimforge/archive.hpp"
#include "claimforge/lm.hpp"
#include "claimforge/sampling.hpp"
#include "claimforge/segmenter.hpp"

namespace claimforge {

/// Special-tag occurrences across one probe batch, counted over token ids.
struct TagStats {
  uint64_t step = 0;
  size_t samples = 0;
  size_t tokens_per_sample = 0;
  uint64_t start_count = 0;
  uint64_t sep_count = 0;
  uint64_t end_count = 0;
  // Not part of the CSV schema; used by the shape checks.
  size_t samples_with_end = 0;
};

TagStats count_special_tags(const std::vector<std::vector<uint32_t>>& sequences,
                            std::array<uint32_t, 3> special_ids = {kStartId, kSepId, kEndId});

struct ProbeConfig {
  uint64_t checkpoint_every = 10;
  size_t samples_per_checkpoint = 20;
  size_t tokens_per_sample = 64;
};

struct AdaptationResult {
  std::vector<TagStats> tag_rows;
  std::vector<LossRow> loss_rows;
  NGramModel final_model;
};

/// Trains one pass over the archive, alternating training batches with
/// generation probes: one TagStats row per checkpoint starting at step 0
/// (untrained), plus train/heldout cross-entropy rows at the same steps.
/// Probe sample i at step s uses seed derive_seed(sampler.seed, s, i), so
/// the whole run is reproducible. Probes generate exactly
/// tokens_per_sample tokens (no stop token).
AdaptationResult adaptation_run(const TokenArchive& archive, const TrainConfig& train_cfg,
                                const SamplerConfig& sampler_cfg, const ProbeConfig& probe_cfg);

/// Aggregate statistics over extracted claims. Token length is the
/// whitespace-delimited word count of the claim text; duplicate spans are
/// exact repeats (beyond the first occurrence) within one claim.
struct SampleQuality {
  size_t claim_count = 0;
  size_t complete_count = 0;
  double mean_token_length = 0.0;
  size_t max_token_length = 0;
  double mean_span_count = 0.0;
  size_t max_span_count = 0;
  size_t exact_duplicate_span_count = 0;
};

SampleQuality sample_quality(const std::vector<ExtractedClaim>& claims);

// Plot-ready CSV renderings.
std::string tag_stats_csv(const std::vector<TagStats>& rows);
std::string sample_quality_csv(const SampleQuality& quality);

/// Tail slice of the archive held out for evaluation; the rest trains.
struct ArchiveSplit {
  std::vector<std::vector<uint32_t>> train;
  std::vector<std::vector<uint32_t>> heldout;
};
ArchiveSplit split_archive(const TokenArchive& archive, double heldout_fraction);

}  // namespace claimforge
