#include "claimforge/metrics.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace claimforge {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

size_t word_count(std::string_view text) {
  size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool ws = c == ' ' || c == '\t';
    if (!ws && !in_word) ++count;
    in_word = !ws;
  }
  return count;
}

}  // namespace

TagStats count_special_tags(const std::vector<std::vector<uint32_t>>& sequences,
                            std::array<uint32_t, 3> special_ids) {
  TagStats stats;
  stats.samples = sequences.size();
  for (const auto& seq : sequences) {
    bool has_end = false;
    for (uint32_t id : seq) {
      if (id == special_ids[0]) ++stats.start_count;
      if (id == special_ids[1]) ++stats.sep_count;
      if (id == special_ids[2]) {
        ++stats.end_count;
        has_end = true;
      }
    }
    if (has_end) ++stats.samples_with_end;
  }
  return stats;
}

ArchiveSplit split_archive(const TokenArchive& archive, double heldout_fraction) {
  if (heldout_fraction < 0.0 || heldout_fraction >= 1.0) {
    throw std::invalid_argument("split_archive: heldout_fraction must be in [0,1)");
  }
  const size_t n = archive.sequences.size();
  const size_t heldout = static_cast<size_t>(std::floor(heldout_fraction * static_cast<double>(n)));
  ArchiveSplit split;
  split.train.assign(archive.sequences.begin(), archive.sequences.end() - heldout);
  split.heldout.assign(archive.sequences.end() - heldout, archive.sequences.end());
  return split;
}

AdaptationResult adaptation_run(const TokenArchive& archive, const TrainConfig& train_cfg,
                                const SamplerConfig& sampler_cfg, const ProbeConfig& probe_cfg) {
  if (archive.sequences.empty()) throw std::invalid_argument("adaptation_run: empty archive");
  if (probe_cfg.checkpoint_every < 1) {
    throw std::invalid_argument("adaptation_run: checkpoint_every must be >= 1");
  }
  validate_sampler_config(sampler_cfg);

  ArchiveSplit split = split_archive(archive, train_cfg.heldout_fraction);
  AdaptationResult result{.tag_rows = {},
                          .loss_rows = {},
                          .final_model = NGramModel{archive.vocab_size, train_cfg}};
  NGramModel& model = result.final_model;

  const LogitSource logits = [&model](std::span<const uint32_t> ctx) {
    return model.next_log_distribution(ctx);
  };

  auto probe = [&](uint64_t step) {
    std::vector<std::vector<uint32_t>> batch;
    batch.reserve(probe_cfg.samples_per_checkpoint);
    for (size_t i = 0; i < probe_cfg.samples_per_checkpoint; ++i) {
      Rng rng{derive_seed(sampler_cfg.seed, step, i)};
      batch.push_back(
          generate(logits, sampler_cfg, {}, probe_cfg.tokens_per_sample, std::nullopt, rng));
    }
    TagStats row = count_special_tags(batch);
    row.step = step;
    row.tokens_per_sample = probe_cfg.tokens_per_sample;
    result.tag_rows.push_back(row);

    result.loss_rows.push_back(LossRow{step, "train", model.cross_entropy(split.train)});
    if (!split.heldout.empty()) {
      result.loss_rows.push_back(LossRow{step, "heldout", model.cross_entropy(split.heldout)});
    }
  };

  probe(0);
  for (size_t i = 0; i < split.train.size(); ++i) {
    model.update(split.train[i]);
    const uint64_t step = i + 1;
    if (step % probe_cfg.checkpoint_every == 0 || step == split.train.size()) probe(step);
  }
  return result;
}

SampleQuality sample_quality(const std::vector<ExtractedClaim>& claims) {
  SampleQuality q;
  q.claim_count = claims.size();
  size_t token_sum = 0;
  size_t span_sum = 0;
  for (const ExtractedClaim& claim : claims) {
    if (claim.complete) ++q.complete_count;
    const size_t tokens = word_count(claim.text);
    token_sum += tokens;
    q.max_token_length = std::max(q.max_token_length, tokens);
    span_sum += claim.spans.size();
    q.max_span_count = std::max(q.max_span_count, claim.spans.size());
    for (size_t i = 0; i < claim.spans.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (claim.spans[j] == claim.spans[i]) {
          ++q.exact_duplicate_span_count;
          break;
        }
      }
    }
  }
  if (!claims.empty()) {
    q.mean_token_length = static_cast<double>(token_sum) / static_cast<double>(claims.size());
    q.mean_span_count = static_cast<double>(span_sum) / static_cast<double>(claims.size());
  }
  return q;
}

std::string tag_stats_csv(const std::vector<TagStats>& rows) {
  std::string out = "step,samples,tokens_per_sample,start_count,sep_count,end_count\n";
  for (const TagStats& row : rows) {
    out += std::to_string(row.step);
    out += ',';
    out += std::to_string(row.samples);
    out += ',';
    out += std::to_string(row.tokens_per_sample);
    out += ',';
    out += std::to_string(row.start_count);
    out += ',';
    out += std::to_string(row.sep_count);
    out += ',';
    out += std::to_string(row.end_count);
    out += '\n';
  }
  return out;
}

std::string sample_quality_csv(const SampleQuality& q) {
  std::string out =
      "claim_count,complete_count,mean_token_length,max_token_length,"
      "mean_span_count,max_span_count,exact_duplicate_span_count\n";
  out += std::to_string(q.claim_count);
  out += ',';
  out += std::to_string(q.complete_count);
  out += ',';
  out += format_double(q.mean_token_length);
  out += ',';
  out += std::to_string(q.max_token_length);
  out += ',';
  out += format_double(q.mean_span_count);
  out += ',';
  out += std::to_string(q.max_span_count);
  out += ',';
  out += std::to_string(q.exact_duplicate_span_count);
  out += '\n';
  return out;
}

}  // namespace claimforge
