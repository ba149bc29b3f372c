#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "claimforge/special_tokens.hpp"

namespace claimforge {

/// Byte-level subword vocabulary. Ids 0..2 are the special tokens, 3..258
/// the 256 single bytes, and 259.. the merge products in training order.
class SubwordModel {
 public:
  SubwordModel();

  uint32_t vocab_size() const { return kBaseVocabSize + static_cast<uint32_t>(merges_.size()); }
  const std::vector<std::pair<uint32_t, uint32_t>>& merges() const { return merges_; }

  /// Byte sequence a token id decodes to. Special ids render their literal
  /// tag strings.
  const std::string& token_bytes(uint32_t id) const { return token_bytes_.at(id); }

  /// Appends one merge; the new token id is vocab_size() before the call.
  /// Both sides must be existing non-special ids.
  uint32_t add_merge(uint32_t left, uint32_t right);

 private:
  std::vector<std::pair<uint32_t, uint32_t>> merges_;
  std::vector<std::string> token_bytes_;
  std::unordered_map<uint64_t, uint32_t> merge_rank_;

  friend std::vector<uint32_t> encode(const SubwordModel&, std::string_view);
};

/// Greedy pair-merge training over tagged claim strings. Special tag
/// literals are replaced by their atomic ids before counting and never
/// participate in merges. Ties break toward the smaller (left, right) pair;
/// training stops at `target_vocab` or when no pair occurs at least twice.
/// Throws std::invalid_argument if target_vocab < 259 or the corpus is empty.
SubwordModel train_subwords(const std::vector<std::string>& corpus, uint32_t target_vocab);

/// Total over all UTF-8 (indeed, all byte) strings: tag literals match
/// greedily left to right as atomic ids, everything else falls back to bytes
/// plus merges.
std::vector<uint32_t> encode(const SubwordModel& model, std::string_view text);

/// Inverse of encode. Throws std::out_of_range naming the offending position
/// if an id is outside the vocabulary.
std::string decode(const SubwordModel& model, std::span<const uint32_t> ids);

/// Text persistence: line 1 "pcta-vocab v1", then one "left right" merge per
/// line in training order.
void save_vocab(const std::string& path, const SubwordModel& model);
SubwordModel load_vocab(const std::string& path);

}  // namespace claimforge
