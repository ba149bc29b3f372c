#include "claimforge/tokenizer.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace claimforge {

namespace {

uint64_t pair_key(uint32_t left, uint32_t right) {
  return (static_cast<uint64_t>(left) << 32) | right;
}

bool mergeable(uint32_t a, uint32_t b) { return a >= kByteIdOffset && b >= kByteIdOffset; }

// Specials matched greedily left to right, everything else one byte per id.
std::vector<uint32_t> base_tokenize(std::string_view text) {
  std::vector<uint32_t> ids;
  ids.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, kStartTag.size(), kStartTag) == 0) {
      ids.push_back(kStartId);
      i += kStartTag.size();
    } else if (text.compare(i, kSepTag.size(), kSepTag) == 0) {
      ids.push_back(kSepId);
      i += kSepTag.size();
    } else if (text.compare(i, kEndTag.size(), kEndTag) == 0) {
      ids.push_back(kEndId);
      i += kEndTag.size();
    } else {
      ids.push_back(kByteIdOffset + static_cast<uint8_t>(text[i]));
      ++i;
    }
  }
  return ids;
}

}  // namespace

SubwordModel::SubwordModel() {
  token_bytes_.reserve(kBaseVocabSize);
  token_bytes_.emplace_back(kStartTag);
  token_bytes_.emplace_back(kSepTag);
  token_bytes_.emplace_back(kEndTag);
  for (int b = 0; b < 256; ++b) token_bytes_.emplace_back(1, static_cast<char>(b));
}

uint32_t SubwordModel::add_merge(uint32_t left, uint32_t right) {
  if (!mergeable(left, right)) {
    throw std::invalid_argument("add_merge: special tokens never participate in merges");
  }
  if (left >= vocab_size() || right >= vocab_size()) {
    throw std::invalid_argument("add_merge: merge references unknown token id");
  }
  uint32_t new_id = vocab_size();
  merge_rank_[pair_key(left, right)] = static_cast<uint32_t>(merges_.size());
  merges_.emplace_back(left, right);
  token_bytes_.push_back(token_bytes_[left] + token_bytes_[right]);
  return new_id;
}

SubwordModel train_subwords(const std::vector<std::string>& corpus, uint32_t target_vocab) {
  if (target_vocab < kBaseVocabSize) {
    throw std::invalid_argument("train_subwords: target_vocab must be at least " +
                                std::to_string(kBaseVocabSize));
  }
  if (corpus.empty()) throw std::invalid_argument("train_subwords: empty corpus");

  SubwordModel model;
  std::vector<std::vector<uint32_t>> seqs;
  seqs.reserve(corpus.size());
  for (const std::string& text : corpus) seqs.push_back(base_tokenize(text));

  // Adjacent-pair counts, kept exact across merges by incremental updates.
  std::unordered_map<uint64_t, int64_t> counts;
  auto inc = [&counts](uint32_t a, uint32_t b) {
    if (mergeable(a, b)) ++counts[pair_key(a, b)];
  };
  auto dec = [&counts](uint32_t a, uint32_t b) {
    if (!mergeable(a, b)) return;
    auto it = counts.find(pair_key(a, b));
    if (it != counts.end() && --it->second <= 0) counts.erase(it);
  };
  for (const auto& seq : seqs) {
    for (size_t i = 0; i + 1 < seq.size(); ++i) inc(seq[i], seq[i + 1]);
  }

  while (model.vocab_size() < target_vocab) {
    bool found = false;
    uint64_t best_key = 0;
    int64_t best_count = 0;
    for (const auto& [k, c] : counts) {
      if (c < 2) continue;  // a pair must repeat to be worth a merge
      if (!found || c > best_count || (c == best_count && k < best_key)) {
        found = true;
        best_count = c;
        best_key = k;
      }
    }
    if (!found) break;

    const uint32_t left = static_cast<uint32_t>(best_key >> 32);
    const uint32_t right = static_cast<uint32_t>(best_key & 0xffffffffu);
    const uint32_t new_id = model.add_merge(left, right);

    for (auto& seq : seqs) {
      size_t w = 0;
      size_t i = 0;
      const size_t n = seq.size();
      while (i < n) {
        if (i + 1 < n && seq[i] == left && seq[i + 1] == right) {
          dec(left, right);
          if (w > 0) {
            dec(seq[w - 1], left);
            inc(seq[w - 1], new_id);
          }
          if (i + 2 < n) {
            dec(right, seq[i + 2]);
            inc(new_id, seq[i + 2]);
          }
          seq[w++] = new_id;
          i += 2;
        } else {
          seq[w++] = seq[i++];
        }
      }
      seq.resize(w);
    }
  }
  return model;
}

std::vector<uint32_t> encode(const SubwordModel& model, std::string_view text) {
  std::vector<uint32_t> ids = base_tokenize(text);
  if (ids.size() < 2 || model.merges_.empty()) return ids;

  // Repeatedly apply the lowest-ranked merge present; pairs touching special
  // ids have no rank and are never merged.
  while (true) {
    uint32_t best_rank = std::numeric_limits<uint32_t>::max();
    for (size_t i = 0; i + 1 < ids.size(); ++i) {
      auto it = model.merge_rank_.find(pair_key(ids[i], ids[i + 1]));
      if (it != model.merge_rank_.end() && it->second < best_rank) best_rank = it->second;
    }
    if (best_rank == std::numeric_limits<uint32_t>::max()) break;

    const auto [left, right] = model.merges_[best_rank];
    const uint32_t new_id = kBaseVocabSize + best_rank;
    size_t w = 0;
    size_t i = 0;
    while (i < ids.size()) {
      if (i + 1 < ids.size() && ids[i] == left && ids[i + 1] == right) {
        ids[w++] = new_id;
        i += 2;
      } else {
        ids[w++] = ids[i++];
      }
    }
    ids.resize(w);
  }
  return ids;
}

std::string decode(const SubwordModel& model, std::span<const uint32_t> ids) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= model.vocab_size()) {
      throw std::out_of_range("decode: token id " + std::to_string(ids[i]) +
                              " out of range (vocab size " + std::to_string(model.vocab_size()) +
                              ") at position " + std::to_string(i));
    }
    out += model.token_bytes(ids[i]);
  }
  return out;
}

void save_vocab(const std::string& path, const SubwordModel& model) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open vocab file for writing: " + path);
  out << "pcta-vocab v1\n";
  for (const auto& [left, right] : model.merges()) out << left << ' ' << right << '\n';
  if (!out) throw std::runtime_error("vocab write failed: " + path);
}

SubwordModel load_vocab(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vocab file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "pcta-vocab v1") {
    throw std::runtime_error(path + ": not a pcta-vocab v1 file");
  }
  SubwordModel model;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream parts(line);
    uint32_t left = 0;
    uint32_t right = 0;
    if (!(parts >> left >> right)) {
      throw std::runtime_error(path + ": malformed merge on line " + std::to_string(line_no));
    }
    try {
      model.add_merge(left, right);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return model;
}

}  // namespace claimforge
