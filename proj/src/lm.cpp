#include "claimforge/lm.hpp"

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

}  // namespace

void validate_train_config(const TrainConfig& cfg) {
  if (cfg.order < 1) throw std::invalid_argument("train config: order must be >= 1");
  if (cfg.weights.size() != cfg.order + 1) {
    throw std::invalid_argument("train config: expected " + std::to_string(cfg.order + 1) +
                                " weights (orders N..1 plus uniform), got " +
                                std::to_string(cfg.weights.size()));
  }
  double sum = 0.0;
  for (double w : cfg.weights) {
    if (w < 0.0) throw std::invalid_argument("train config: weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("train config: weights must sum to 1, got " + format_double(sum));
  }
  if (cfg.weights.back() <= 0.0) {
    throw std::invalid_argument("train config: uniform weight must be > 0");
  }
  if (cfg.heldout_fraction < 0.0 || cfg.heldout_fraction >= 1.0) {
    throw std::invalid_argument("train config: heldout_fraction must be in [0,1)");
  }
}

NGramModel::NGramModel(uint32_t vocab_size, TrainConfig cfg)
    : vocab_size_(vocab_size), cfg_(std::move(cfg)), tables_(cfg_.order) {
  if (vocab_size_ == 0) throw std::invalid_argument("n-gram model: vocab_size must be >= 1");
  validate_train_config(cfg_);
}

void NGramModel::update(std::span<const uint32_t> sequence) {
  for (size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i] >= vocab_size_) {
      throw std::out_of_range("update: token id " + std::to_string(sequence[i]) +
                              " out of range (vocab size " + std::to_string(vocab_size_) +
                              ") at position " + std::to_string(i));
    }
  }
  const uint32_t order = cfg_.order;
  std::vector<uint32_t> key;
  key.reserve(order);
  for (size_t i = 0; i < sequence.size(); ++i) {
    const size_t max_len = std::min<size_t>(order - 1, i);
    for (size_t len = 0; len <= max_len; ++len) {
      key.assign(sequence.begin() + (i - len), sequence.begin() + i);
      ContextCounts& cc = tables_[len][key];
      ++cc.next[sequence[i]];
      ++cc.total;
    }
  }
}

NGramModel::TermWeights NGramModel::resolve_weights(std::span<const uint32_t> context) const {
  const uint32_t order = cfg_.order;
  TermWeights tw;
  tw.table_weight.assign(order, 0.0);
  tw.counts.assign(order, nullptr);

  std::span<const uint32_t> ctx = context;
  if (ctx.size() > order - 1) ctx = ctx.subspan(ctx.size() - (order - 1));

  // cfg_.weights[j] is the weight for context length order-1-j; a term whose
  // context is too short or unseen hands its weight to the next lower term.
  double carry = 0.0;
  std::vector<uint32_t> key;
  for (uint32_t j = 0; j < order; ++j) {
    const uint32_t len = order - 1 - j;
    const double w = cfg_.weights[j] + carry;
    carry = 0.0;
    if (len > ctx.size()) {
      carry = w;
      continue;
    }
    key.assign(ctx.end() - len, ctx.end());
    auto it = tables_[len].find(key);
    if (it == tables_[len].end() || it->second.total == 0) {
      carry = w;
      continue;
    }
    tw.table_weight[len] = w;
    tw.counts[len] = &it->second;
  }
  tw.uniform_weight = cfg_.weights[order] + carry;
  return tw;
}

std::vector<double> NGramModel::next_distribution(std::span<const uint32_t> context) const {
  const TermWeights tw = resolve_weights(context);
  std::vector<double> probs(vocab_size_, tw.uniform_weight / vocab_size_);
  // Ascending context length, matching token_probability's summation order.
  for (uint32_t len = 0; len < cfg_.order; ++len) {
    const ContextCounts* cc = tw.counts[len];
    if (cc == nullptr) continue;
    const double w = tw.table_weight[len];
    const double total = static_cast<double>(cc->total);
    for (const auto& [token, count] : cc->next) {
      probs[token] += w * (static_cast<double>(count) / total);
    }
  }
  return probs;
}

double NGramModel::token_probability(std::span<const uint32_t> context, uint32_t token) const {
  const TermWeights tw = resolve_weights(context);
  double p = tw.uniform_weight / vocab_size_;
  for (uint32_t len = 0; len < cfg_.order; ++len) {
    const ContextCounts* cc = tw.counts[len];
    if (cc == nullptr) continue;
    auto it = cc->next.find(token);
    if (it == cc->next.end()) continue;
    p += tw.table_weight[len] *
         (static_cast<double>(it->second) / static_cast<double>(cc->total));
  }
  return p;
}

std::vector<double> NGramModel::next_log_distribution(std::span<const uint32_t> context) const {
  std::vector<double> probs = next_distribution(context);
  for (double& p : probs) p = std::log(p);
  return probs;
}

double NGramModel::cross_entropy(const std::vector<std::vector<uint32_t>>& sequences) const {
  long double sum = 0.0L;
  uint64_t events = 0;
  for (const auto& seq : sequences) {
    for (size_t i = 0; i < seq.size(); ++i) {
      const size_t ctx_begin = i > cfg_.order - 1 ? i - (cfg_.order - 1) : 0;
      std::span<const uint32_t> ctx{seq.data() + ctx_begin, i - ctx_begin};
      sum += std::log(token_probability(ctx, seq[i]));
      ++events;
    }
  }
  if (events == 0) throw std::invalid_argument("cross_entropy: no tokens to score");
  return static_cast<double>(-sum / static_cast<long double>(events));
}

struct CheckpointCodec {
  static const std::vector<NGramModel::Table>& tables(const NGramModel& m) { return m.tables_; }
  static std::vector<NGramModel::Table>& tables(NGramModel& m) { return m.tables_; }
  using ContextCounts = NGramModel::ContextCounts;
};

std::vector<uint8_t> serialize_checkpoint(const NGramModel& model, uint64_t step,
                                          uint64_t created_at) {
  ByteWriter w;
  w.bytes(kCheckpointMagic);
  w.u16(kCheckpointVersion);
  const TrainConfig& cfg = model.config();
  w.u32(cfg.order);
  w.u32(static_cast<uint32_t>(cfg.weights.size()));
  for (double weight : cfg.weights) w.f64(weight);
  w.u64(cfg.checkpoint_interval);
  w.f64(cfg.heldout_fraction);
  w.u64(cfg.seed);
  w.f64(cfg.learning_rate);
  w.u64(cfg.batch_size);
  w.u32(model.vocab_size());
  w.u64(step);
  w.u64(created_at);
  // std::map iteration already yields the canonical sorted order.
  for (const auto& table : CheckpointCodec::tables(model)) {
    w.u64(table.size());
    for (const auto& [ctx, cc] : table) {
      for (uint32_t id : ctx) w.u32(id);
      w.u32(static_cast<uint32_t>(cc.next.size()));
      for (const auto& [token, count] : cc.next) {
        w.u32(token);
        w.u64(count);
      }
    }
  }
  std::span<const uint8_t> body{w.buffer().data() + kCheckpointMagic.size(),
                                w.size() - kCheckpointMagic.size()};
  ByteWriter out;
  out.bytes(w.buffer());
  out.u32(crc32_ieee(body));
  return out.buffer();
}

Checkpoint parse_checkpoint(std::span<const uint8_t> data, const std::string& context) {
  if (data.size() < kCheckpointMagic.size()) {
    throw FormatError(FormatError::Kind::truncated, context + ": file shorter than magic");
  }
  if (std::string_view(reinterpret_cast<const char*>(data.data()), kCheckpointMagic.size()) !=
      kCheckpointMagic) {
    throw FormatError(FormatError::Kind::bad_magic, context + ": bad magic, expected PCCK");
  }
  ByteReader r{data.subspan(kCheckpointMagic.size()), context};
  const uint16_t version = r.u16();
  if (version != kCheckpointVersion) {
    throw FormatError(FormatError::Kind::version_mismatch,
                      context + ": unsupported checkpoint version " + std::to_string(version));
  }
  TrainConfig cfg;
  cfg.order = r.u32();
  const uint32_t weight_count = r.u32();
  if (weight_count > 1024) {
    throw FormatError(FormatError::Kind::truncated, context + ": implausible weight count");
  }
  cfg.weights.assign(weight_count, 0.0);
  for (double& weight : cfg.weights) weight = r.f64();
  cfg.checkpoint_interval = r.u64();
  cfg.heldout_fraction = r.f64();
  cfg.seed = r.u64();
  cfg.learning_rate = r.f64();
  cfg.batch_size = r.u64();
  const uint32_t vocab_size = r.u32();
  const uint64_t step = r.u64();
  const uint64_t created_at = r.u64();

  NGramModel model{vocab_size, cfg};
  auto& tables = CheckpointCodec::tables(model);
  for (uint32_t len = 0; len < cfg.order; ++len) {
    const uint64_t contexts = r.u64();
    auto& table = tables[len];
    for (uint64_t c = 0; c < contexts; ++c) {
      std::vector<uint32_t> ctx(len);
      for (uint32_t& id : ctx) id = r.u32();
      const uint32_t entries = r.u32();
      CheckpointCodec::ContextCounts cc;
      for (uint32_t e = 0; e < entries; ++e) {
        const uint32_t token = r.u32();
        const uint64_t count = r.u64();
        cc.next[token] = count;
        cc.total += count;
      }
      table.emplace_hint(table.end(), std::move(ctx), std::move(cc));
    }
  }
  if (r.remaining() < 4) {
    throw FormatError(FormatError::Kind::truncated, context + ": missing trailing checksum");
  }
  if (r.remaining() > 4) {
    throw FormatError(FormatError::Kind::checksum_mismatch,
                      context + ": trailing bytes after count tables");
  }
  const uint32_t stored = r.u32();
  std::span<const uint8_t> body{data.data() + kCheckpointMagic.size(),
                                data.size() - kCheckpointMagic.size() - 4};
  if (stored != crc32_ieee(body)) {
    throw FormatError(FormatError::Kind::checksum_mismatch, context + ": CRC-32 mismatch");
  }
  return Checkpoint{std::move(model), step, created_at};
}

void save_checkpoint(const std::string& path, const NGramModel& model, uint64_t step,
                     uint64_t created_at) {
  write_file_bytes(path, serialize_checkpoint(model, step, created_at));
}

Checkpoint load_checkpoint(const std::string& path) {
  return parse_checkpoint(read_file_bytes(path), path);
}

std::string loss_csv(const std::vector<LossRow>& rows) {
  std::string out = "step,split,cross_entropy_nats\n";
  for (const LossRow& row : rows) {
    out += std::to_string(row.step);
    out += ',';
    out += row.split;
    out += ',';
    out += format_double(row.cross_entropy_nats);
    out += '\n';
  }
  return out;
}

}  // namespace claimforge
