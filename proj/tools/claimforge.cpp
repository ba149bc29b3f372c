// claimforge: corpus-to-generation pipeline for patent claims.
//
// Subcommands cover the full path from a claims CSV export to sampled
// claims: ingest, segment, train-vocab, encode, train, adapt, sample,
// stats, serve. Shared defaults come from a flat key=value config file
// (--config or $CLAIMFORGE_CONFIG); any key can be overridden by the
// same-named flag.

#include <CLI11.hpp>

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "claimforge/archive.hpp"
#include "claimforge/config.hpp"
#include "claimforge/ingest.hpp"
#include "claimforge/lm.hpp"
#include "claimforge/metrics.hpp"
#include "claimforge/minicorpus.hpp"
#include "claimforge/sampling.hpp"
#include "claimforge/segmenter.hpp"
#include "claimforge/service.hpp"
#include "claimforge/special_tokens.hpp"
#include "claimforge/tokenizer.hpp"

namespace cf = claimforge;
namespace fs = std::filesystem;

namespace {

// Config-backed defaults: a flag not given on the command line falls back
// to the config value, then to the built-in default.
class Defaults {
 public:
  explicit Defaults(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  std::string str(const std::string& key, std::string fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  template <typename T>
  T num(const std::string& key, T fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::istringstream in(it->second);
    T value{};
    if (!(in >> value)) {
      throw std::runtime_error("config key '" + key + "': cannot parse value '" + it->second + "'");
    }
    return value;
  }

 private:
  std::map<std::string, std::string> values_;
};

std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return std::string(arg.substr(9));
  }
  if (const char* env = std::getenv("CLAIMFORGE_CONFIG"); env != nullptr && *env != '\0') {
    return env;
  }
  return "";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> parse_weights(const std::string& csv) {
  std::vector<double> weights;
  std::istringstream in(csv);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (cell.empty()) continue;
    weights.push_back(std::stod(cell));
  }
  return weights;
}

// Canonical weights for order 4; an even split of the non-uniform mass
// otherwise.
std::vector<double> default_weights(uint32_t order) {
  if (order == 4) return {0.5, 0.25, 0.13, 0.09, 0.03};
  std::vector<double> weights(order + 1, 0.0);
  double remaining = 1.0 - 0.03;
  for (uint32_t i = 0; i < order; ++i) weights[i] = remaining / order;
  weights[order] = 0.03;
  return weights;
}

struct SamplerFlags {
  std::string strategy = "dynamic_kp";
  uint32_t k = 40;
  double p = 0.9;
  double rho = 0.1;
  uint32_t cap = 100;
  double temperature = 1.0;
};

void add_sampler_flags(CLI::App* cmd, SamplerFlags& flags, const Defaults& defaults) {
  flags.strategy = defaults.str("strategy", flags.strategy);
  flags.k = defaults.num<uint32_t>("k", flags.k);
  flags.p = defaults.num<double>("p", flags.p);
  flags.rho = defaults.num<double>("rho", flags.rho);
  flags.cap = defaults.num<uint32_t>("cap", flags.cap);
  flags.temperature = defaults.num<double>("temperature", flags.temperature);
  cmd->add_option("--strategy", flags.strategy, "Sampling strategy: top_k, top_p, or dynamic_kp");
  cmd->add_option("--k", flags.k, "top_k cut-off");
  cmd->add_option("--p", flags.p, "top_p cumulative probability");
  cmd->add_option("--rho", flags.rho, "dynamic_kp cut-off ratio relative to the top token");
  cmd->add_option("--cap", flags.cap, "dynamic_kp candidate pool size");
  cmd->add_option("--temperature", flags.temperature, "softmax temperature");
}

cf::SamplerConfig make_sampler_config(const SamplerFlags& flags, uint64_t seed) {
  auto strategy = cf::parse_strategy(flags.strategy);
  if (!strategy) {
    throw std::runtime_error("unknown strategy '" + flags.strategy +
                             "' (expected top_k, top_p, or dynamic_kp)");
  }
  cf::SamplerConfig cfg;
  cfg.strategy = *strategy;
  cfg.k = flags.k;
  cfg.p = flags.p;
  cfg.rho = flags.rho;
  cfg.cap = flags.cap;
  cfg.temperature = flags.temperature;
  cfg.seed = seed;
  cf::validate_sampler_config(cfg);
  return cfg;
}

nlohmann::json sampler_metadata(const cf::SamplerConfig& cfg) {
  nlohmann::json meta{{"strategy", cf::strategy_name(cfg.strategy)},
                      {"temperature", cfg.temperature},
                      {"rng", std::string(cf::Rng::kAlgorithmId)}};
  switch (cfg.strategy) {
    case cf::Strategy::top_k: meta["k"] = cfg.k; break;
    case cf::Strategy::top_p: meta["p"] = cfg.p; break;
    case cf::Strategy::dynamic_kp:
      meta["rho"] = cfg.rho;
      meta["cap"] = cfg.cap;
      break;
  }
  return meta;
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  size_t colon = bind.rfind(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("bind address must be host:port, got '" + bind + "'");
  }
  return {bind.substr(0, colon), std::stoi(bind.substr(colon + 1))};
}

// Generated text may contain raw newline bytes; the generations file is one
// claim per line, so map them to spaces before writing.
std::string sanitize_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

cf::Checkpoint load_checkpoint_with_vocab(const std::string& checkpoint_path,
                                          const std::string& vocab_path,
                                          cf::SubwordModel& vocab_out) {
  if (checkpoint_path.empty()) {
    throw std::runtime_error("checkpoint path required (--checkpoint or config key 'checkpoint')");
  }
  cf::Checkpoint ck = cf::load_checkpoint(checkpoint_path);
  vocab_out = cf::load_vocab(vocab_path);
  if (vocab_out.vocab_size() != ck.model.vocab_size()) {
    throw std::runtime_error("vocab size " + std::to_string(vocab_out.vocab_size()) +
                             " does not match checkpoint vocab size " +
                             std::to_string(ck.model.vocab_size()));
  }
  return ck;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    std::map<std::string, std::string> config_values;
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) config_values = cf::load_flat_config(config_path);
    const Defaults defaults{std::move(config_values)};

    CLI::App app{"patent claim corpus, training, and generation toolkit"};
    app.require_subcommand(1);
    std::string config_flag;
    app.add_option("--config", config_flag,
                   "flat key=value config file (default: $CLAIMFORGE_CONFIG)");
    // Lets --config appear after the subcommand name too.
    auto add_command = [&app](const char* name, const char* description) {
      CLI::App* cmd = app.add_subcommand(name, description);
      cmd->fallthrough();
      return cmd;
    };

    // Shared path settings.
    std::string corpus = defaults.str("corpus", "corpus.csv");
    std::string tagged = defaults.str("tagged", "tagged.txt");
    std::string vocab = defaults.str("vocab", "vocab.txt");
    std::string archive = defaults.str("archive", "claims.pcta");
    std::string checkpoint_dir = defaults.str("checkpoint-dir", "checkpoints");
    std::string checkpoint = defaults.str("checkpoint", "");
    std::string loss_log = defaults.str("loss-log", "loss.csv");
    uint64_t seed = defaults.num<uint64_t>("seed", 0);
    size_t limit = defaults.num<size_t>("limit", 0);

    // ---- ingest ----
    auto* cmd_ingest = add_command("ingest", "validate a claims CSV and print a summary");
    cmd_ingest->add_option("--corpus", corpus, "claims CSV (header cpc_ids,id,date,text)");
    cmd_ingest->add_option("--limit", limit, "stop after this many valid records (0 = all)");
    cmd_ingest->callback([&] {
      cf::Corpus loaded =
          cf::load_corpus(corpus, limit ? std::optional<size_t>{limit} : std::nullopt);
      std::cout << "loaded " << loaded.stats.records_loaded << " records, rejected "
                << loaded.stats.records_rejected << "\n";
      for (const auto& [reason, count] : loaded.stats.rejection_reasons) {
        std::cout << "  " << reason << ": " << count << "\n";
      }
    });

    // ---- segment ----
    auto* cmd_segment = add_command("segment", "split claims into tagged training lines");
    std::string split_punct = defaults.str("split-punct", std::string(cf::kDefaultSplitPunct));
    cmd_segment->add_option("--corpus", corpus, "claims CSV");
    cmd_segment->add_option("--out", tagged, "tagged text output, one claim per line");
    cmd_segment->add_option("--limit", limit, "stop after this many valid records (0 = all)");
    cmd_segment->add_option("--split-punct", split_punct,
                            "characters that split when not followed by a space");
    cmd_segment->callback([&] {
      cf::Corpus loaded =
          cf::load_corpus(corpus, limit ? std::optional<size_t>{limit} : std::nullopt);
      std::ofstream out(tagged, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open file for writing: " + tagged);
      size_t written = 0;
      for (const cf::ClaimRecord& record : loaded.records) {
        const std::string text = cf::normalize_claim_text(record.claim_text);
        const cf::SegmentedClaim seg = cf::segment_claim(text, split_punct);
        out << cf::tag_claim(seg).text << '\n';
        ++written;
      }
      if (!out) throw std::runtime_error("write failed: " + tagged);
      std::cout << "segmented " << written << " claims -> " << tagged << "\n";
    });

    // ---- train-vocab ----
    auto* cmd_vocab = add_command("train-vocab", "train the subword vocabulary");
    uint32_t target_vocab = defaults.num<uint32_t>("target-vocab", 1000);
    cmd_vocab->add_option("--tagged", tagged, "tagged text input");
    cmd_vocab->add_option("--vocab", vocab, "vocab output file");
    cmd_vocab->add_option("--target-vocab", target_vocab, "target vocabulary size (>= 259)");
    cmd_vocab->callback([&] {
      const std::vector<std::string> lines = read_lines(tagged);
      const cf::SubwordModel model = cf::train_subwords(lines, target_vocab);
      cf::save_vocab(vocab, model);
      std::cout << "trained vocab of " << model.vocab_size() << " tokens ("
                << model.merges().size() << " merges) -> " << vocab << "\n";
    });

    // ---- encode ----
    auto* cmd_encode = add_command("encode", "encode tagged text into a token archive");
    cmd_encode->add_option("--tagged", tagged, "tagged text input");
    cmd_encode->add_option("--vocab", vocab, "vocab file");
    cmd_encode->add_option("--archive", archive, "token archive output");
    cmd_encode->callback([&] {
      const cf::SubwordModel model = cf::load_vocab(vocab);
      const std::vector<std::string> lines = read_lines(tagged);
      cf::TokenArchive out;
      out.vocab_size = model.vocab_size();
      size_t total_tokens = 0;
      for (const std::string& line : lines) {
        out.sequences.push_back(cf::encode(model, line));
        total_tokens += out.sequences.back().size();
      }
      cf::write_archive(archive, out);
      std::cout << "encoded " << out.sequences.size() << " sequences (" << total_tokens
                << " tokens) -> " << archive << "\n";
    });

    // ---- train ----
    auto* cmd_train = add_command("train", "train the n-gram model with checkpoints");
    uint32_t order = defaults.num<uint32_t>("order", 4);
    std::string weights_csv = defaults.str("weights", "");
    uint64_t checkpoint_every = defaults.num<uint64_t>("checkpoint-every", 100);
    double heldout_fraction = defaults.num<double>("heldout-fraction", 0.0);
    cmd_train->add_option("--archive", archive, "token archive input");
    cmd_train->add_option("--checkpoint-dir", checkpoint_dir, "checkpoint output directory");
    cmd_train->add_option("--loss-log", loss_log, "loss CSV output");
    cmd_train->add_option("--order", order, "n-gram order");
    cmd_train->add_option("--weights", weights_csv,
                          "comma-separated interpolation weights, highest order first, "
                          "uniform last");
    cmd_train->add_option("--checkpoint-every", checkpoint_every, "sequences per checkpoint");
    cmd_train->add_option("--heldout-fraction", heldout_fraction,
                          "tail fraction of the archive held out for evaluation");
    cmd_train->add_option("--seed", seed, "recorded in the checkpoint config");
    cmd_train->callback([&] {
      const cf::TokenArchive data = cf::read_archive(archive);
      cf::TrainConfig cfg;
      cfg.order = order;
      cfg.weights = weights_csv.empty() ? default_weights(order) : parse_weights(weights_csv);
      cfg.checkpoint_interval = checkpoint_every;
      cfg.heldout_fraction = heldout_fraction;
      cfg.seed = seed;
      cf::validate_train_config(cfg);

      const cf::ArchiveSplit split = cf::split_archive(data, heldout_fraction);
      if (split.train.empty()) throw std::runtime_error("no training sequences in archive");
      cf::NGramModel model{data.vocab_size, cfg};
      fs::create_directories(checkpoint_dir);
      std::vector<cf::LossRow> loss_rows;
      const uint64_t created_at = static_cast<uint64_t>(std::time(nullptr));

      auto checkpoint_now = [&](uint64_t step) {
        char name[64];
        std::snprintf(name, sizeof(name), "checkpoint-%06llu.pcck",
                      static_cast<unsigned long long>(step));
        const std::string path = (fs::path(checkpoint_dir) / name).string();
        cf::save_checkpoint(path, model, step, created_at);
        loss_rows.push_back(cf::LossRow{step, "train", model.cross_entropy(split.train)});
        if (!split.heldout.empty()) {
          loss_rows.push_back(cf::LossRow{step, "heldout", model.cross_entropy(split.heldout)});
        }
        return path;
      };

      std::string last_path = checkpoint_now(0);
      for (size_t i = 0; i < split.train.size(); ++i) {
        model.update(split.train[i]);
        const uint64_t step = i + 1;
        if (step % checkpoint_every == 0 || step == split.train.size()) {
          last_path = checkpoint_now(step);
        }
      }
      write_text_file(loss_log, cf::loss_csv(loss_rows));
      std::cout << "trained " << split.train.size() << " steps, final checkpoint " << last_path
                << ", loss log " << loss_log << "\n";
    });

    // ---- adapt ----
    auto* cmd_adapt =
        add_command("adapt", "alternate training with generation probes, log tag counts");
    std::string tag_stats_path = defaults.str("tag-stats", "tag_stats.csv");
    size_t probe_samples = defaults.num<size_t>("samples", 20);
    size_t tokens_per_sample = defaults.num<size_t>("tokens-per-sample", 64);
    SamplerFlags adapt_sampler;
    adapt_sampler.strategy = "top_k";  // probe default: temperature 1.0, top_k 40
    cmd_adapt->add_option("--archive", archive, "token archive input");
    cmd_adapt->add_option("--tag-stats", tag_stats_path, "tag-count CSV output");
    cmd_adapt->add_option("--loss-log", loss_log, "loss CSV output");
    cmd_adapt->add_option("--order", order, "n-gram order");
    cmd_adapt->add_option("--weights", weights_csv, "comma-separated interpolation weights");
    cmd_adapt->add_option("--heldout-fraction", heldout_fraction, "held-out tail fraction");
    cmd_adapt->add_option("--checkpoint-every", checkpoint_every, "sequences between probes");
    cmd_adapt->add_option("--samples", probe_samples, "generations per probe");
    cmd_adapt->add_option("--tokens-per-sample", tokens_per_sample, "generation length per probe");
    add_sampler_flags(cmd_adapt, adapt_sampler, defaults);
    cmd_adapt->add_option("--seed", seed, "seed for training config and probe sampling");
    cmd_adapt->callback([&] {
      const cf::TokenArchive data = cf::read_archive(archive);
      cf::TrainConfig cfg;
      cfg.order = order;
      cfg.weights = weights_csv.empty() ? default_weights(order) : parse_weights(weights_csv);
      cfg.checkpoint_interval = checkpoint_every;
      cfg.heldout_fraction = heldout_fraction;
      cfg.seed = seed;
      cf::validate_train_config(cfg);
      const cf::SamplerConfig sampler = make_sampler_config(adapt_sampler, seed);
      const cf::ProbeConfig probe{checkpoint_every, probe_samples, tokens_per_sample};
      const cf::AdaptationResult result = cf::adaptation_run(data, cfg, sampler, probe);
      write_text_file(tag_stats_path, cf::tag_stats_csv(result.tag_rows));
      write_text_file(loss_log, cf::loss_csv(result.loss_rows));
      std::cout << "adaptation over " << data.sequences.size() << " sequences: "
                << result.tag_rows.size() << " probe rows -> " << tag_stats_path << ", loss log "
                << loss_log << "\n";
    });

    // ---- sample ----
    auto* cmd_sample = add_command("sample", "generate claims from a checkpoint");
    std::string generations = defaults.str("generations", "generations.txt");
    size_t n_samples = defaults.num<size_t>("n", 1);
    size_t max_tokens = defaults.num<size_t>("max-tokens", 256);
    std::string prompt = defaults.str("prompt", "");
    SamplerFlags sample_sampler;
    cmd_sample->add_option("--checkpoint", checkpoint, "checkpoint file");
    cmd_sample->add_option("--vocab", vocab, "vocab file");
    cmd_sample->add_option("--out", generations, "generations output, one claim per line");
    cmd_sample->add_option("--n", n_samples, "number of generations");
    cmd_sample->add_option("--max-tokens", max_tokens, "generation length cap");
    cmd_sample->add_option("--prompt", prompt, "seed text; empty means unconditional");
    add_sampler_flags(cmd_sample, sample_sampler, defaults);
    cmd_sample->add_option("--seed", seed, "base seed; sample i uses seed + i");
    cmd_sample->callback([&] {
      cf::SubwordModel sub;
      const cf::Checkpoint ck = load_checkpoint_with_vocab(checkpoint, vocab, sub);
      const cf::SamplerConfig sampler = make_sampler_config(sample_sampler, seed);
      const cf::NGramModel& model = ck.model;
      const cf::LogitSource logits = [&model](std::span<const uint32_t> ctx) {
        return model.next_log_distribution(ctx);
      };
      std::vector<uint32_t> prompt_ids;
      if (!prompt.empty()) prompt_ids = cf::encode(sub, prompt);

      std::ofstream out(generations, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open file for writing: " + generations);
      for (size_t i = 0; i < n_samples; ++i) {
        cf::Rng rng{seed + i};
        const std::vector<uint32_t> seq =
            cf::generate(logits, sampler, prompt_ids, max_tokens, cf::kEndId, rng);
        out << sanitize_line(cf::decode(sub, seq)) << '\n';
      }
      if (!out) throw std::runtime_error("write failed: " + generations);

      nlohmann::json sidecar{{"checkpoint_step", ck.step},
                             {"seed", seed},
                             {"samples", n_samples},
                             {"max_tokens", max_tokens},
                             {"sampler", sampler_metadata(sampler)},
                             {"prompt", prompt.empty() ? nlohmann::json{} : nlohmann::json{prompt}}};
      write_text_file(generations + ".json", sidecar.dump(2) + "\n");
      std::cout << "wrote " << n_samples << " generations -> " << generations << "\n";
    });

    // ---- stats ----
    auto* cmd_stats = add_command("stats", "quality statistics over a generations file");
    std::string quality_out = defaults.str("quality", "quality.csv");
    cmd_stats->add_option("--generations", generations, "generations file (tagged lines)");
    cmd_stats->add_option("--out", quality_out, "quality CSV output");
    cmd_stats->callback([&] {
      const std::string content = read_text_file(generations);
      const std::vector<cf::ExtractedClaim> claims = cf::extract_claims(content);
      const cf::SampleQuality quality = cf::sample_quality(claims);
      const std::string csv = cf::sample_quality_csv(quality);
      write_text_file(quality_out, csv);
      std::cout << csv;
    });

    // ---- serve ----
    auto* cmd_serve = add_command("serve", "HTTP generation service");
    std::string bind = defaults.str("bind", "127.0.0.1:8080");
    uint32_t context_window = defaults.num<uint32_t>("context-window", 1024);
    cmd_serve->add_option("--checkpoint", checkpoint, "checkpoint file");
    cmd_serve->add_option("--vocab", vocab, "vocab file");
    cmd_serve->add_option("--bind", bind, "host:port to listen on");
    cmd_serve->add_option("--context-window", context_window, "model context window");
    cmd_serve->callback([&] {
      cf::SubwordModel sub;
      cf::Checkpoint ck = load_checkpoint_with_vocab(checkpoint, vocab, sub);
      auto snapshot = std::make_shared<const cf::ModelSnapshot>(
          cf::ModelSnapshot{std::move(ck.model), std::move(sub), ck.step});
      cf::ServiceConfig service_cfg;
      service_cfg.context_window = context_window;
      cf::GenerationService service{service_cfg, std::move(snapshot)};
      const auto [host, port] = parse_bind(bind);
      const int bound = service.bind(host, port);
      if (bound < 0) throw std::runtime_error("cannot bind to " + bind);
      std::cout << "listening on " << host << ":" << bound << " (model step " << ck.step << ")"
                << std::endl;
      service.listen_after_bind();
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "claimforge: " << e.what() << "\n";
    return 1;
  }
}
