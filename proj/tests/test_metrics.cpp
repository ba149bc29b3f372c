#include "claimforge/metrics.hpp"

#include <doctest.h>

#include <cmath>

#include "claimforge/tokenizer.hpp"
#include "golden_sample.hpp"

using namespace claimforge;

namespace {

TokenArchive tiny_archive(uint32_t vocab, size_t sequences, size_t length) {
  TokenArchive archive;
  archive.vocab_size = vocab;
  for (size_t s = 0; s < sequences; ++s) {
    std::vector<uint32_t> seq;
    for (size_t i = 0; i < length; ++i) {
      seq.push_back(static_cast<uint32_t>((s + i) % vocab));
    }
    archive.sequences.push_back(std::move(seq));
  }
  return archive;
}

}  // namespace

TEST_CASE("count_special_tags on the golden sample encoding") {
  const SubwordModel base;
  const std::vector<std::vector<uint32_t>> batch{encode(base, testdata::kEarlySample)};
  const TagStats stats = count_special_tags(batch);
  CHECK(stats.start_count == 1);
  CHECK(stats.sep_count == 4);
  CHECK(stats.end_count == 1);
  CHECK(stats.samples == 1);
  CHECK(stats.samples_with_end == 1);
}

TEST_CASE("count_special_tags basics") {
  CHECK(count_special_tags({}).start_count == 0);
  CHECK(count_special_tags({}).end_count == 0);

  const std::vector<std::vector<uint32_t>> batch{
      {kStartId, kEndId}, {kStartId, kEndId}, {kStartId, kEndId}};
  const TagStats stats = count_special_tags(batch);
  CHECK(stats.start_count == 3);
  CHECK(stats.sep_count == 0);
  CHECK(stats.end_count == 3);
  CHECK(stats.samples_with_end == 3);
}

TEST_CASE("tag counting over ids equals counting literals in decoded text") {
  const SubwordModel base;
  TrainConfig tcfg;
  SamplerConfig scfg;
  scfg.strategy = Strategy::top_p;
  scfg.p = 1.0;
  scfg.seed = 99;
  const TokenArchive archive = tiny_archive(kBaseVocabSize, 30, 40);
  const AdaptationResult result =
      adaptation_run(archive, tcfg, scfg, ProbeConfig{10, 10, 50});

  // Regenerate the final probe batch from its derived seeds and compare the
  // id counts against greedy literal counts in the decoded text.
  const NGramModel& model = result.final_model;
  const LogitSource logits = [&model](std::span<const uint32_t> ctx) {
    return model.next_log_distribution(ctx);
  };
  uint64_t id_sep = 0;
  uint64_t text_sep = 0;
  uint64_t id_end = 0;
  uint64_t text_end = 0;
  for (size_t i = 0; i < 10; ++i) {
    Rng rng{derive_seed(scfg.seed, 30, i)};
    const std::vector<uint32_t> seq = generate(logits, scfg, {}, 50, std::nullopt, rng);
    const std::string text = decode(base, seq);
    for (uint32_t id : seq) {
      if (id == kSepId) ++id_sep;
      if (id == kEndId) ++id_end;
    }
    for (std::string_view tag : {kSepTag, kEndTag}) {
      size_t pos = 0;
      while ((pos = text.find(tag, pos)) != std::string::npos) {
        if (tag == kSepTag) ++text_sep;
        else ++text_end;
        pos += tag.size();
      }
    }
  }
  CHECK(id_sep == text_sep);
  CHECK(id_end == text_end);
}

TEST_CASE("adaptation_run emits one row per checkpoint starting at step 0") {
  TrainConfig tcfg;
  SamplerConfig scfg;
  scfg.strategy = Strategy::top_k;
  scfg.k = 40;
  const TokenArchive archive = tiny_archive(64, 100, 12);
  const AdaptationResult result =
      adaptation_run(archive, tcfg, scfg, ProbeConfig{10, 4, 16});
  REQUIRE(result.tag_rows.size() == 11);
  for (size_t i = 0; i < result.tag_rows.size(); ++i) {
    CHECK(result.tag_rows[i].step == 10 * i);
    CHECK(result.tag_rows[i].samples == 4);
    CHECK(result.tag_rows[i].tokens_per_sample == 16);
    // Per-sequence sep/end counts can never exceed the generation length.
    CHECK(result.tag_rows[i].sep_count <= 4 * 16);
    CHECK(result.tag_rows[i].end_count <= 4 * 16);
  }
  // Loss rows cover the same steps.
  REQUIRE(result.loss_rows.size() == 11);
  CHECK(result.loss_rows.front().step == 0);
  CHECK(result.loss_rows.front().split == "train");
  CHECK(result.loss_rows.front().cross_entropy_nats ==
        doctest::Approx(std::log(64.0)).epsilon(1e-12));
  CHECK(result.loss_rows.back().cross_entropy_nats < std::log(64.0));
}

TEST_CASE("adaptation_run is deterministic at the CSV byte level") {
  TrainConfig tcfg;
  tcfg.heldout_fraction = 0.2;
  SamplerConfig scfg;
  scfg.seed = 5;
  const TokenArchive archive = tiny_archive(40, 25, 10);
  const ProbeConfig probe{5, 3, 12};
  const AdaptationResult a = adaptation_run(archive, tcfg, scfg, probe);
  const AdaptationResult b = adaptation_run(archive, tcfg, scfg, probe);
  CHECK(tag_stats_csv(a.tag_rows) == tag_stats_csv(b.tag_rows));
  CHECK(loss_csv(a.loss_rows) == loss_csv(b.loss_rows));
  CHECK(a.loss_rows.size() == 2 * a.tag_rows.size());  // train + heldout per step
}

TEST_CASE("step-0 probe matches the uniform-model expectation") {
  // Under the untrained (uniform) model with a full-support sampler, each
  // generated token is the end token with probability 1/V, so the expected
  // end count is samples * tokens / V.
  TrainConfig tcfg;
  SamplerConfig scfg;
  scfg.strategy = Strategy::top_p;
  scfg.p = 1.0;
  scfg.seed = 12345;
  const uint32_t v = 2000;
  const TokenArchive archive = tiny_archive(v, 1, 8);
  const AdaptationResult result =
      adaptation_run(archive, tcfg, scfg, ProbeConfig{1, 100, 256});
  const double expected = 100.0 * 256.0 / v;  // 12.8
  const double observed = static_cast<double>(result.tag_rows.front().end_count);
  CHECK(observed >= 0.5 * expected);
  CHECK(observed <= 1.5 * expected);
}

TEST_CASE("sample_quality over the golden claim") {
  const auto claims = extract_claims(testdata::kEarlySample);
  const SampleQuality q = sample_quality(claims);
  CHECK(q.claim_count == 1);
  CHECK(q.complete_count == 1);
  CHECK(q.max_span_count == 5);
  CHECK(q.mean_span_count == doctest::Approx(5.0));
  CHECK(q.exact_duplicate_span_count == 0);
  CHECK(q.max_token_length > 100);  // the sample is a long claim
}

TEST_CASE("sample_quality counts duplicate spans and handles empty input") {
  ExtractedClaim claim;
  claim.spans = {"a;", "b;", "a;"};
  claim.text = "a; b; a;";
  claim.complete = true;
  const SampleQuality q = sample_quality({claim});
  CHECK(q.exact_duplicate_span_count == 1);
  CHECK(q.claim_count == 1);
  CHECK(q.max_span_count == 3);

  const SampleQuality empty = sample_quality({});
  CHECK(empty.claim_count == 0);
  CHECK(empty.complete_count == 0);
  CHECK(empty.mean_token_length == 0.0);
  CHECK(empty.max_span_count == 0);
  CHECK(empty.exact_duplicate_span_count == 0);
}

TEST_CASE("csv renderings") {
  TagStats row;
  row.step = 10;
  row.samples = 4;
  row.tokens_per_sample = 16;
  row.start_count = 7;
  row.sep_count = 2;
  row.end_count = 3;
  CHECK(tag_stats_csv({row}) ==
        "step,samples,tokens_per_sample,start_count,sep_count,end_count\n10,4,16,7,2,3\n");

  SampleQuality q;
  q.claim_count = 2;
  q.complete_count = 1;
  q.mean_token_length = 4.5;
  q.max_token_length = 6;
  q.mean_span_count = 2.5;
  q.max_span_count = 3;
  q.exact_duplicate_span_count = 0;
  CHECK(sample_quality_csv(q) ==
        "claim_count,complete_count,mean_token_length,max_token_length,"
        "mean_span_count,max_span_count,exact_duplicate_span_count\n2,1,4.5,6,2.5,3,0\n");
}

TEST_CASE("split_archive takes the tail as heldout") {
  const TokenArchive archive = tiny_archive(10, 10, 3);
  const ArchiveSplit split = split_archive(archive, 0.3);
  CHECK(split.train.size() == 7);
  CHECK(split.heldout.size() == 3);
  CHECK(split.heldout.back() == archive.sequences.back());
  CHECK_THROWS_AS(split_archive(archive, 1.0), std::invalid_argument);
}
