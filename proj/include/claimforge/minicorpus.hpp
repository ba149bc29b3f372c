#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "claimforge/ingest.hpp"

namespace claimforge {

/// Synthetic first-claim generator used for the bundled offline corpus and
/// for larger fixtures in tests. The template grammar is:
///
///   claim    := "A " kind " for " task " " object ", the " kind
///               " comprising:" element (";" element)* ";and " element "."
///   element  := verb " a " adjective " " noun [tail]
///   tail     := " " modifier | ", wherein the " noun " is " state
///
/// Elements follow ':' and ';' with no space, the way granted-claim exports
/// drop official line breaks, so those marks segment; every ordinary comma
/// is followed by a space and never splits.
struct MiniCorpusOptions {
  size_t count = 200;
  uint64_t seed = 7;
  size_t min_elements = 2;
  size_t max_elements = 5;
};

std::vector<ClaimRecord> make_mini_corpus(const MiniCorpusOptions& options);

/// Writes records as the ingestion CSV (header cpc_ids,id,date,text).
void write_corpus_csv(const std::string& path, const std::vector<ClaimRecord>& records);

}  // namespace claimforge
