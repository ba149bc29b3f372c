#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace claimforge {

/// One granted-patent first claim as exported by the corpus query.
struct ClaimRecord {
  std::string patent_id;
  std::string grant_date;  // validated ISO 8601 calendar date
  std::vector<std::string> cpc_ids;
  std::string claim_text;
};

struct CorpusStats {
  size_t records_loaded = 0;
  size_t records_rejected = 0;
  std::map<std::string, size_t> rejection_reasons;
};

struct Corpus {
  std::vector<ClaimRecord> records;
  CorpusStats stats;
};

/// Fatal ingestion problems: missing file, wrong header, non-UTF-8 bytes.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row rejection reasons reported in CorpusStats.
inline constexpr const char* kRejectFieldCount = "wrong-field-count";
inline constexpr const char* kRejectEmptyPatentId = "empty-patent-id";
inline constexpr const char* kRejectBadDate = "bad-date";
inline constexpr const char* kRejectBadCpc = "bad-cpc";
inline constexpr const char* kRejectEmptyClaimText = "empty-claim-text";
inline constexpr const char* kRejectSeparatorCollision = "separator-collision";

/// True for a CPC subclass code: one letter A-H or Y, two digits, one letter.
bool is_valid_cpc_subclass(std::string_view code);

/// True for a valid ISO 8601 calendar date (YYYY-MM-DD).
bool is_valid_iso_date(std::string_view date);

/// Streams a `cpc_ids,id,date,text` CSV file into validated records.
/// Invalid rows are skipped and counted; loading stops once `limit` valid
/// records have been collected. Throws CorpusError on fatal problems.
Corpus load_corpus(const std::string& path, std::optional<size_t> limit = std::nullopt);

/// RFC 4180 field splitter shared with the corpus writer; exposed for tests.
std::vector<std::vector<std::string>> parse_csv(std::string_view data);

/// Quotes a cell iff it contains a comma, quote, or newline.
std::string csv_escape(std::string_view cell);

}  // namespace claimforge
