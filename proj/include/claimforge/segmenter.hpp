#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace claimforge {

/// A claim split into spans. Concatenating `spans` in order reproduces
/// `source_text` byte for byte.
struct SegmentedClaim {
  std::vector<std::string> spans;
  std::string source_text;
};

/// Training-file form of one claim: start tag, spans joined by " @@@ ",
/// end tag.
struct TaggedClaim {
  std::string text;
};

/// One claim recovered from generated text. `complete` is false when the
/// start tag had no matching end tag.
struct ExtractedClaim {
  std::string text;  // spans joined by single spaces
  std::vector<std::string> spans;
  bool complete = false;
};

inline constexpr std::string_view kDefaultSplitPunct = ",;:";

/// Replaces internal newlines with single spaces and strips surrounding
/// whitespace. Applied to corpus claim text before segmentation so training
/// files stay one claim per line.
std::string normalize_claim_text(std::string_view text);

/// Splits immediately after every split character whose next character exists
/// and is not a space. Lossless: the spans concatenate back to the input.
/// Throws std::invalid_argument on empty input or input containing "@@@".
SegmentedClaim segment_claim(std::string_view text,
                             std::string_view split_punct = kDefaultSplitPunct);

TaggedClaim tag_claim(const SegmentedClaim& claim);

/// Scans arbitrary text for tagged claims. Lenient: text outside tags is
/// ignored, spaces around separators are trimmed, a start tag without an end
/// tag yields an incomplete claim.
std::vector<ExtractedClaim> extract_claims(std::string_view generated_text);

}  // namespace claimforge
