#include "claimforge/segmenter.hpp"

#include <stdexcept>

#include "claimforge/special_tokens.hpp"

namespace claimforge {

namespace {

bool is_trim_char(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim_spaces(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && s[b] == ' ') ++b;
  while (e > b && s[e - 1] == ' ') --e;
  return s.substr(b, e - b);
}

ExtractedClaim parse_claim_body(std::string_view body, bool complete) {
  ExtractedClaim claim;
  claim.complete = complete;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t sep = body.find(kSepTag, pos);
    std::string_view piece =
        sep == std::string_view::npos ? body.substr(pos) : body.substr(pos, sep - pos);
    std::string_view trimmed = trim_spaces(piece);
    if (!trimmed.empty()) claim.spans.emplace_back(trimmed);
    if (sep == std::string_view::npos) break;
    pos = sep + kSepTag.size();
  }
  for (size_t i = 0; i < claim.spans.size(); ++i) {
    if (i) claim.text += ' ';
    claim.text += claim.spans[i];
  }
  return claim;
}

}  // namespace

std::string normalize_claim_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      out += ' ';
    } else if (text[i] == '\n') {
      out += ' ';
    } else {
      out += text[i];
    }
  }
  size_t b = 0;
  size_t e = out.size();
  while (b < e && is_trim_char(out[b])) ++b;
  while (e > b && is_trim_char(out[e - 1])) --e;
  return out.substr(b, e - b);
}

SegmentedClaim segment_claim(std::string_view text, std::string_view split_punct) {
  if (text.empty()) throw std::invalid_argument("segment_claim: empty claim text");
  if (text.find(kSepTag) != std::string_view::npos) {
    throw std::invalid_argument("segment_claim: claim text contains the span separator literal");
  }
  SegmentedClaim out;
  out.source_text.assign(text);
  size_t begin = 0;
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    if (split_punct.find(text[i]) != std::string_view::npos && text[i + 1] != ' ') {
      out.spans.emplace_back(text.substr(begin, i + 1 - begin));
      begin = i + 1;
    }
  }
  out.spans.emplace_back(text.substr(begin));
  return out;
}

TaggedClaim tag_claim(const SegmentedClaim& claim) {
  std::string text{kStartTag};
  for (size_t i = 0; i < claim.spans.size(); ++i) {
    if (i) {
      text += ' ';
      text += kSepTag;
      text += ' ';
    }
    text += claim.spans[i];
  }
  text += kEndTag;
  return TaggedClaim{std::move(text)};
}

std::vector<ExtractedClaim> extract_claims(std::string_view generated_text) {
  std::vector<ExtractedClaim> out;
  size_t pos = 0;
  while (true) {
    size_t start = generated_text.find(kStartTag, pos);
    if (start == std::string_view::npos) break;
    size_t body_begin = start + kStartTag.size();
    size_t end = generated_text.find(kEndTag, body_begin);
    size_t next_start = generated_text.find(kStartTag, body_begin);
    // A fresh start tag before any end tag closes the current claim as
    // incomplete and opens the next one.
    bool complete =
        end != std::string_view::npos && (next_start == std::string_view::npos || end < next_start);
    size_t body_end;
    if (complete) {
      body_end = end;
      pos = end + kEndTag.size();
    } else if (next_start != std::string_view::npos) {
      body_end = next_start;
      pos = next_start;
    } else {
      body_end = generated_text.size();
      pos = generated_text.size();
    }
    out.push_back(parse_claim_body(generated_text.substr(body_begin, body_end - body_begin), complete));
  }
  return out;
}

}  // namespace claimforge
