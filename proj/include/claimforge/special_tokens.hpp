#pragma once

#include <cstdint>
#include <string_view>

namespace claimforge {

// The three special tag literals used in tagged training text.
inline constexpr std::string_view kStartTag = "<|startoftext|>";
inline constexpr std::string_view kSepTag = "@@@";
inline constexpr std::string_view kEndTag = "<|endoftext|>";

// Token id layout: specials occupy 0..2, single bytes 3..258, merge
// products from 259 upward. The specials are atomic and never merge.
inline constexpr uint32_t kStartId = 0;
inline constexpr uint32_t kSepId = 1;
inline constexpr uint32_t kEndId = 2;
inline constexpr uint32_t kByteIdOffset = 3;
inline constexpr uint32_t kBaseVocabSize = 259;

}  // namespace claimforge
