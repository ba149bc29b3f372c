#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "claimforge/binio.hpp"
#include "claimforge/special_tokens.hpp"

namespace claimforge {

/// Bit-exact binary container of encoded training sequences.
///
/// Layout (little-endian): magic "PCTA", u16 version, u32 vocab_size,
/// u32 x3 special ids (start, sep, end), u64 sequence count, then per
/// sequence u32 length plus that many u32 ids, and a trailing u32 CRC-32
/// (IEEE) over all bytes after the magic.
struct TokenArchive {
  uint16_t version = 1;
  uint32_t vocab_size = kBaseVocabSize;
  std::array<uint32_t, 3> special_ids{kStartId, kSepId, kEndId};
  std::vector<std::vector<uint32_t>> sequences;
};

inline constexpr std::string_view kArchiveMagic = "PCTA";
inline constexpr uint16_t kArchiveVersion = 1;

/// Throws std::invalid_argument if any sequence id is >= vocab_size.
void write_archive(const std::string& path, const TokenArchive& archive);

/// Throws FormatError with kind bad_magic, version_mismatch,
/// checksum_mismatch, or truncated.
TokenArchive read_archive(const std::string& path);

std::vector<uint8_t> serialize_archive(const TokenArchive& archive);
TokenArchive parse_archive(std::span<const uint8_t> data, const std::string& context);

}  // namespace claimforge
