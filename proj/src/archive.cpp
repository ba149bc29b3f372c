#include "claimforge/archive.hpp"

#include <stdexcept>

namespace claimforge {

std::vector<uint8_t> serialize_archive(const TokenArchive& archive) {
  for (size_t s = 0; s < archive.sequences.size(); ++s) {
    for (uint32_t id : archive.sequences[s]) {
      if (id >= archive.vocab_size) {
        throw std::invalid_argument("archive: sequence " + std::to_string(s) + " contains id " +
                                    std::to_string(id) + " >= vocab_size " +
                                    std::to_string(archive.vocab_size));
      }
    }
  }
  ByteWriter w;
  w.bytes(kArchiveMagic);
  w.u16(archive.version);
  w.u32(archive.vocab_size);
  for (uint32_t id : archive.special_ids) w.u32(id);
  w.u64(archive.sequences.size());
  for (const auto& seq : archive.sequences) {
    w.u32(static_cast<uint32_t>(seq.size()));
    for (uint32_t id : seq) w.u32(id);
  }
  std::span<const uint8_t> body{w.buffer().data() + kArchiveMagic.size(),
                                w.size() - kArchiveMagic.size()};
  ByteWriter out;
  out.bytes(w.buffer());
  out.u32(crc32_ieee(body));
  return out.buffer();
}

TokenArchive parse_archive(std::span<const uint8_t> data, const std::string& context) {
  if (data.size() < kArchiveMagic.size()) {
    throw FormatError(FormatError::Kind::truncated, context + ": file shorter than magic");
  }
  if (std::string_view(reinterpret_cast<const char*>(data.data()), kArchiveMagic.size()) !=
      kArchiveMagic) {
    throw FormatError(FormatError::Kind::bad_magic, context + ": bad magic, expected PCTA");
  }
  ByteReader r{data.subspan(kArchiveMagic.size()), context};
  TokenArchive archive;
  archive.version = r.u16();
  if (archive.version != kArchiveVersion) {
    throw FormatError(FormatError::Kind::version_mismatch,
                      context + ": unsupported archive version " + std::to_string(archive.version));
  }
  archive.vocab_size = r.u32();
  for (uint32_t& id : archive.special_ids) id = r.u32();
  const uint64_t count = r.u64();
  archive.sequences.reserve(count);
  for (uint64_t s = 0; s < count; ++s) {
    const uint32_t len = r.u32();
    if (static_cast<uint64_t>(len) * 4 > r.remaining()) {
      throw FormatError(FormatError::Kind::truncated,
                        context + ": sequence length exceeds remaining bytes");
    }
    std::vector<uint32_t> seq(len);
    for (uint32_t& id : seq) {
      id = r.u32();
      if (id >= archive.vocab_size) {
        throw FormatError(FormatError::Kind::checksum_mismatch,
                          context + ": token id out of range, file corrupt");
      }
    }
    archive.sequences.push_back(std::move(seq));
  }
  if (r.remaining() < 4) {
    throw FormatError(FormatError::Kind::truncated, context + ": missing trailing checksum");
  }
  if (r.remaining() > 4) {
    throw FormatError(FormatError::Kind::checksum_mismatch,
                      context + ": trailing bytes after sequence data");
  }
  const uint32_t stored = r.u32();
  std::span<const uint8_t> body{data.data() + kArchiveMagic.size(),
                                data.size() - kArchiveMagic.size() - 4};
  const uint32_t actual = crc32_ieee(body);
  if (stored != actual) {
    throw FormatError(FormatError::Kind::checksum_mismatch, context + ": CRC-32 mismatch");
  }
  return archive;
}

void write_archive(const std::string& path, const TokenArchive& archive) {
  write_file_bytes(path, serialize_archive(archive));
}

TokenArchive read_archive(const std::string& path) {
  return parse_archive(read_file_bytes(path), path);
}

}  // namespace claimforge
