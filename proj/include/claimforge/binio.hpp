#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace claimforge {

/// One exception type for every binary container problem. `kind` keeps the
/// failure classes distinguishable without a class per failure.
class FormatError : public std::runtime_error {
 public:
  enum class Kind { bad_magic, version_mismatch, checksum_mismatch, truncated };

  FormatError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

uint32_t crc32_ieee(std::span<const uint8_t> data);

/// Little-endian append-only buffer.
class ByteWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u16(uint16_t v);
  void u32(uint32_t v);
  void u64(uint64_t v);
  void f64(double v);
  void bytes(std::span<const uint8_t> data);
  void bytes(std::string_view data);

  const std::vector<uint8_t>& buffer() const { return buf_; }
  size_t size() const { return buf_.size(); }

 private:
  std::vector<uint8_t> buf_;
};

/// Little-endian cursor over an in-memory file. Any read past the end throws
/// FormatError{truncated}.
class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> data, std::string context)
      : data_(data), context_(std::move(context)) {}

  uint8_t u8();
  uint16_t u16();
  uint32_t u32();
  uint64_t u64();
  double f64();
  std::span<const uint8_t> raw(size_t n);

  size_t pos() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(size_t n) const;

  std::span<const uint8_t> data_;
  std::string context_;
  size_t pos_ = 0;
};

std::vector<uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const uint8_t> data);

}  // namespace claimforge
