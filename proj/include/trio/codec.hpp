#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "trio/bits.hpp"

namespace trio {

/// Thrown by ByteReader when a payload is shorter or longer than expected.
class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Little-endian payload builder.
class ByteWriter {
 public:
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void bits(const BitString& b) {
    const Bytes raw = to_bytes(b);
    out_.insert(out_.end(), raw.begin(), raw.end());
  }
  Bytes take() { return std::move(out_); }
  std::size_t size() const noexcept { return out_.size(); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  Bytes out_;
};

/// bits_from_bytes that reports a size mismatch as MalformedMessage.
inline BitString unpack_bits(std::span<const std::uint8_t> data, std::size_t bits) {
  if (data.size() != (bits + 7) / 8) throw MalformedMessage("payload has the wrong length");
  return bits_from_bytes(data, bits);
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  BitString bits(std::size_t count) {
    const std::size_t n = (count + 7) / 8;
    need(n);
    BitString out = bits_from_bytes(data_.subspan(pos_, n), count);
    pos_ += n;
    return out;
  }
  bool done() const noexcept { return pos_ == data_.size(); }
  void expect_done() const {
    if (!done()) throw MalformedMessage("trailing bytes in payload");
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw MalformedMessage("payload truncated");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace trio
