#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trio {

using Bytes = std::vector<std::uint8_t>;

/// Fixed-length bit sequence. Bit 0 is the leftmost bit of the textual form
/// (wire 1 for circuit inputs). Storage is packed into 64-bit words, bit i at
/// word i/64, position i%64; bits past size() are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t len, bool value = false);

  /// Parses '0'/'1' characters. Throws std::invalid_argument on anything else.
  static BitString from_string(std::string_view text);
  static BitString from_word(std::uint64_t word, std::size_t len);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  /// Reads up to 64 bits starting at pos; bit pos lands in bit 0 of the result.
  std::uint64_t extract(std::size_t pos, std::size_t count) const;
  /// Writes count low bits of value starting at pos.
  void deposit(std::size_t pos, std::size_t count, std::uint64_t value);

  BitString slice(std::size_t pos, std::size_t len) const;
  void append(const BitString& other);
  void push_back(bool bit);

  BitString& operator^=(const BitString& other);
  BitString& operator&=(const BitString& other);
  friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }
  friend BitString operator&(BitString lhs, const BitString& rhs) { return lhs &= rhs; }
  friend bool operator==(const BitString&, const BitString&) = default;

  std::size_t popcount() const noexcept;
  bool none() const noexcept;

  std::string to_string() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

 private:
  void check_same_size(const BitString& other) const;
  void clear_tail() noexcept;

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Packs bits LSB-first into ceil(size/8) bytes.
Bytes to_bytes(const BitString& bits);
/// Inverse of to_bytes; throws std::length_error if the byte count does not
/// match ceil(bits/8).
BitString bits_from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace trio
