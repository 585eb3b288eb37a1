#include "trio/bits.hpp"

#include <bit>
#include <stdexcept>

namespace trio {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

std::uint64_t low_mask(std::size_t count) {
  return count >= kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

}  // namespace

BitString::BitString(std::size_t len, bool value)
    : words_(words_for(len), value ? ~std::uint64_t{0} : 0), size_(len) {
  clear_tail();
}

BitString BitString::from_string(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.set(i, true);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1', got '" +
                                  std::string(text) + "'");
    }
  }
  return out;
}

BitString BitString::from_word(std::uint64_t word, std::size_t len) {
  if (len > kWordBits) throw std::invalid_argument("from_word: len exceeds 64");
  BitString out(len);
  if (len > 0) out.words_[0] = word & low_mask(len);
  return out;
}

bool BitString::get(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("BitString::get index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= size_) throw std::out_of_range("BitString::set index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= bit;
  } else {
    words_[i / kWordBits] &= ~bit;
  }
}

void BitString::flip(std::size_t i) {
  if (i >= size_) throw std::out_of_range("BitString::flip index out of range");
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

std::uint64_t BitString::extract(std::size_t pos, std::size_t count) const {
  if (count > kWordBits || pos + count > size_) {
    throw std::out_of_range("BitString::extract range out of bounds");
  }
  if (count == 0) return 0;
  const std::size_t w = pos / kWordBits;
  const std::size_t off = pos % kWordBits;
  std::uint64_t value = words_[w] >> off;
  if (off != 0 && off + count > kWordBits) value |= words_[w + 1] << (kWordBits - off);
  return value & low_mask(count);
}

void BitString::deposit(std::size_t pos, std::size_t count, std::uint64_t value) {
  if (count > kWordBits || pos + count > size_) {
    throw std::out_of_range("BitString::deposit range out of bounds");
  }
  if (count == 0) return;
  value &= low_mask(count);
  const std::size_t w = pos / kWordBits;
  const std::size_t off = pos % kWordBits;
  const std::uint64_t mask = low_mask(count);
  words_[w] = (words_[w] & ~(mask << off)) | (value << off);
  if (off != 0 && off + count > kWordBits) {
    const std::size_t spill = off + count - kWordBits;
    const std::uint64_t hi_mask = low_mask(spill);
    words_[w + 1] = (words_[w + 1] & ~hi_mask) | (value >> (kWordBits - off));
  }
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > size_) throw std::out_of_range("BitString::slice out of bounds");
  BitString out(len);
  for (std::size_t done = 0; done < len; done += kWordBits) {
    const std::size_t chunk = std::min(kWordBits, len - done);
    out.deposit(done, chunk, extract(pos + done, chunk));
  }
  return out;
}

void BitString::append(const BitString& other) {
  const std::size_t start = size_;
  size_ += other.size_;
  words_.resize(words_for(size_), 0);
  for (std::size_t done = 0; done < other.size_; done += kWordBits) {
    const std::size_t chunk = std::min(kWordBits, other.size_ - done);
    deposit(start + done, chunk, other.extract(done, chunk));
  }
}

void BitString::push_back(bool bit) {
  ++size_;
  if (words_.size() < words_for(size_)) words_.push_back(0);
  if (bit) set(size_ - 1, true);
}

void BitString::check_same_size(const BitString& other) const {
  if (size_ != other.size_) {
    throw std::length_error("bit strings differ in length: " + std::to_string(size_) + " vs " +
                            std::to_string(other.size_));
  }
}

BitString& BitString::operator^=(const BitString& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitString& BitString::operator&=(const BitString& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::size_t BitString::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitString::none() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

void BitString::clear_tail() noexcept {
  if (size_ % kWordBits != 0 && !words_.empty()) words_.back() &= low_mask(size_ % kWordBits);
}

Bytes to_bytes(const BitString& bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  auto words = bits.words();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

BitString bits_from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits) {
  if (bytes.size() != (bits + 7) / 8) {
    throw std::length_error("payload holds " + std::to_string(bytes.size()) +
                            " bytes, expected " + std::to_string((bits + 7) / 8));
  }
  BitString out(bits);
  auto words = out.words();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    words[i / 8] |= std::uint64_t{bytes[i]} << (8 * (i % 8));
  }
  // Stray high bits in the final byte are malformed input; mask them off.
  if (bits % 64 != 0 && !words.empty()) words.back() &= low_mask(bits % 64);
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

}  // namespace trio
