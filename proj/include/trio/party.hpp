#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace trio {

/// One of the three parties P1, P2, P3.
class PartyId {
 public:
  constexpr explicit PartyId(int index) : index_(index) {
    if (index < 1 || index > 3) throw std::out_of_range("party index must be 1, 2 or 3");
  }

  constexpr int index() const noexcept { return index_; }
  /// Zero-based slot for array indexing.
  constexpr std::size_t slot() const noexcept { return static_cast<std::size_t>(index_ - 1); }
  /// h(i+1), the successor on the ring.
  constexpr PartyId next() const noexcept { return PartyId(index_ % 3 + 1, 0); }
  /// h(i-1), the predecessor on the ring.
  constexpr PartyId prev() const noexcept { return PartyId((index_ + 1) % 3 + 1, 0); }

  std::string name() const { return "P" + std::to_string(index_); }

  friend constexpr bool operator==(PartyId, PartyId) = default;
  friend constexpr auto operator<=>(PartyId, PartyId) = default;

 private:
  constexpr PartyId(int index, int /*unchecked*/) noexcept : index_(index) {}
  int index_;
};

/// h(i) = (i - 1) % 3 + 1 for i >= 1.
constexpr PartyId h(long i) {
  if (i < 1) throw std::out_of_range("h(i) requires i >= 1");
  return PartyId(static_cast<int>((i - 1) % 3 + 1));
}

inline constexpr std::array<PartyId, 3> kParties{PartyId(1), PartyId(2), PartyId(3)};

}  // namespace trio
