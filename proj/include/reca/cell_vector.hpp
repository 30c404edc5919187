#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reca {

// Fixed-width binary cell state, packed 64 cells per word. Cell i lives in
// word i / 64 at bit i % 64. Bits past width() in the last word are always 0.
class CellVector {
 public:
  CellVector() = default;
  explicit CellVector(std::size_t width);

  // Parses a string of '0'/'1' characters; index 0 is the leftmost character.
  static CellVector from_string(std::string_view bits);

  std::size_t width() const { return width_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  std::size_t popcount() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  // Clears any bits past width() in the last word.
  void mask_tail();

  CellVector operator~() const;
  CellVector& operator&=(const CellVector& other);
  CellVector& operator|=(const CellVector& other);
  CellVector& operator^=(const CellVector& other);

  // Position i moves to width() - 1 - i.
  CellVector reversed() const;

  // Indices of all 1 cells, ascending.
  std::vector<std::uint32_t> active_indices() const;

  std::string to_string() const;

  bool operator==(const CellVector&) const = default;

 private:
  void require_same_width(const CellVector& other) const;

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

inline CellVector operator&(CellVector a, const CellVector& b) { return a &= b; }
inline CellVector operator|(CellVector a, const CellVector& b) { return a |= b; }
inline CellVector operator^(CellVector a, const CellVector& b) { return a ^= b; }

// Concatenates the vectors end to end: parts[0] occupies the lowest indices.
CellVector concatenate(std::span<const CellVector> parts);

constexpr std::size_t word_count(std::size_t width) { return (width + 63) / 64; }

}  // namespace reca
