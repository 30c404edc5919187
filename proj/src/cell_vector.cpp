#include "reca/cell_vector.hpp"

#include <bit>
#include <stdexcept>

namespace reca {

CellVector::CellVector(std::size_t width) : width_(width), words_(word_count(width), 0) {}

CellVector CellVector::from_string(std::string_view bits) {
  CellVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("cell string may only contain '0' and '1'");
    }
  }
  return v;
}

bool CellVector::get(std::size_t i) const {
  if (i >= width_) throw std::out_of_range("cell index out of range");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void CellVector::set(std::size_t i, bool value) {
  if (i >= width_) throw std::out_of_range("cell index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

std::size_t CellVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void CellVector::mask_tail() {
  const std::size_t rem = width_ % 64;
  if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

CellVector CellVector::operator~() const {
  CellVector out(*this);
  for (auto& w : out.words_) w = ~w;
  out.mask_tail();
  return out;
}

void CellVector::require_same_width(const CellVector& other) const {
  if (other.width_ != width_) throw std::invalid_argument("cell vector width mismatch");
}

CellVector& CellVector::operator&=(const CellVector& other) {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

CellVector& CellVector::operator|=(const CellVector& other) {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

CellVector& CellVector::operator^=(const CellVector& other) {
  require_same_width(other);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

CellVector CellVector::reversed() const {
  CellVector out(width_);
  for (std::size_t i = 0; i < width_; ++i) {
    if (get(i)) out.set(width_ - 1 - i, true);
  }
  return out;
}

std::vector<std::uint32_t> CellVector::active_indices() const {
  std::vector<std::uint32_t> idx;
  idx.reserve(popcount());
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w != 0) {
      idx.push_back(static_cast<std::uint32_t>(k * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return idx;
}

std::string CellVector::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

CellVector concatenate(std::span<const CellVector> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.width();
  CellVector out(total);
  auto dst = out.words();
  std::size_t offset = 0;
  for (const auto& p : parts) {
    const auto src = p.words();
    const std::size_t shift = offset % 64;
    const std::size_t base = offset / 64;
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[base + k] |= src[k] << shift;
      if (shift != 0 && base + k + 1 < dst.size()) dst[base + k + 1] |= src[k] >> (64 - shift);
    }
    offset += p.width();
  }
  return out;
}

}  // namespace reca
