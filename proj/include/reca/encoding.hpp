#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"

#include "reca/cell_vector.hpp"

namespace reca {

// R injective maps from input positions {0..L-1} into segments of width C*L.
// The encoded vector concatenates the R segments, so map p writes into cells
// [p*C*L, (p+1)*C*L).
class MappingSet {
 public:
  // Validates ranges and injectivity; throws std::invalid_argument otherwise.
  MappingSet(std::size_t input_length, std::size_t r_count, std::size_t c_multiplier,
             std::uint64_t seed, std::vector<std::vector<std::uint32_t>> maps);

  std::size_t input_length() const { return input_length_; }
  std::size_t r_count() const { return r_count_; }
  std::size_t c_multiplier() const { return c_multiplier_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t segment_width() const { return c_multiplier_ * input_length_; }
  std::size_t encoded_width() const { return r_count_ * segment_width(); }

  // maps()[p][j] is the target cell of input bit j within segment p.
  const std::vector<std::vector<std::uint32_t>>& maps() const { return maps_; }

  // Cells (over the full encoded width) that some input bit maps to.
  const CellVector& mapped_mask() const { return mapped_mask_; }

  bool operator==(const MappingSet& other) const {
    return input_length_ == other.input_length_ && r_count_ == other.r_count_ &&
           c_multiplier_ == other.c_multiplier_ && seed_ == other.seed_ && maps_ == other.maps_;
  }

 private:
  std::size_t input_length_;
  std::size_t r_count_;
  std::size_t c_multiplier_;
  std::uint64_t seed_;
  std::vector<std::vector<std::uint32_t>> maps_;
  CellVector mapped_mask_;
};

// Each map is a uniformly random ordered choice of L distinct cells out of C*L.
MappingSet create_mappings(std::size_t input_length, std::size_t r_count,
                           std::size_t c_multiplier, std::uint64_t seed);

// Unmapped cells are 0.
CellVector encode(const CellVector& x, const MappingSet& m);

void to_json(nlohmann::json& j, const MappingSet& m);
MappingSet mapping_set_from_json(const nlohmann::json& j);

}  // namespace reca
