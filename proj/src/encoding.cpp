#include "reca/encoding.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "reca/rng.hpp"

namespace reca {

MappingSet::MappingSet(std::size_t input_length, std::size_t r_count, std::size_t c_multiplier,
                       std::uint64_t seed, std::vector<std::vector<std::uint32_t>> maps)
    : input_length_(input_length),
      r_count_(r_count),
      c_multiplier_(c_multiplier),
      seed_(seed),
      maps_(std::move(maps)) {
  if (input_length_ == 0 || r_count_ == 0 || c_multiplier_ == 0) {
    throw std::invalid_argument("mapping parameters L, R and C must all be positive");
  }
  if (maps_.size() != r_count_) throw std::invalid_argument("expected one map per mapping");

  const std::size_t seg = segment_width();
  mapped_mask_ = CellVector(encoded_width());
  for (std::size_t p = 0; p < r_count_; ++p) {
    const auto& map = maps_[p];
    if (map.size() != input_length_) throw std::invalid_argument("map length must equal L");
    std::vector<bool> used(seg, false);
    for (auto target : map) {
      if (target >= seg) throw std::invalid_argument("map target outside its segment");
      if (used[target]) throw std::invalid_argument("map is not injective");
      used[target] = true;
      mapped_mask_.set(p * seg + target, true);
    }
  }
}

MappingSet create_mappings(std::size_t input_length, std::size_t r_count,
                           std::size_t c_multiplier, std::uint64_t seed) {
  if (input_length == 0 || r_count == 0 || c_multiplier == 0) {
    throw std::invalid_argument("mapping parameters L, R and C must all be positive");
  }
  const std::size_t seg = c_multiplier * input_length;
  Rng rng(seed);
  std::vector<std::uint32_t> cells(seg);
  std::vector<std::vector<std::uint32_t>> maps;
  maps.reserve(r_count);
  for (std::size_t p = 0; p < r_count; ++p) {
    std::iota(cells.begin(), cells.end(), 0u);
    // partial Fisher-Yates: the first L slots become a uniform ordered sample
    for (std::size_t j = 0; j < input_length; ++j) {
      const auto k = j + static_cast<std::size_t>(uniform_below(rng, seg - j));
      std::swap(cells[j], cells[k]);
    }
    maps.emplace_back(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(input_length));
  }
  return MappingSet(input_length, r_count, c_multiplier, seed, std::move(maps));
}

CellVector encode(const CellVector& x, const MappingSet& m) {
  if (x.width() != m.input_length()) {
    throw std::invalid_argument("input has " + std::to_string(x.width()) + " bits, mapping expects " +
                                std::to_string(m.input_length()));
  }
  CellVector out(m.encoded_width());
  const std::size_t seg = m.segment_width();
  for (std::size_t p = 0; p < m.r_count(); ++p) {
    const auto& map = m.maps()[p];
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (x.get(j)) out.set(p * seg + map[j], true);
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const MappingSet& m) {
  j = nlohmann::json{{"input_length", m.input_length()},
                     {"r_count", m.r_count()},
                     {"c_multiplier", m.c_multiplier()},
                     {"seed", m.seed()},
                     {"rng", kRngAlgorithm},
                     {"maps", m.maps()}};
}

MappingSet mapping_set_from_json(const nlohmann::json& j) {
  return MappingSet(j.at("input_length").get<std::size_t>(), j.at("r_count").get<std::size_t>(),
                    j.at("c_multiplier").get<std::size_t>(), j.at("seed").get<std::uint64_t>(),
                    j.at("maps").get<std::vector<std::vector<std::uint32_t>>>());
}

}  // namespace reca
