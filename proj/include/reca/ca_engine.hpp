#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "reca/cell_vector.hpp"

namespace reca {

// Elementary CA update function. Neighborhood (left, center, right) is read
// as the 3-bit number 4*left + 2*center + right; bit n of the Wolfram number
// is the output for neighborhood n.
class Rule {
 public:
  // Throws std::invalid_argument unless 0 <= number <= 255.
  explicit Rule(int number);

  int number() const { return number_; }
  bool output(unsigned neighborhood) const { return (number_ >> (neighborhood & 7u)) & 1; }
  bool output(bool left, bool center, bool right) const {
    return output((unsigned{left} << 2) | (unsigned{center} << 1) | unsigned{right});
  }
  std::array<bool, 8> table() const;

  bool operator==(const Rule&) const = default;

 private:
  int number_;
};

Rule rule_from_number(int n);

// Z'(a,b,c) = !Z(!a,!b,!c)
Rule complement_rule(Rule z);
// Z'(a,b,c) = Z(c,b,a)
Rule mirror_rule(Rule z);

struct Segment {
  Rule rule;
  std::size_t cell_count;
};

// Partition of a cell vector into contiguous runs of cells, each governed by
// one rule. Segments are laid out left to right starting at cell 0.
class RuleAssignment {
 public:
  // Throws if the list is empty, any count is 0, or the total width is < 3.
  explicit RuleAssignment(std::vector<Segment> segments);

  static RuleAssignment uniform(Rule rule, std::size_t width);
  // First rule takes floor(width / 2) cells, second rule the rest.
  static RuleAssignment split(Rule first, Rule second, std::size_t width);

  std::size_t width() const { return width_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool is_uniform() const { return segments_.size() == 1; }

  // Index of the first cell of the second segment (0 for uniform assignments).
  std::size_t boundary() const;

  // Word-packed mask of the cells owned by segment k.
  const CellVector& mask(std::size_t k) const { return masks_[k]; }

 private:
  std::vector<Segment> segments_;
  std::vector<CellVector> masks_;
  std::size_t width_ = 0;
};

// One synchronous update with wrap-around boundaries. Each cell uses the rule
// of the segment it belongs to; neighbors may lie in another segment.
CellVector step(const CellVector& state, const RuleAssignment& assignment);

// Returns A_1..A_I; the input state itself is not included.
std::vector<CellVector> evolve(const CellVector& state, const RuleAssignment& assignment,
                               int iterations);

}  // namespace reca
