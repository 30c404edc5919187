#include "reca/ca_engine.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace reca {

Rule::Rule(int number) : number_(number) {
  if (number < 0 || number > 255) {
    throw std::invalid_argument("rule number must lie in [0, 255], got " + std::to_string(number));
  }
}

std::array<bool, 8> Rule::table() const {
  std::array<bool, 8> t{};
  for (unsigned n = 0; n < 8; ++n) t[n] = output(n);
  return t;
}

Rule rule_from_number(int n) { return Rule(n); }

Rule complement_rule(Rule z) {
  int out = 0;
  for (unsigned n = 0; n < 8; ++n) {
    if (!z.output(~n & 7u)) out |= 1 << n;
  }
  return Rule(out);
}

Rule mirror_rule(Rule z) {
  int out = 0;
  for (unsigned n = 0; n < 8; ++n) {
    const unsigned swapped = ((n & 1u) << 2) | (n & 2u) | ((n >> 2) & 1u);
    if (z.output(swapped)) out |= 1 << n;
  }
  return Rule(out);
}

RuleAssignment::RuleAssignment(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("rule assignment needs at least one segment");
  for (const auto& s : segments_) {
    if (s.cell_count == 0) throw std::invalid_argument("rule segment must own at least one cell");
    width_ += s.cell_count;
  }
  if (width_ < 3) throw std::invalid_argument("cellular automaton width must be at least 3");

  std::size_t offset = 0;
  masks_.reserve(segments_.size());
  for (const auto& s : segments_) {
    CellVector m(width_);
    for (std::size_t i = offset; i < offset + s.cell_count; ++i) m.set(i, true);
    masks_.push_back(std::move(m));
    offset += s.cell_count;
  }
}

RuleAssignment RuleAssignment::uniform(Rule rule, std::size_t width) {
  return RuleAssignment({Segment{rule, width}});
}

RuleAssignment RuleAssignment::split(Rule first, Rule second, std::size_t width) {
  if (width < 3) throw std::invalid_argument("cellular automaton width must be at least 3");
  const std::size_t left = width / 2;
  return RuleAssignment({Segment{first, left}, Segment{second, width - left}});
}

std::size_t RuleAssignment::boundary() const {
  return segments_.size() > 1 ? segments_.front().cell_count : 0;
}

namespace {

std::uint64_t apply_rule(Rule rule, std::uint64_t l, std::uint64_t c, std::uint64_t r) {
  std::uint64_t out = 0;
  for (unsigned n = 0; n < 8; ++n) {
    if (!rule.output(n)) continue;
    out |= ((n & 4u) ? l : ~l) & ((n & 2u) ? c : ~c) & ((n & 1u) ? r : ~r);
  }
  return out;
}

}  // namespace

CellVector step(const CellVector& state, const RuleAssignment& assignment) {
  const std::size_t width = state.width();
  if (width != assignment.width()) {
    throw std::invalid_argument("rule assignment covers " + std::to_string(assignment.width()) +
                                " cells but state has " + std::to_string(width));
  }
  const auto s = state.words();
  const std::size_t nw = s.size();

  // left[i] = s[i-1], right[i] = s[i+1], both wrapping around.
  CellVector left(width), right(width);
  auto lw = left.words();
  auto rw = right.words();
  for (std::size_t k = 0; k < nw; ++k) {
    lw[k] = (s[k] << 1) | (k > 0 ? s[k - 1] >> 63 : 0);
    rw[k] = (s[k] >> 1) | (k + 1 < nw ? s[k + 1] << 63 : 0);
  }
  left.mask_tail();
  left.set(0, state.get(width - 1));
  right.set(width - 1, state.get(0));

  CellVector out(width);
  auto ow = out.words();
  if (assignment.is_uniform()) {
    const Rule rule = assignment.segments().front().rule;
    for (std::size_t k = 0; k < nw; ++k) ow[k] = apply_rule(rule, lw[k], s[k], rw[k]);
  } else {
    for (std::size_t seg = 0; seg < assignment.segments().size(); ++seg) {
      const Rule rule = assignment.segments()[seg].rule;
      const auto m = assignment.mask(seg).words();
      for (std::size_t k = 0; k < nw; ++k) {
        if (m[k] != 0) ow[k] |= apply_rule(rule, lw[k], s[k], rw[k]) & m[k];
      }
    }
  }
  out.mask_tail();
  return out;
}

std::vector<CellVector> evolve(const CellVector& state, const RuleAssignment& assignment,
                               int iterations) {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  std::vector<CellVector> out;
  out.reserve(static_cast<std::size_t>(iterations));
  out.push_back(step(state, assignment));
  for (int k = 1; k < iterations; ++k) out.push_back(step(out.back(), assignment));
  return out;
}

}  // namespace reca
