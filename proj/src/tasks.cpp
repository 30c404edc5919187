#include "reca/tasks.hpp"

#include <fstream>
#include <stdexcept>

namespace reca {

namespace {

CellVector one_hot_input(std::size_t signal) {
  CellVector v(kInputSignals);
  v.set(signal, true);
  return v;
}

void add_step(SequenceSample& s, std::size_t signal, int target) {
  s.inputs.push_back(one_hot_input(signal));
  s.targets.push_back(target);
}

}  // namespace

SequenceSample make_5bit_sequence(unsigned pattern, int distractor) {
  if (distractor < 1) throw std::invalid_argument("distractor period must be >= 1");
  if (pattern >= (1u << kPatternBits)) throw std::invalid_argument("pattern must fit in 5 bits");

  SequenceSample s;
  s.distractor = distractor;
  const std::size_t total = static_cast<std::size_t>(distractor) + 10;
  s.inputs.reserve(total);
  s.targets.reserve(total);
  for (std::size_t k = 0; k < kPatternBits; ++k) {
    const bool bit = (pattern >> (kPatternBits - 1 - k)) & 1u;
    s.pattern.push_back(bit ? '1' : '0');
  }

  for (char bit : s.pattern) add_step(s, bit == '1' ? 0 : 1, kY3);
  for (int t = 0; t < distractor - 1; ++t) add_step(s, 2, kY3);
  add_step(s, 3, kY3);
  for (char bit : s.pattern) add_step(s, 2, bit == '1' ? kY1 : kY2);
  return s;
}

Dataset generate_5bit(int distractor) {
  if (distractor < 1) throw std::invalid_argument("distractor period must be >= 1");
  Dataset d;
  for (unsigned p = 0; p < (1u << kPatternBits); ++p) d.train.push_back(make_5bit_sequence(p, distractor));
  d.test = d.train;
  return d;
}

RunScore score_run(const std::vector<std::vector<int>>& predictions, const Dataset& dataset) {
  if (predictions.size() != dataset.test.size()) {
    throw std::invalid_argument("expected predictions for " + std::to_string(dataset.test.size()) +
                                " test sequences, got " + std::to_string(predictions.size()));
  }
  RunScore score;
  for (std::size_t s = 0; s < predictions.size(); ++s) {
    const auto& targets = dataset.test[s].targets;
    if (predictions[s].size() != targets.size()) {
      throw std::invalid_argument("prediction count mismatch in test sequence " + std::to_string(s));
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (predictions[s][t] == targets[t]) ++score.correct;
    }
    score.total += targets.size();
  }
  score.success = score.total > 0 && score.correct == score.total;
  score.accuracy = score.total > 0 ? static_cast<double>(score.correct) / score.total : 0.0;
  return score;
}

void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "sequence,step,a1,a2,a3,a4,y1,y2,y3\n";
  for (std::size_t s = 0; s < dataset.test.size(); ++s) {
    const auto& seq = dataset.test[s];
    for (std::size_t t = 0; t < seq.length(); ++t) {
      out << s << ',' << t;
      for (std::size_t a = 0; a < kInputSignals; ++a) out << ',' << seq.inputs[t].get(a);
      for (int y = 0; y < kNumOutputs; ++y) out << ',' << (seq.targets[t] == y ? 1 : 0);
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace reca
