#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "reca/cell_vector.hpp"

namespace reca {

// Output classes of the 5-bit memory task, one per output signal.
enum OutputClass : int { kY1 = 0, kY2 = 1, kY3 = 2 };
inline constexpr int kNumOutputs = 3;
inline constexpr std::size_t kInputSignals = 4;
inline constexpr std::size_t kPatternBits = 5;

struct SequenceSample {
  std::string pattern;              // five '0'/'1' characters, first step first
  int distractor = 0;               // T_d
  std::vector<CellVector> inputs;   // T one-hot rows over (a1, a2, a3, a4)
  std::vector<int> targets;         // T class indices into (y1, y2, y3)

  std::size_t length() const { return inputs.size(); }
};

struct Dataset {
  std::vector<SequenceSample> train;
  std::vector<SequenceSample> test;
};

// Step layout for T = T_d + 10:
//   0..4            pattern on a1 (bit) / a2 (complement), target y3
//   5..T_d+3        distractor a3, target y3
//   T_d+4           cue a4, target y3
//   T_d+5..T_d+9    a3; targets replay the pattern on y1 (bit 1) / y2 (bit 0)
SequenceSample make_5bit_sequence(unsigned pattern, int distractor);

// Train and test both hold all 32 patterns in ascending binary order.
Dataset generate_5bit(int distractor);

struct RunScore {
  bool success = false;     // every step of every test sequence correct
  double accuracy = 0.0;    // fraction of correct steps
  std::size_t correct = 0;
  std::size_t total = 0;
};

// predictions[s][t] is the predicted class at step t of test sequence s.
RunScore score_run(const std::vector<std::vector<int>>& predictions, const Dataset& dataset);

// One row per step: sequence,step,a1,a2,a3,a4,y1,y2,y3.
void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& path);

}  // namespace reca
