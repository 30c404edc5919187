#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "reca/ca_engine.hpp"
#include "reca/readout.hpp"
#include "reca/reservoir.hpp"
#include "reca/tasks.hpp"

namespace reca {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kSuccessCriterion =
    "a run succeeds iff every step of every test sequence is classified correctly";
inline constexpr std::string_view kRunVariation = "runs differ only in their derived seed";

// Rules studied in the reference sweep.
inline constexpr std::array<int, 9> kSweepRules = {60, 90, 102, 105, 150, 153, 165, 180, 195};

using RuleSet = std::vector<Rule>;  // one rule or a pair

// Comma list of entries: a rule number ("90"), a pair ("60+102"), "singles"
// (every sweep rule) or "pairs" (every unordered pair of sweep rules).
std::vector<RuleSet> parse_rule_list(const std::string& text);
std::string rule_set_label(const RuleSet& rules);

struct ExperimentSpec {
  std::vector<RuleSet> rule_sets;
  std::vector<int> iterations = {2, 4};
  std::vector<std::size_t> mappings = {4, 8};
  std::size_t c_multiplier = 10;
  int distractor = 200;
  int runs = 20;
  std::uint64_t master_seed = 1;
  double regularization = 1.0;
  Transition transition = Transition::permutation;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct ResultRow {
  std::string rules;
  int iterations = 0;
  std::size_t r_count = 0;
  std::size_t c_multiplier = 0;
  std::size_t size_metric = 0;
  int runs = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_accuracy = 0.0;
  double wall_time_s = 0.0;
  std::string error;  // empty unless the configuration was rejected

  bool operator==(const ResultRow&) const = default;
};

struct RunOutcome {
  bool success = false;
  double accuracy = 0.0;
};

// Per-run seed from (master seed, configuration index, run index) alone.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t config_index, std::size_t run_index);

// Fresh reservoir, train the readout on every step of the train set, score
// on the test set.
RunOutcome run_single(const ReservoirConfig& config, const Dataset& dataset,
                      const TrainOptions& options);

// Configurations are enumerated rule set -> I -> R; rows come back in that order.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

enum class ResultFormat { csv, json };
ResultFormat parse_format(const std::string& name);

void emit_results(const std::vector<ResultRow>& rows, const ExperimentSpec& spec,
                  ResultFormat format, const std::filesystem::path& path);
std::string results_csv(const std::vector<ResultRow>& rows, const ExperimentSpec& spec);
nlohmann::json results_json(const std::vector<ResultRow>& rows, const ExperimentSpec& spec);
std::vector<ResultRow> rows_from_json(const nlohmann::json& doc);

// 1 = black. Row-major, height rows of width pixels.
struct Bitmap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  bool at(std::size_t row, std::size_t col) const { return pixels[row * width + col] != 0; }
};

// One row per CA iteration (A_1..A_I of each step), time downward. With
// separators, a dotted row sits between consecutive sequence steps.
Bitmap render_diagram(const std::vector<StepTrace>& traces, bool separators);
void write_pbm(const Bitmap& bitmap, const std::filesystem::path& path);
Bitmap read_pbm(const std::filesystem::path& path);

struct DiagramRequest {
  ReservoirConfig config;
  int distractor = 200;
  std::size_t sequence_index = 0;
  bool separators = true;
};

Bitmap emit_diagram(const DiagramRequest& request, const std::filesystem::path& path);

}  // namespace reca
