#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reca/ca_engine.hpp"
#include "reca/cell_vector.hpp"
#include "reca/encoding.hpp"
#include "reca/rng.hpp"

namespace reca {

enum class Transition { permutation, normalized_addition };

std::string to_string(Transition t);
// Accepts "permutation" and "normadd" / "normalized_addition".
Transition parse_transition(const std::string& name);

struct ReservoirConfig {
  std::vector<Rule> rules;  // one rule: uniform CA; two rules: split in halves
  int iterations = 4;
  std::size_t r_count = 8;
  std::size_t c_multiplier = 10;
  std::size_t input_length = 4;
  Transition transition = Transition::permutation;
  std::uint64_t seed = 0;

  std::size_t width() const { return r_count * c_multiplier * input_length; }
  std::size_t feature_width() const { return static_cast<std::size_t>(iterations) * width(); }
  std::size_t size_metric() const {
    return r_count * static_cast<std::size_t>(iterations) * c_multiplier;
  }

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

struct StepTrace {
  CellVector a0;                       // state after the time transition
  std::vector<CellVector> iterations;  // A_1..A_I
  CellVector feature;                  // [A_1; A_2; ...; A_I]
};

// Mapped cells take the input bits; every other cell keeps prev_last's value.
CellVector transition_permutation(const CellVector& x, const CellVector& prev_last,
                                  const MappingSet& m);

// Cell-wise: 1+1 -> 1, 0+0 -> 0, and a fair coin from rng when the sum is 1.
CellVector transition_normalized_addition(const CellVector& x_encoded,
                                          const CellVector& prev_last, Rng& rng);

// Mutable single-owner run context: mappings, rule layout, and the final CA
// state of the previous sequence step.
class ReservoirState {
 public:
  ReservoirState() = default;
  explicit ReservoirState(ReservoirConfig config);

  bool initialized() const { return mappings_.has_value(); }
  const ReservoirConfig& config() const { return config_; }
  const MappingSet& mappings() const;
  const RuleAssignment& assignment() const;

  // Forget the previous step, so the next call is treated as t = 0.
  void reset();

  StepTrace process_step(const CellVector& x);
  // Resets first; one trace per input.
  std::vector<StepTrace> process_sequence(const std::vector<CellVector>& xs);

 private:
  ReservoirConfig config_;
  std::optional<MappingSet> mappings_;
  std::optional<RuleAssignment> assignment_;
  std::optional<CellVector> prev_last_;
  Rng noise_;
};

ReservoirState init_run(const ReservoirConfig& config);

}  // namespace reca
