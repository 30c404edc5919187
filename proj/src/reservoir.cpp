#include "reca/reservoir.hpp"

#include <stdexcept>
#include <utility>

namespace reca {

std::string to_string(Transition t) {
  return t == Transition::permutation ? "permutation" : "normadd";
}

Transition parse_transition(const std::string& name) {
  if (name == "permutation") return Transition::permutation;
  if (name == "normadd" || name == "normalized_addition") return Transition::normalized_addition;
  throw std::invalid_argument("unknown transition '" + name + "'");
}

void ReservoirConfig::validate() const {
  if (rules.empty() || rules.size() > 2) {
    throw std::invalid_argument("a reservoir takes one or two rules, got " +
                                std::to_string(rules.size()));
  }
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (r_count == 0 || c_multiplier == 0 || input_length == 0) {
    throw std::invalid_argument("R, C and input length must be positive");
  }
  if (width() < 3) throw std::invalid_argument("reservoir width R*C*L must be at least 3");
}

CellVector transition_permutation(const CellVector& x, const CellVector& prev_last,
                                  const MappingSet& m) {
  if (prev_last.width() != m.encoded_width()) {
    throw std::invalid_argument("previous state width does not match the mapping set");
  }
  return (prev_last & ~m.mapped_mask()) | encode(x, m);
}

CellVector transition_normalized_addition(const CellVector& x_encoded,
                                          const CellVector& prev_last, Rng& rng) {
  if (x_encoded.width() != prev_last.width()) {
    throw std::invalid_argument("normalized addition needs equal widths");
  }
  CellVector out(x_encoded.width());
  auto o = out.words();
  const auto a = x_encoded.words();
  const auto b = prev_last.words();
  for (std::size_t k = 0; k < o.size(); ++k) {
    const std::uint64_t coin = rng();
    o[k] = (a[k] & b[k]) | ((a[k] ^ b[k]) & coin);
  }
  return out;
}

ReservoirState::ReservoirState(ReservoirConfig config) : config_(std::move(config)) {
  config_.validate();
  mappings_.emplace(create_mappings(config_.input_length, config_.r_count, config_.c_multiplier,
                                    config_.seed));
  if (config_.rules.size() == 1) {
    assignment_.emplace(RuleAssignment::uniform(config_.rules[0], config_.width()));
  } else {
    assignment_.emplace(RuleAssignment::split(config_.rules[0], config_.rules[1], config_.width()));
  }
  noise_.seed(derive_seed(config_.seed, 0x6e6f697365ULL));
}

const MappingSet& ReservoirState::mappings() const {
  if (!mappings_) throw std::logic_error("reservoir has not been initialized");
  return *mappings_;
}

const RuleAssignment& ReservoirState::assignment() const {
  if (!assignment_) throw std::logic_error("reservoir has not been initialized");
  return *assignment_;
}

void ReservoirState::reset() { prev_last_.reset(); }

StepTrace ReservoirState::process_step(const CellVector& x) {
  if (!initialized()) throw std::logic_error("process_step called before init_run");
  StepTrace trace;
  if (!prev_last_) {
    trace.a0 = encode(x, *mappings_);
  } else if (config_.transition == Transition::permutation) {
    trace.a0 = transition_permutation(x, *prev_last_, *mappings_);
  } else {
    trace.a0 = transition_normalized_addition(encode(x, *mappings_), *prev_last_, noise_);
  }
  trace.iterations = evolve(trace.a0, *assignment_, config_.iterations);
  trace.feature = concatenate(trace.iterations);
  prev_last_ = trace.iterations.back();
  return trace;
}

std::vector<StepTrace> ReservoirState::process_sequence(const std::vector<CellVector>& xs) {
  if (xs.empty()) throw std::invalid_argument("cannot process an empty sequence");
  reset();
  std::vector<StepTrace> traces;
  traces.reserve(xs.size());
  for (const auto& x : xs) traces.push_back(process_step(x));
  return traces;
}

ReservoirState init_run(const ReservoirConfig& config) { return ReservoirState(config); }

}  // namespace reca
