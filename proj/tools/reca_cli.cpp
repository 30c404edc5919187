// Command-line driver: runs 5-bit memory task sweeps over CA reservoirs and
// writes result tables, space-time diagrams and the task dataset.
#include <cstdint>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "reca/harness.hpp"
#include "reca/tasks.hpp"

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 1) {
      throw std::invalid_argument(std::string("bad ") + what + " value '" + item + "'");
    }
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

void print_rows(const std::vector<reca::ResultRow>& rows) {
  std::printf("%-10s %3s %3s %4s %6s %9s %9s %8s\n", "rules", "I", "R", "C", "size", "success",
              "accuracy", "time_s");
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::printf("%-10s %3d %3zu %4zu  error: %s\n", r.rules.c_str(), r.iterations, r.r_count,
                  r.c_multiplier, r.error.c_str());
      continue;
    }
    std::printf("%-10s %3d %3zu %4zu %6zu %8.1f%% %9.5f %8.2f\n", r.rules.c_str(), r.iterations,
                r.r_count, r.c_multiplier, r.size_metric, 100.0 * r.success_rate, r.mean_accuracy,
                r.wall_time_s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ReCA: reservoir computing with elementary cellular automata on the 5-bit memory task"};

  std::string rules = "singles";
  std::string iterations = "2,4";
  std::string mappings = "4,8";
  std::size_t c_multiplier = 10;
  int distractor = 200;
  int runs = 20;
  std::uint64_t seed = 1;
  std::string transition = "permutation";
  double reg = 1.0;
  std::string out_path;
  std::string format = "csv";
  std::string diagram_path;
  std::size_t diagram_sequence = 0;
  bool no_separators = false;
  std::string dataset_path;
  unsigned threads = 0;
  bool quiet = false;

  app.add_option("--rules", rules,
                 "Comma list of rules; 'a+b' is a two-rule reservoir, 'singles'/'pairs' expand "
                 "to the standard sweep")
      ->capture_default_str();
  app.add_option("--iterations", iterations, "Comma list of CA iterations I")->capture_default_str();
  app.add_option("--mappings", mappings, "Comma list of random mapping counts R")->capture_default_str();
  app.add_option("--c-multiplier", c_multiplier, "Segment expansion factor C")->capture_default_str();
  app.add_option("--distractor", distractor, "Distractor period T_d")->capture_default_str();
  app.add_option("--runs", runs, "Independent runs per configuration")->capture_default_str();
  app.add_option("--seed", seed, "Master seed")->capture_default_str();
  app.add_option("--transition", transition, "Time transition: permutation | normadd")
      ->check(CLI::IsMember({"permutation", "normadd"}))
      ->capture_default_str();
  app.add_option("--reg", reg, "Readout hinge-loss regularization C")->capture_default_str();
  app.add_option("--out", out_path, "Write result rows to this file");
  app.add_option("--format", format, "Result file format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--diagram", diagram_path,
                 "Write a PBM space-time diagram of the first configuration (first I and R), "
                 "run 0, and skip the sweep");
  app.add_option("--diagram-sequence", diagram_sequence, "Test sequence index for --diagram")
      ->capture_default_str();
  app.add_flag("--no-separators", no_separators, "Omit the dotted rows between sequence steps");
  app.add_option("--dataset-csv", dataset_path, "Also export the 5-bit task dataset as CSV");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("-q,--quiet", quiet, "Do not print the result table");

  CLI11_PARSE(app, argc, argv);

  try {
    reca::ExperimentSpec spec;
    spec.rule_sets = reca::parse_rule_list(rules);
    spec.iterations = parse_list<int>(iterations, "iterations");
    spec.mappings = parse_list<std::size_t>(mappings, "mappings");
    spec.c_multiplier = c_multiplier;
    spec.distractor = distractor;
    spec.runs = runs;
    spec.master_seed = seed;
    spec.transition = reca::parse_transition(transition);
    spec.regularization = reg;
    spec.threads = threads;
    spec.validate();

    if (!dataset_path.empty()) reca::write_dataset_csv(reca::generate_5bit(distractor), dataset_path);

    if (!diagram_path.empty()) {
      reca::DiagramRequest req;
      req.config.rules = spec.rule_sets.front();
      req.config.iterations = spec.iterations.front();
      req.config.r_count = spec.mappings.front();
      req.config.c_multiplier = spec.c_multiplier;
      req.config.input_length = reca::kInputSignals;
      req.config.transition = spec.transition;
      req.config.seed = reca::run_seed(spec.master_seed, 0, 0);
      req.distractor = distractor;
      req.sequence_index = diagram_sequence;
      req.separators = !no_separators;
      const auto bmp = reca::emit_diagram(req, diagram_path);
      if (!quiet) std::cout << "wrote " << bmp.width << "x" << bmp.height << " diagram to " << diagram_path << '\n';
      return 0;
    }

    const auto rows = reca::run_experiment(spec);
    if (!quiet) print_rows(rows);
    if (!out_path.empty()) reca::emit_results(rows, spec, reca::parse_format(format), out_path);
    for (const auto& r : rows) {
      if (!r.error.empty()) return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
