#include "reca/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "reca/rng.hpp"

namespace reca {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

Rule parse_rule(const std::string& token) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rule number: '" + token + "'");
  }
  if (used != token.size()) throw std::invalid_argument("not a rule number: '" + token + "'");
  return Rule(n);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<RuleSet> parse_rule_list(const std::string& text) {
  std::vector<RuleSet> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty entry in rule list");
    if (item == "singles") {
      for (int r : kSweepRules) out.push_back({Rule(r)});
    } else if (item == "pairs") {
      for (std::size_t a = 0; a < kSweepRules.size(); ++a) {
        for (std::size_t b = a + 1; b < kSweepRules.size(); ++b) {
          out.push_back({Rule(kSweepRules[a]), Rule(kSweepRules[b])});
        }
      }
    } else if (const auto plus = item.find('+'); plus != std::string::npos) {
      out.push_back({parse_rule(trim(item.substr(0, plus))), parse_rule(trim(item.substr(plus + 1)))});
    } else {
      out.push_back({parse_rule(item)});
    }
  }
  if (out.empty()) throw std::invalid_argument("rule list is empty");
  return out;
}

std::string rule_set_label(const RuleSet& rules) {
  std::string label;
  for (const auto& r : rules) {
    if (!label.empty()) label += '+';
    label += std::to_string(r.number());
  }
  return label;
}

void ExperimentSpec::validate() const {
  if (rule_sets.empty()) throw std::invalid_argument("no rules given");
  if (iterations.empty() || mappings.empty()) throw std::invalid_argument("I and R lists must be non-empty");
  if (runs < 1) throw std::invalid_argument("runs per configuration must be >= 1");
  if (distractor < 1) throw std::invalid_argument("distractor period must be >= 1");
  if (c_multiplier < 1) throw std::invalid_argument("C must be >= 1");
  if (!(regularization > 0.0)) throw std::invalid_argument("regularization must be > 0");
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t config_index, std::size_t run_index) {
  return derive_seed(master_seed, config_index, run_index);
}

RunOutcome run_single(const ReservoirConfig& config, const Dataset& dataset,
                      const TrainOptions& options) {
  ReservoirState state = init_run(config);

  TrainingSet training(config.feature_width(), kNumOutputs);
  for (const auto& seq : dataset.train) {
    const auto traces = state.process_sequence(seq.inputs);
    for (std::size_t t = 0; t < traces.size(); ++t) training.add(traces[t].feature, seq.targets[t]);
  }
  const ReadoutModel model = train(training, options);

  std::vector<std::vector<int>> predictions;
  predictions.reserve(dataset.test.size());
  for (const auto& seq : dataset.test) {
    const auto traces = state.process_sequence(seq.inputs);
    std::vector<int> p;
    p.reserve(traces.size());
    for (const auto& tr : traces) p.push_back(predict(model, tr.feature));
    predictions.push_back(std::move(p));
  }
  const RunScore score = score_run(predictions, dataset);
  return {score.success, score.accuracy};
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Dataset dataset = generate_5bit(spec.distractor);
  TrainOptions options;
  options.regularization = spec.regularization;
  const unsigned threads =
      spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());

  std::vector<ResultRow> rows;
  std::size_t config_index = 0;
  for (const auto& rules : spec.rule_sets) {
    for (int iterations : spec.iterations) {
      for (std::size_t r : spec.mappings) {
        ResultRow row;
        row.rules = rule_set_label(rules);
        row.iterations = iterations;
        row.r_count = r;
        row.c_multiplier = spec.c_multiplier;
        row.size_metric = r * static_cast<std::size_t>(std::max(iterations, 0)) * spec.c_multiplier;
        row.runs = spec.runs;

        ReservoirConfig config;
        config.rules = rules;
        config.iterations = iterations;
        config.r_count = r;
        config.c_multiplier = spec.c_multiplier;
        config.input_length = kInputSignals;
        config.transition = spec.transition;

        const auto started = std::chrono::steady_clock::now();
        try {
          config.validate();
          std::vector<RunOutcome> outcomes(static_cast<std::size_t>(spec.runs));
          std::atomic<std::size_t> next{0};
          std::exception_ptr failure;
          std::atomic<bool> failed{false};
          auto worker = [&] {
            for (std::size_t k = next++; k < outcomes.size() && !failed; k = next++) {
              try {
                ReservoirConfig run_config = config;
                run_config.seed = run_seed(spec.master_seed, config_index, k);
                outcomes[k] = run_single(run_config, dataset, options);
              } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
              }
            }
          };
          const unsigned n_workers = std::min<unsigned>(threads, static_cast<unsigned>(spec.runs));
          if (n_workers <= 1) {
            worker();
          } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
          }
          if (failure) std::rethrow_exception(failure);

          double accuracy_sum = 0.0;
          for (const auto& o : outcomes) {
            row.successes += o.success ? 1 : 0;
            accuracy_sum += o.accuracy;
          }
          row.success_rate = static_cast<double>(row.successes) / row.runs;
          row.mean_accuracy = accuracy_sum / row.runs;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        rows.push_back(std::move(row));
        ++config_index;
      }
    }
  }
  return rows;
}

ResultFormat parse_format(const std::string& name) {
  if (name == "csv") return ResultFormat::csv;
  if (name == "json") return ResultFormat::json;
  throw std::invalid_argument("unknown result format '" + name + "'");
}

std::string results_csv(const std::vector<ResultRow>& rows, const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "rules,I,R,C,size,runs,successes,success_rate,mean_accuracy,distractor,transition,"
         "regularization,master_seed,rng,version,error,wall_time_s\n";
  for (const auto& r : rows) {
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << r.rules << ',' << r.iterations << ',' << r.r_count << ',' << r.c_multiplier << ','
        << r.size_metric << ',' << r.runs << ',' << r.successes << ',' << fixed(r.success_rate, 6)
        << ',' << fixed(r.mean_accuracy, 6) << ',' << spec.distractor << ','
        << to_string(spec.transition) << ',' << fixed(spec.regularization, 6) << ','
        << spec.master_seed << ',' << kRngAlgorithm << ',' << kVersion << ',' << error << ','
        << fixed(r.wall_time_s, 3) << '\n';
  }
  return out.str();
}

nlohmann::json results_json(const std::vector<ResultRow>& rows, const ExperimentSpec& spec) {
  nlohmann::json doc;
  doc["metadata"] = {{"master_seed", spec.master_seed},
                     {"rng", kRngAlgorithm},
                     {"version", kVersion},
                     {"distractor", spec.distractor},
                     {"transition", to_string(spec.transition)},
                     {"regularization", spec.regularization},
                     {"success_criterion", kSuccessCriterion},
                     {"run_variation", kRunVariation},
                     {"readout_training_steps", "all"}};
  auto& arr = doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"rules", r.rules},
                   {"I", r.iterations},
                   {"R", r.r_count},
                   {"C", r.c_multiplier},
                   {"size", r.size_metric},
                   {"runs", r.runs},
                   {"successes", r.successes},
                   {"success_rate", r.success_rate},
                   {"mean_accuracy", r.mean_accuracy},
                   {"wall_time_s", r.wall_time_s},
                   {"error", r.error}});
  }
  return doc;
}

std::vector<ResultRow> rows_from_json(const nlohmann::json& doc) {
  std::vector<ResultRow> rows;
  for (const auto& j : doc.at("rows")) {
    ResultRow r;
    r.rules = j.at("rules").get<std::string>();
    r.iterations = j.at("I").get<int>();
    r.r_count = j.at("R").get<std::size_t>();
    r.c_multiplier = j.at("C").get<std::size_t>();
    r.size_metric = j.at("size").get<std::size_t>();
    r.runs = j.at("runs").get<int>();
    r.successes = j.at("successes").get<int>();
    r.success_rate = j.at("success_rate").get<double>();
    r.mean_accuracy = j.at("mean_accuracy").get<double>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.error = j.at("error").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_results(const std::vector<ResultRow>& rows, const ExperimentSpec& spec,
                  ResultFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (format == ResultFormat::csv) {
    out << results_csv(rows, spec);
  } else {
    out << results_json(rows, spec).dump(2) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Bitmap render_diagram(const std::vector<StepTrace>& traces, bool separators) {
  Bitmap bmp;
  if (traces.empty()) return bmp;
  bmp.width = traces.front().a0.width();
  std::size_t rows = 0;
  for (const auto& tr : traces) rows += tr.iterations.size();
  if (separators) rows += traces.size() - 1;
  bmp.height = rows;
  bmp.pixels.assign(bmp.width * bmp.height, 0);

  std::size_t row = 0;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    if (separators && t > 0) {
      for (std::size_t c = 0; c < bmp.width; c += 2) bmp.pixels[row * bmp.width + c] = 1;
      ++row;
    }
    for (const auto& state : traces[t].iterations) {
      for (auto c : state.active_indices()) bmp.pixels[row * bmp.width + c] = 1;
      ++row;
    }
  }
  return bmp;
}

void write_pbm(const Bitmap& bitmap, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "P1\n" << bitmap.width << ' ' << bitmap.height << '\n';
  std::string line;
  for (std::size_t r = 0; r < bitmap.height; ++r) {
    line.clear();
    for (std::size_t c = 0; c < bitmap.width; ++c) {
      line.push_back(bitmap.at(r, c) ? '1' : '0');
      if (line.size() == 70) {
        out << line << '\n';
        line.clear();
      }
    }
    if (!line.empty()) out << line << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Bitmap read_pbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  auto skip = [&] {
    for (;;) {
      const int ch = in.peek();
      if (ch == '#') {
        std::string ignored;
        std::getline(in, ignored);
      } else if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
        in.get();
      } else {
        return;
      }
    }
  };
  std::string magic;
  in >> magic;
  if (magic != "P1") throw std::runtime_error(path.string() + " is not a plain PBM file");
  Bitmap bmp;
  skip();
  in >> bmp.width;
  skip();
  in >> bmp.height;
  if (!in) throw std::runtime_error("malformed PBM header in " + path.string());
  bmp.pixels.reserve(bmp.width * bmp.height);
  while (bmp.pixels.size() < bmp.width * bmp.height) {
    skip();
    const int ch = in.get();
    if (ch == '0' || ch == '1') {
      bmp.pixels.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else {
      throw std::runtime_error("truncated or malformed PBM data in " + path.string());
    }
  }
  return bmp;
}

Bitmap emit_diagram(const DiagramRequest& request, const std::filesystem::path& path) {
  const Dataset dataset = generate_5bit(request.distractor);
  if (request.sequence_index >= dataset.test.size()) {
    throw std::invalid_argument("sequence index " + std::to_string(request.sequence_index) +
                                " out of range (test set has " +
                                std::to_string(dataset.test.size()) + " sequences)");
  }
  ReservoirState state = init_run(request.config);
  const auto traces = state.process_sequence(dataset.test[request.sequence_index].inputs);
  Bitmap bmp = render_diagram(traces, request.separators);
  write_pbm(bmp, path);
  return bmp;
}

}  // namespace reca
