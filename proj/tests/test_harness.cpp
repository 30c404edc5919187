#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <stdexcept>

#include "doctest.h"
#include "reca/harness.hpp"

namespace fs = std::filesystem;

namespace {

reca::ExperimentSpec small_spec() {
  reca::ExperimentSpec spec;
  spec.rule_sets = reca::parse_rule_list("90,60+102");
  spec.iterations = {2};
  spec.mappings = {2};
  spec.c_multiplier = 4;
  spec.distractor = 10;
  spec.runs = 3;
  spec.master_seed = 7;
  spec.threads = 2;
  return spec;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the trailing wall_time_s column from every line.
std::string without_timing(const std::string& csv) {
  std::stringstream in(csv), out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("rule lists") {
  const auto sets = reca::parse_rule_list("90, 60+102");
  REQUIRE(sets.size() == 2);
  CHECK(reca::rule_set_label(sets[0]) == "90");
  CHECK(reca::rule_set_label(sets[1]) == "60+102");
  CHECK(reca::parse_rule_list("singles").size() == 9);
  const auto pairs = reca::parse_rule_list("pairs");
  CHECK(pairs.size() == 36);
  CHECK(reca::rule_set_label(pairs.front()) == "60+90");
  CHECK(reca::rule_set_label(pairs.back()) == "180+195");
  CHECK_THROWS_AS(reca::parse_rule_list("90,,60"), std::invalid_argument);
  CHECK_THROWS_AS(reca::parse_rule_list("300"), std::invalid_argument);
  CHECK_THROWS_AS(reca::parse_rule_list("9x"), std::invalid_argument);
}

TEST_CASE("experiment spec validation") {
  auto spec = small_spec();
  spec.runs = 0;
  CHECK_THROWS_AS(reca::run_experiment(spec), std::invalid_argument);
  spec = small_spec();
  spec.rule_sets.clear();
  CHECK_THROWS_AS(reca::run_experiment(spec), std::invalid_argument);
}

TEST_CASE("configuration errors are reported per row") {
  auto spec = small_spec();
  spec.rule_sets.push_back({reca::Rule(1), reca::Rule(2), reca::Rule(3)});
  spec.runs = 1;
  const auto rows = reca::run_experiment(spec);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[2].error.empty());
}

TEST_CASE("rows are reproducible and ordered rule set -> I -> R") {
  auto spec = small_spec();
  spec.iterations = {1, 2};
  spec.mappings = {1, 2};
  const auto a = reca::run_experiment(spec);
  spec.threads = 1;
  const auto b = reca::run_experiment(spec);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto x = a[i], y = b[i];
    x.wall_time_s = y.wall_time_s = 0.0;
    CHECK(x == y);
    CHECK(x.success_rate == doctest::Approx(static_cast<double>(x.successes) / x.runs));
  }
  CHECK(a[1].iterations == 1);
  CHECK(a[1].r_count == 2);
  CHECK(a[2].iterations == 2);
  CHECK(a[2].r_count == 1);
  CHECK(a[4].rules == "60+102");
}

TEST_CASE("run outcomes depend only on their own indices") {
  const auto spec = small_spec();
  const auto dataset = reca::generate_5bit(spec.distractor);
  reca::ReservoirConfig cfg;
  cfg.rules = spec.rule_sets[0];
  cfg.iterations = 2;
  cfg.r_count = 2;
  cfg.c_multiplier = 4;
  std::vector<reca::RunOutcome> forward, backward(5);
  for (std::size_t k = 0; k < 5; ++k) {
    cfg.seed = reca::run_seed(spec.master_seed, 0, k);
    forward.push_back(reca::run_single(cfg, dataset, {}));
  }
  for (std::size_t k = 5; k-- > 0;) {
    cfg.seed = reca::run_seed(spec.master_seed, 0, k);
    backward[k] = reca::run_single(cfg, dataset, {});
  }
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(forward[k].success == backward[k].success);
    CHECK(forward[k].accuracy == backward[k].accuracy);
  }
  CHECK(reca::run_seed(1, 0, 1) != reca::run_seed(1, 1, 0));
}

TEST_CASE("size metric is the same for one and two rules") {
  auto spec = small_spec();
  spec.runs = 1;
  const auto rows = reca::run_experiment(spec);
  CHECK(rows[0].size_metric == 2 * 2 * 4);
  CHECK(rows[0].size_metric == rows[1].size_metric);
}

TEST_CASE("result files") {
  auto spec = small_spec();
  spec.rule_sets.resize(1);
  const auto rows = reca::run_experiment(spec);
  REQUIRE(rows.size() == 1);
  const fs::path dir = fs::temp_directory_path() / "reca_harness_test";
  fs::create_directories(dir);

  reca::emit_results(rows, spec, reca::ResultFormat::csv, dir / "a.csv");
  const auto csv = read_file(dir / "a.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.rfind("rules,I,R,C,size,runs,successes,success_rate,mean_accuracy,", 0) == 0);
  CHECK(csv.find("mt19937_64") != std::string::npos);

  reca::emit_results(rows, spec, reca::ResultFormat::json, dir / "a.json");
  const auto doc = nlohmann::json::parse(read_file(dir / "a.json"));
  CHECK(reca::rows_from_json(doc) == rows);
  CHECK(doc.at("metadata").at("master_seed") == 7);
  CHECK(doc.at("metadata").at("rng") == "mt19937_64");

  const auto again = reca::run_experiment(spec);
  reca::emit_results(again, spec, reca::ResultFormat::csv, dir / "b.csv");
  CHECK(without_timing(read_file(dir / "b.csv")) == without_timing(csv));

  CHECK_THROWS_AS(reca::emit_results(rows, spec, reca::ResultFormat::csv, dir / "missing" / "x.csv"),
                  std::runtime_error);
  CHECK_THROWS_AS(reca::parse_format("xml"), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("space-time diagrams") {
  const fs::path path = fs::temp_directory_path() / "reca_diagram_test.pbm";
  reca::DiagramRequest req;
  req.config.rules = {reca::Rule(90)};
  req.config.iterations = 4;
  req.config.r_count = 8;
  req.config.c_multiplier = 5;
  req.config.seed = 3;
  req.distractor = 20;
  req.sequence_index = 5;
  const auto bmp = reca::emit_diagram(req, path);
  const std::size_t steps = 30;
  CHECK(bmp.width == 160);
  CHECK(bmp.height == steps * 4 + steps - 1);
  CHECK(reca::read_pbm(path).pixels == bmp.pixels);

  // a dotted separator every I + 1 rows; inside a block each row is one
  // rule-90 step of the row above
  const auto assignment = reca::RuleAssignment::uniform(reca::Rule(90), 160);
  auto row_vector = [&](std::size_t r) {
    reca::CellVector v(160);
    for (std::size_t c = 0; c < 160; ++c) v.set(c, bmp.at(r, c));
    return v;
  };
  for (std::size_t t = 0; t < steps; ++t) {
    const std::size_t top = t * 5;
    if (t > 0) {
      for (std::size_t c = 0; c < 160; ++c) CHECK(bmp.at(top - 1, c) == (c % 2 == 0));
    }
    for (std::size_t k = 1; k < 4; ++k) CHECK(row_vector(top + k) == reca::step(row_vector(top + k - 1), assignment));
  }

  req.config.rules = {reca::Rule(0)};
  req.separators = false;
  const auto blank = reca::emit_diagram(req, path);
  CHECK(blank.height == steps * 4);
  CHECK(std::count(blank.pixels.begin(), blank.pixels.end(), 1) == 0);

  req.sequence_index = 32;
  CHECK_THROWS_AS(reca::emit_diagram(req, path), std::invalid_argument);
  fs::remove(path);
}

TEST_CASE("PBM reader rejects malformed files") {
  const fs::path path = fs::temp_directory_path() / "reca_bad.pbm";
  {
    std::ofstream out(path);
    out << "P1\n# comment\n3 2\n101\n01";
  }
  CHECK_THROWS_AS(reca::read_pbm(path), std::runtime_error);
  {
    std::ofstream out(path);
    out << "P1\n# comment\n3 2\n1 0 1\n0 1 1\n";
  }
  const auto bmp = reca::read_pbm(path);
  CHECK(bmp.width == 3);
  CHECK(bmp.at(1, 2));
  CHECK_FALSE(bmp.at(0, 1));
  fs::remove(path);
}
