#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "json.hpp"

#include "reca/cell_vector.hpp"

namespace reca {

// Binary feature rows stored as ascending lists of active (1) indices.
class TrainingSet {
 public:
  TrainingSet(std::size_t feature_width, int num_classes);

  void add(const CellVector& feature, int label);
  void add(std::vector<std::uint32_t> active, int label);

  std::size_t feature_width() const { return feature_width_; }
  int num_classes() const { return num_classes_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::uint32_t>& row(std::size_t i) const { return rows_[i]; }
  int label(std::size_t i) const { return labels_[i]; }

 private:
  std::size_t feature_width_;
  int num_classes_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<int> labels_;
};

struct TrainOptions {
  double regularization = 1.0;  // hinge-loss weight C
  double tolerance = 0.01;      // projected-gradient stopping threshold
  int max_epochs = 1000;
};

// Linear one-vs-rest readout. weights holds num_outputs rows of
// feature_width + 1 entries; the last entry of each row is the bias.
struct ReadoutModel {
  int num_outputs = 0;
  std::size_t feature_width = 0;
  double regularization = 1.0;
  std::vector<double> weights;

  std::span<const double> row(int k) const {
    return {weights.data() + static_cast<std::size_t>(k) * (feature_width + 1), feature_width + 1};
  }
  double score(int k, std::span<const std::uint32_t> active) const;
};

// L2-regularized hinge-loss SVM per class (class k vs. the rest), solved in
// the dual by coordinate descent with shrinking. The visiting order is
// shuffled by a fixed-seed generator, so results are reproducible.
ReadoutModel train(const TrainingSet& data, const TrainOptions& options = {});

// Argmax over class scores; ties go to the lowest class index.
int predict(const ReadoutModel& model, const CellVector& feature);
int predict(const ReadoutModel& model, std::span<const std::uint32_t> active);

void to_json(nlohmann::json& j, const ReadoutModel& m);
ReadoutModel readout_from_json(const nlohmann::json& j);
void save_model(const ReadoutModel& m, const std::filesystem::path& path);
ReadoutModel load_model(const std::filesystem::path& path);

}  // namespace reca
