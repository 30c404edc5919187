#include "reca/readout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "reca/rng.hpp"

namespace reca {

TrainingSet::TrainingSet(std::size_t feature_width, int num_classes)
    : feature_width_(feature_width), num_classes_(num_classes) {
  if (num_classes < 2) throw std::invalid_argument("a classifier needs at least two classes");
}

void TrainingSet::add(const CellVector& feature, int label) {
  if (feature.width() != feature_width_) {
    throw std::invalid_argument("feature width " + std::to_string(feature.width()) +
                                " does not match training set width " +
                                std::to_string(feature_width_));
  }
  add(feature.active_indices(), label);
}

void TrainingSet::add(std::vector<std::uint32_t> active, int label) {
  if (label < 0 || label >= num_classes_) throw std::invalid_argument("label out of range");
  for (auto idx : active) {
    if (idx >= feature_width_) throw std::invalid_argument("feature index out of range");
  }
  rows_.push_back(std::move(active));
  labels_.push_back(label);
}

double ReadoutModel::score(int k, std::span<const std::uint32_t> active) const {
  const auto w = row(k);
  double s = w[feature_width];
  for (auto idx : active) s += w[idx];
  return s;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kShuffleSeed = 0x5eed5eedULL;

// Identical (feature, label) rows merged into one row of weight count; the
// hinge-loss objective is unchanged when that row's loss is scaled by count.
struct UniqueRows {
  std::vector<const std::vector<std::uint32_t>*> rows;
  std::vector<int> labels;
  std::vector<double> counts;
};

UniqueRows merge_duplicates(const TrainingSet& data) {
  std::map<std::pair<std::vector<std::uint32_t>, int>, std::size_t> first_seen;
  UniqueRows u;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto [it, inserted] = first_seen.try_emplace({data.row(i), data.label(i)}, u.rows.size());
    if (inserted) {
      u.rows.push_back(&data.row(i));
      u.labels.push_back(data.label(i));
      u.counts.push_back(1.0);
    } else {
      u.counts[it->second] += 1.0;
    }
  }
  return u;
}

// Binary hinge-loss dual coordinate descent; y[i] in {-1, +1}. Every row has
// an implicit trailing 1 for the bias, stored at w[width].
void solve_binary(const UniqueRows& data, std::size_t width, const std::vector<signed char>& y,
                  const TrainOptions& opt, std::span<double> w) {
  const std::size_t n = data.rows.size();

  std::vector<double> alpha(n, 0.0);
  std::vector<double> qd(n);
  std::vector<double> upper(n);
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i) {
    qd[i] = static_cast<double>(data.rows[i]->size()) + 1.0;
    upper[i] = opt.regularization * data.counts[i];
    index[i] = i;
  }
  std::fill(w.begin(), w.end(), 0.0);

  Rng rng(kShuffleSeed);
  std::size_t active = n;
  double pg_max_old = kInf;
  double pg_min_old = -kInf;

  for (int epoch = 0; epoch < opt.max_epochs; ++epoch) {
    double pg_max_new = -kInf;
    double pg_min_new = kInf;
    for (std::size_t s = 0; s < active; ++s) {
      std::swap(index[s], index[s + uniform_below(rng, active - s)]);
    }

    for (std::size_t s = 0; s < active; ++s) {
      const std::size_t i = index[s];
      const auto& xi = *data.rows[i];
      double dot = w[width];
      for (auto idx : xi) dot += w[idx];
      const double g = y[i] * dot - 1.0;

      double pg = 0.0;
      if (alpha[i] == 0.0) {
        if (g > pg_max_old) {
          std::swap(index[s], index[--active]);
          --s;
          continue;
        }
        if (g < 0.0) pg = g;
      } else if (alpha[i] == upper[i]) {
        if (g < pg_min_old) {
          std::swap(index[s], index[--active]);
          --s;
          continue;
        }
        if (g > 0.0) pg = g;
      } else {
        pg = g;
      }
      pg_max_new = std::max(pg_max_new, pg);
      pg_min_new = std::min(pg_min_new, pg);

      if (std::fabs(pg) > 1e-12) {
        const double old = alpha[i];
        alpha[i] = std::clamp(alpha[i] - g / qd[i], 0.0, upper[i]);
        const double d = (alpha[i] - old) * y[i];
        for (auto idx : xi) w[idx] += d;
        w[width] += d;
      }
    }

    if (pg_max_new - pg_min_new <= opt.tolerance) {
      if (active == n) break;
      active = n;
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max_new <= 0.0 ? kInf : pg_max_new;
    pg_min_old = pg_min_new >= 0.0 ? -kInf : pg_min_new;
  }
}

}  // namespace

ReadoutModel train(const TrainingSet& data, const TrainOptions& options) {
  if (data.size() == 0) throw std::invalid_argument("cannot train on an empty training set");
  if (!(options.regularization > 0.0)) throw std::invalid_argument("regularization must be > 0");
  std::vector<bool> seen(static_cast<std::size_t>(data.num_classes()), false);
  for (std::size_t i = 0; i < data.size(); ++i) seen[static_cast<std::size_t>(data.label(i))] = true;
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw std::invalid_argument("training data must contain at least two distinct labels");
  }

  ReadoutModel model;
  model.num_outputs = data.num_classes();
  model.feature_width = data.feature_width();
  model.regularization = options.regularization;
  const std::size_t stride = model.feature_width + 1;
  model.weights.assign(static_cast<std::size_t>(model.num_outputs) * stride, 0.0);

  const UniqueRows rows = merge_duplicates(data);
  std::vector<signed char> y(rows.rows.size());
  for (int k = 0; k < model.num_outputs; ++k) {
    // A class absent from the data keeps all-zero weights.
    if (!seen[static_cast<std::size_t>(k)]) continue;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = rows.labels[i] == k ? 1 : -1;
    solve_binary(rows, data.feature_width(), y, options,
                 std::span<double>(model.weights.data() + static_cast<std::size_t>(k) * stride, stride));
  }
  return model;
}

int predict(const ReadoutModel& model, std::span<const std::uint32_t> active) {
  int best = 0;
  double best_score = model.score(0, active);
  for (int k = 1; k < model.num_outputs; ++k) {
    const double s = model.score(k, active);
    if (s > best_score) {
      best = k;
      best_score = s;
    }
  }
  return best;
}

int predict(const ReadoutModel& model, const CellVector& feature) {
  if (feature.width() != model.feature_width) {
    throw std::invalid_argument("feature width " + std::to_string(feature.width()) +
                                " does not match model width " +
                                std::to_string(model.feature_width));
  }
  const auto active = feature.active_indices();
  return predict(model, active);
}

void to_json(nlohmann::json& j, const ReadoutModel& m) {
  j = nlohmann::json{{"num_outputs", m.num_outputs},
                     {"feature_width", m.feature_width},
                     {"regularization", m.regularization},
                     {"weights", m.weights}};
}

ReadoutModel readout_from_json(const nlohmann::json& j) {
  ReadoutModel m;
  m.num_outputs = j.at("num_outputs").get<int>();
  m.feature_width = j.at("feature_width").get<std::size_t>();
  m.regularization = j.at("regularization").get<double>();
  m.weights = j.at("weights").get<std::vector<double>>();
  if (m.num_outputs < 1 ||
      m.weights.size() != static_cast<std::size_t>(m.num_outputs) * (m.feature_width + 1)) {
    throw std::invalid_argument("readout model weight matrix has the wrong shape");
  }
  return m;
}

void save_model(const ReadoutModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << nlohmann::json(m).dump(1) << '\n';
}

ReadoutModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return readout_from_json(nlohmann::json::parse(in));
}

}  // namespace reca
