#include "qarp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qarp/rng.hpp"

namespace qarp {

std::vector<int> Dataset::class_counts() const {
  std::vector<int> counts(n_classes, 0);
  for (int y : labels) {
    if (y < 0 || y >= n_classes)
      throw std::runtime_error("dataset '" + name + "': label " + std::to_string(y) +
                               " outside [0, " + std::to_string(n_classes) + ")");
    ++counts[y];
  }
  return counts;
}

void Dataset::validate() const {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::runtime_error("dataset '" + name + "': " + std::to_string(features.rows()) +
                             " rows vs " + std::to_string(labels.size()) + " labels");
  if (n_classes < 1) throw std::runtime_error("dataset '" + name + "': n_classes < 1");
  const auto counts = class_counts();
  for (int c = 0; c < n_classes; ++c)
    if (counts[c] == 0)
      throw std::runtime_error("dataset '" + name + "': class " + std::to_string(c) + " is empty");
  if (!features.allFinite())
    throw std::runtime_error("dataset '" + name + "': non-finite feature value");
}

Dataset normalize_samples(const Dataset& ds) {
  Dataset out = ds;
  for (Eigen::Index i = 0; i < out.features.rows(); ++i) {
    const double n = out.features.row(i).norm();
    if (n <= 0.0)
      throw std::runtime_error("normalize_samples: row " + std::to_string(i) +
                               " of dataset '" + ds.name + "' is all zero");
    out.features.row(i) /= n;
  }
  return out;
}

Dataset pad_features(const Dataset& ds, int target_width, double value) {
  if (target_width < ds.n_features())
    throw std::invalid_argument("pad_features: target width " + std::to_string(target_width) +
                                " narrower than existing " + std::to_string(ds.n_features()));
  if (target_width == ds.n_features()) return ds;
  Dataset out = ds;
  Eigen::MatrixXd padded(ds.n_samples(), target_width);
  padded.leftCols(ds.n_features()) = ds.features;
  padded.rightCols(target_width - ds.n_features()).setConstant(value);
  out.features = std::move(padded);
  return out;
}

Dataset filter_classes(const Dataset& ds, const std::vector<int>& keep) {
  std::vector<int> relabel(ds.n_classes, -1);
  for (size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= ds.n_classes)
      throw std::invalid_argument("filter_classes: class " + std::to_string(keep[k]) +
                                  " out of range");
    relabel[keep[k]] = static_cast<int>(k);
  }
  std::vector<int> rows;
  for (int i = 0; i < ds.n_samples(); ++i)
    if (relabel[ds.labels[i]] >= 0) rows.push_back(i);
  Dataset out;
  out.name = ds.name;
  out.n_classes = static_cast<int>(keep.size());
  out.raw_feature_count = ds.raw_feature_count;
  out.features.resize(rows.size(), ds.n_features());
  out.labels.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.features.row(i) = ds.features.row(rows[i]);
    out.labels[i] = relabel[ds.labels[rows[i]]];
  }
  out.validate();
  return out;
}

SplitPair split(const Dataset& ds, double ratio, uint64_t seed) {
  if (ratio <= 0.0 || ratio >= 1.0)
    throw std::invalid_argument("split: ratio must be in (0, 1)");
  ds.validate();
  for (int c = 0; c < ds.n_classes; ++c)
    if (ds.class_counts()[c] < 2)
      throw std::runtime_error("split: class " + std::to_string(c) + " of dataset '" + ds.name +
                               "' has fewer than 2 samples");
  const int n = ds.n_samples();
  const int n_test = static_cast<int>(std::ceil((1.0 - ratio) * n));
  const int n_train = n - n_test;
  if (n_train < 1 || n_test < 1) throw std::runtime_error("split: degenerate split sizes");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto rng = make_rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  auto take = [&](int begin, int count) {
    Dataset part;
    part.name = ds.name;
    part.n_classes = ds.n_classes;
    part.raw_feature_count = ds.raw_feature_count;
    part.features.resize(count, ds.n_features());
    part.labels.resize(count);
    for (int i = 0; i < count; ++i) {
      part.features.row(i) = ds.features.row(perm[begin + i]);
      part.labels[i] = ds.labels[perm[begin + i]];
    }
    return part;
  };
  return SplitPair{take(0, n_train), take(n_train, n_test), seed};
}

Dataset subsample(const Dataset& ds, int max_samples, uint64_t seed) {
  if (ds.n_samples() <= max_samples) return ds;
  std::vector<int> perm(ds.n_samples());
  std::iota(perm.begin(), perm.end(), 0);
  auto rng = make_rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  // Make sure no class disappears.
  std::vector<char> seen(ds.n_classes, 0);
  std::vector<int> chosen(perm.begin(), perm.begin() + max_samples);
  for (int i : chosen) seen[ds.labels[i]] = 1;
  for (int c = 0; c < ds.n_classes; ++c) {
    if (seen[c]) continue;
    for (int i = max_samples; i < ds.n_samples(); ++i) {
      if (ds.labels[perm[i]] == c) {
        chosen.back() = perm[i];
        break;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());

  Dataset out;
  out.name = ds.name;
  out.n_classes = ds.n_classes;
  out.raw_feature_count = ds.raw_feature_count;
  out.features.resize(chosen.size(), ds.n_features());
  out.labels.resize(chosen.size());
  for (size_t i = 0; i < chosen.size(); ++i) {
    out.features.row(i) = ds.features.row(chosen[i]);
    out.labels[i] = ds.labels[chosen[i]];
  }
  return out;
}

}  // namespace qarp
