#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace qarp {

/// A labeled dataset: one sample per row, integer class labels in
/// [0, n_classes). `raw_feature_count` remembers the width before any
/// constant-column padding (the layer-skip rule keys off it).
struct Dataset {
  std::string name;
  Eigen::MatrixXd features;  // n_samples x n_features
  std::vector<int> labels;
  int n_classes = 0;
  int raw_feature_count = 0;

  int n_samples() const { return static_cast<int>(features.rows()); }
  int n_features() const { return static_cast<int>(features.cols()); }

  std::vector<int> class_counts() const;

  /// Throws if shapes disagree, labels fall outside [0, n_classes), some
  /// class is empty, or a feature value is non-finite.
  void validate() const;
};

struct SplitPair {
  Dataset train;
  Dataset test;
  uint64_t seed = 0;
};

/// Scales every row to unit L2 norm; labels untouched. A row of zeros is an
/// error naming the row.
Dataset normalize_samples(const Dataset& ds);

/// Appends constant columns of `value` until the matrix is `target_width`
/// wide. No-op if already that wide; narrower targets are an error.
Dataset pad_features(const Dataset& ds, int target_width, double value = 0.1);

/// Keeps only samples of the given classes, relabeled densely in order.
Dataset filter_classes(const Dataset& ds, const std::vector<int>& keep);

/// Random permutation split. Train gets n - ceil((1-ratio)*n) samples.
/// Requires at least 2 samples of every class in the source.
SplitPair split(const Dataset& ds, double ratio, uint64_t seed);

/// Subsamples without replacement, preserving at least one per class when
/// possible (used to cap oracle-sized computations).
Dataset subsample(const Dataset& ds, int max_samples, uint64_t seed);

}  // namespace qarp
