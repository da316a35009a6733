#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "qarp/circuit.hpp"

namespace qarp {

/// Training protocol constants. Defaults follow the experimental setup:
/// margin 0.15, batches of 10, Adam at 0.01, up to 100 epochs, 10
/// repetitions on fresh 70/30 splits.
struct Hyperparams {
  double margin = 0.15;
  int batch_size = 10;
  double learning_rate = 0.01;
  int max_epochs = 100;
  int repetitions = 10;
  double split_ratio = 0.7;

  void validate() const;
};

/// Row-major so a class's parameter row can be viewed as a contiguous span.
using ThetaMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One-vs-all quantum classifier: one parameter row per class, every class
/// scored by <Z> on wire 0 of its own circuit.
struct QuantumClassifier {
  CircuitSpec spec;
  ThetaMatrix theta;  // n_classes x total_params
  int n_classes = 0;

  static QuantumClassifier random_init(const CircuitSpec& spec, int n_classes, uint64_t seed);

  std::vector<double> scores(std::span<const double> x) const;
  /// argmax of scores; ties go to the lowest class index.
  int predict(std::span<const double> x) const;

  double accuracy(const Eigen::MatrixXd& features, const std::vector<int>& labels) const;
};

/// Multiclass SVM loss for one sample: sum over j != y of
/// max(0, margin - scores[y] + scores[j]).
double margin_loss(std::span<const double> scores, int y, double margin);

}  // namespace qarp
