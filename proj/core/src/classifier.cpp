#include "qarp/classifier.hpp"

#include <numbers>
#include <stdexcept>

#include "qarp/rng.hpp"

namespace qarp {

void Hyperparams::validate() const {
  if (margin <= 0.0 || margin >= 1.0) throw std::invalid_argument("margin must be in (0, 1)");
  if (batch_size < 1 || learning_rate <= 0.0 || max_epochs < 1 || repetitions < 1)
    throw std::invalid_argument("hyperparameters must be positive");
  if (split_ratio <= 0.0 || split_ratio >= 1.0)
    throw std::invalid_argument("split_ratio must be in (0, 1)");
}

QuantumClassifier QuantumClassifier::random_init(const CircuitSpec& spec, int n_classes,
                                                 uint64_t seed) {
  spec.validate();
  if (n_classes < 2) throw std::invalid_argument("classifier needs at least 2 classes");
  QuantumClassifier model;
  model.spec = spec;
  model.n_classes = n_classes;
  model.theta.resize(n_classes, spec.total_params());
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (Eigen::Index c = 0; c < model.theta.rows(); ++c)
    for (Eigen::Index p = 0; p < model.theta.cols(); ++p) model.theta(c, p) = angle(rng);
  return model;
}

std::vector<double> QuantumClassifier::scores(std::span<const double> x) const {
  std::vector<double> s(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    const StateVector sv = run_circuit(
        spec, std::span<const double>(theta.row(c).data(), theta.cols()), x);
    s[c] = sv.expectation_z(0);
  }
  return s;
}

int QuantumClassifier::predict(std::span<const double> x) const {
  const auto s = scores(x);
  int best = 0;
  for (int c = 1; c < n_classes; ++c)
    if (s[c] > s[best]) best = c;
  return best;
}

double QuantumClassifier::accuracy(const Eigen::MatrixXd& features,
                                   const std::vector<int>& labels) const {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("accuracy: rows vs labels mismatch");
  if (labels.empty()) return 0.0;
  int hits = 0;
  std::vector<double> x(features.cols());
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    Eigen::Map<Eigen::VectorXd>(x.data(), features.cols()) = features.row(i);
    if (predict(x) == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double margin_loss(std::span<const double> scores, int y, double margin) {
  if (y < 0 || y >= static_cast<int>(scores.size()))
    throw std::invalid_argument("margin_loss: label out of range");
  double loss = 0.0;
  for (size_t j = 0; j < scores.size(); ++j) {
    if (static_cast<int>(j) == y) continue;
    const double z = margin - scores[y] + scores[j];
    if (z > 0.0) loss += z;
  }
  return loss;
}

}  // namespace qarp
