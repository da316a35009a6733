#include "qarp/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qarp/rng.hpp"

namespace qarp {

AdamState AdamState::like(const ThetaMatrix& theta) {
  AdamState s;
  s.m = ThetaMatrix::Zero(theta.rows(), theta.cols());
  s.v = ThetaMatrix::Zero(theta.rows(), theta.cols());
  return s;
}

void adam_step(ThetaMatrix& theta, const ThetaMatrix& grad, AdamState& state, double lr) {
  if (theta.rows() != grad.rows() || theta.cols() != grad.cols())
    throw std::invalid_argument("adam_step: shape mismatch");
  ++state.t;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
  state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad.cwiseProduct(grad);
  const double mc = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double vc = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  theta.array() -=
      lr * (state.m.array() / mc) / ((state.v.array() / vc).sqrt() + state.eps);
}

TrainTrace train(const Dataset& ds, const CircuitSpec& spec, const Hyperparams& hyper,
                 uint64_t seed) {
  hyper.validate();
  spec.validate();
  ds.validate();
  if ((1 << spec.n_qubits) < ds.n_features())
    throw std::invalid_argument("train: dataset wider than the circuit register");

  const SplitPair sp = split(ds, hyper.split_ratio, mix_seed(seed, {0x5311a}));
  QuantumClassifier model =
      QuantumClassifier::random_init(spec, ds.n_classes, mix_seed(seed, {0x1417}));
  AdamState opt = AdamState::like(model.theta);
  auto batch_rng = make_rng(mix_seed(seed, {0xba7c4}));

  const int n_train = sp.train.n_samples();
  std::vector<int> order(n_train);
  std::iota(order.begin(), order.end(), 0);

  TrainTrace trace;
  trace.test_accuracy.reserve(hyper.max_epochs);

  Eigen::MatrixXd batch;
  std::vector<int> batch_labels;
  for (int epoch = 0; epoch < hyper.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), batch_rng);
    for (int start = 0; start < n_train; start += hyper.batch_size) {
      const int count = std::min(hyper.batch_size, n_train - start);
      batch.resize(count, sp.train.n_features());
      batch_labels.resize(count);
      for (int i = 0; i < count; ++i) {
        batch.row(i) = sp.train.features.row(order[start + i]);
        batch_labels[i] = sp.train.labels[order[start + i]];
      }
      const ThetaMatrix grad =
          margin_loss_gradient(model, batch, batch_labels, hyper.margin);
      adam_step(model.theta, grad, opt, hyper.learning_rate);
      if (!model.theta.allFinite())
        throw std::runtime_error("train: non-finite parameters at epoch " +
                                 std::to_string(epoch));
    }
    trace.test_accuracy.push_back(model.accuracy(sp.test.features, sp.test.labels));
  }
  trace.max_accuracy =
      *std::max_element(trace.test_accuracy.begin(), trace.test_accuracy.end());
  trace.model = std::move(model);
  return trace;
}

TrainResult evaluate(const Dataset& ds, const CircuitSpec& spec, const Hyperparams& hyper,
                     uint64_t seed) {
  TrainResult result;
  result.dataset = ds.name;
  result.layer_kind = spec.layer_kind;
  result.n_layers = spec.n_layers;
  result.rep_max_accuracy.reserve(hyper.repetitions);
  for (int rep = 0; rep < hyper.repetitions; ++rep) {
    const TrainTrace t = train(ds, spec, hyper, mix_seed(seed, {0x4e9, (uint64_t)rep}));
    result.rep_max_accuracy.push_back(t.max_accuracy);
  }
  result.mean = mean_of(result.rep_max_accuracy);
  result.stddev = stddev_of(result.rep_max_accuracy);
  return result;
}

Dataset prepare_for_circuit(const Dataset& ds) {
  const int width = 1 << qubit_count(ds.n_features());
  return normalize_samples(pad_features(ds, width));
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace qarp
