#pragma once

#include <cstdint>
#include <string>

#include "qarp/dataset.hpp"
#include "qarp/gradient.hpp"

namespace qarp {

/// Adam with bias-corrected moments; beta1 = 0.9, beta2 = 0.999, eps = 1e-8.
struct AdamState {
  ThetaMatrix m;
  ThetaMatrix v;
  long t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState like(const ThetaMatrix& theta);
};

void adam_step(ThetaMatrix& theta, const ThetaMatrix& grad, AdamState& state, double lr);

/// One training repetition: a fresh 70/30 split, mini-batch Adam on the
/// margin loss, test accuracy recorded after every epoch.
struct TrainTrace {
  std::vector<double> test_accuracy;  // one entry per epoch
  double max_accuracy = 0.0;
  QuantumClassifier model;
};

/// `ds` must already be sample-normalized and padded to the circuit width.
TrainTrace train(const Dataset& ds, const CircuitSpec& spec, const Hyperparams& hyper,
                 uint64_t seed);

/// Per-configuration result: max test accuracy of each repetition.
struct TrainResult {
  std::string dataset;
  LayerKind layer_kind = LayerKind::C1;
  int n_layers = 1;
  std::vector<double> rep_max_accuracy;
  double mean = 0.0;
  double stddev = 0.0;
};

TrainResult evaluate(const Dataset& ds, const CircuitSpec& spec, const Hyperparams& hyper,
                     uint64_t seed);

/// Normalizes and pads a raw dataset the way the trainer expects:
/// constant 0.1 columns up to 2^qubit_count(raw width), then unit rows.
Dataset prepare_for_circuit(const Dataset& ds);

double mean_of(const std::vector<double>& v);
double stddev_of(const std::vector<double>& v);  // population form

}  // namespace qarp
