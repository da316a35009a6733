#pragma once

#include <span>

#include "qarp/classifier.hpp"

namespace qarp {

/// d<Z_wire>/d(theta) of one circuit evaluation, computed by reverse-mode
/// (adjoint) sweep over the gate sequence. Exact up to float rounding.
std::vector<double> score_gradient(const CircuitSpec& spec, std::span<const double> theta,
                                   std::span<const double> x, int wire = 0);

/// Gradient of the mean margin loss over a batch with respect to every
/// entry of theta. Rows of `batch` are samples, `labels` their classes.
ThetaMatrix margin_loss_gradient(const QuantumClassifier& model, const Eigen::MatrixXd& batch,
                                 std::span<const int> labels, double margin);

/// Central-finite-difference baseline for the same quantity. Slow; kept as
/// the independent check the adjoint path is validated against.
ThetaMatrix margin_loss_gradient_fd(const QuantumClassifier& model, const Eigen::MatrixXd& batch,
                                    std::span<const int> labels, double margin,
                                    double step = 1e-4);

/// Mean margin loss over a batch (the function both gradients differentiate).
double batch_margin_loss(const QuantumClassifier& model, const Eigen::MatrixXd& batch,
                         std::span<const int> labels, double margin);

}  // namespace qarp
