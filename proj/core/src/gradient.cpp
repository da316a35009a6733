#include "qarp/gradient.hpp"

#include <stdexcept>

namespace qarp {

namespace {

void apply_gate_deriv(StateVector& sv, const Gate& g, int wrt) {
  const Mat2 d =
      block_matrix_deriv(g.kind, std::span<const double>(g.params.data(), g.n_params()), wrt);
  if (Gate::is_controlled(g.kind))
    sv.apply_controlled_block_only(g.control, g.target, d);
  else
    sv.apply_matrix(g.target, d);
}

void apply_gate_adjoint(StateVector& sv, const Gate& g) {
  const Mat2 m =
      adjoint(block_matrix(g.kind, std::span<const double>(g.params.data(), g.n_params())));
  if (Gate::is_controlled(g.kind))
    sv.apply_controlled_matrix(g.control, g.target, m);
  else
    sv.apply_matrix(g.target, m);
}

}  // namespace

std::vector<double> score_gradient(const CircuitSpec& spec, std::span<const double> theta,
                                   std::span<const double> x, int wire) {
  const auto gates = circuit_gates(spec, theta);

  StateVector psi = StateVector::amplitude_embed(x, spec.n_qubits);
  for (const Gate& g : gates) psi.apply(g);

  // score = <psi|Z|psi>; walking the gates backwards keeps
  //   bra = U_{k+1}^† .. U_L^† Z psi,   ket = state before gate k,
  // so d(score)/d(theta_k) = 2 Re <bra| dU_k |ket>.
  StateVector bra = psi;
  bra.apply_z(wire);
  StateVector ket = std::move(psi);

  std::vector<double> grad(theta.size(), 0.0);
  int p_end = static_cast<int>(theta.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    const Gate& g = *it;
    apply_gate_adjoint(ket, g);
    const int np = g.n_params();
    for (int j = 0; j < np; ++j) {
      StateVector dket = ket;
      apply_gate_deriv(dket, g, j);
      grad[p_end - np + j] = 2.0 * bra.inner(dket).real();
    }
    p_end -= np;
    if (p_end > 0) apply_gate_adjoint(bra, g);
  }
  return grad;
}

double batch_margin_loss(const QuantumClassifier& model, const Eigen::MatrixXd& batch,
                         std::span<const int> labels, double margin) {
  if (batch.rows() == 0) throw std::invalid_argument("batch_margin_loss: empty batch");
  if (batch.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("batch_margin_loss: rows vs labels mismatch");
  double total = 0.0;
  std::vector<double> x(batch.cols());
  for (Eigen::Index i = 0; i < batch.rows(); ++i) {
    Eigen::Map<Eigen::VectorXd>(x.data(), batch.cols()) = batch.row(i);
    total += margin_loss(model.scores(x), labels[i], margin);
  }
  return total / static_cast<double>(batch.rows());
}

ThetaMatrix margin_loss_gradient(const QuantumClassifier& model, const Eigen::MatrixXd& batch,
                                 std::span<const int> labels, double margin) {
  if (batch.rows() == 0) throw std::invalid_argument("margin_loss_gradient: empty batch");
  if (batch.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("margin_loss_gradient: rows vs labels mismatch");

  ThetaMatrix grad = ThetaMatrix::Zero(model.theta.rows(), model.theta.cols());
  const double inv_batch = 1.0 / static_cast<double>(batch.rows());
  std::vector<double> x(batch.cols());
  std::vector<double> coeff(model.n_classes);

  for (Eigen::Index i = 0; i < batch.rows(); ++i) {
    Eigen::Map<Eigen::VectorXd>(x.data(), batch.cols()) = batch.row(i);
    const auto s = model.scores(x);
    const int y = labels[i];
    if (y < 0 || y >= model.n_classes)
      throw std::invalid_argument("margin_loss_gradient: label out of range");

    // d(loss_i)/d(score_c): +1 per active hinge on c != y, minus the count
    // of active hinges on the true class.
    std::fill(coeff.begin(), coeff.end(), 0.0);
    int active = 0;
    for (int j = 0; j < model.n_classes; ++j) {
      if (j == y) continue;
      if (margin - s[y] + s[j] > 0.0) {
        coeff[j] = 1.0;
        ++active;
      }
    }
    coeff[y] = -static_cast<double>(active);
    if (active == 0) continue;

    for (int c = 0; c < model.n_classes; ++c) {
      if (coeff[c] == 0.0) continue;
      const auto g = score_gradient(
          model.spec, std::span<const double>(model.theta.row(c).data(), model.theta.cols()), x);
      for (Eigen::Index p = 0; p < grad.cols(); ++p) grad(c, p) += coeff[c] * g[p] * inv_batch;
    }
  }
  if (!grad.allFinite()) throw std::runtime_error("margin_loss_gradient: non-finite gradient");
  return grad;
}

ThetaMatrix margin_loss_gradient_fd(const QuantumClassifier& model, const Eigen::MatrixXd& batch,
                                    std::span<const int> labels, double margin, double step) {
  QuantumClassifier probe = model;
  ThetaMatrix grad(model.theta.rows(), model.theta.cols());
  for (Eigen::Index c = 0; c < model.theta.rows(); ++c)
    for (Eigen::Index p = 0; p < model.theta.cols(); ++p) {
      const double saved = probe.theta(c, p);
      probe.theta(c, p) = saved + step;
      const double up = batch_margin_loss(probe, batch, labels, margin);
      probe.theta(c, p) = saved - step;
      const double down = batch_margin_loss(probe, batch, labels, margin);
      probe.theta(c, p) = saved;
      grad(c, p) = (up - down) / (2.0 * step);
    }
  return grad;
}

}  // namespace qarp
