// Independent reference implementations the fast paths are checked against.
// Everything here favors directness over speed and must not share code with
// the library internals it validates.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qarp/circuit.hpp"

namespace oracles {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Full 2^n x 2^n matrix of one gate, wire 0 = most significant factor.
inline CMat full_gate_matrix(const qarp::Gate& g, int n_qubits) {
  const CMat block = qarp::gate_matrix(
      g.kind, std::span<const double>(g.params.data(), g.n_params()));
  const CMat eye2 = CMat::Identity(2, 2);
  if (!qarp::Gate::is_controlled(g.kind)) {
    CMat acc = CMat::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) acc = kron(acc, q == g.target ? block : eye2);
    return acc;
  }
  CMat p0 = CMat::Zero(2, 2), p1 = CMat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const CMat target_block = block.bottomRightCorner(2, 2);  // 4x4 embedding's U
  CMat acc0 = CMat::Identity(1, 1), acc1 = CMat::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    acc0 = kron(acc0, q == g.control ? p0 : eye2);
    acc1 = kron(acc1, q == g.control ? p1 : (q == g.target ? target_block : eye2));
  }
  return acc0 + acc1;
}

/// Product of all layer gates as one dense unitary.
inline CMat circuit_unitary(const qarp::CircuitSpec& spec, std::span<const double> theta) {
  const auto gates = qarp::circuit_gates(spec, theta);
  CMat u = CMat::Identity(1 << spec.n_qubits, 1 << spec.n_qubits);
  for (const qarp::Gate& g : gates) u = full_gate_matrix(g, spec.n_qubits) * u;
  return u;
}

/// Dense matrix-chain evaluation of the full circuit on an embedded input.
inline CVec run_circuit_dense(const qarp::CircuitSpec& spec, std::span<const double> theta,
                              std::span<const double> x) {
  const int dim = 1 << spec.n_qubits;
  CVec v = CVec::Zero(dim);
  double norm = 0.0;
  for (double xi : x) norm += xi * xi;
  norm = std::sqrt(norm);
  for (size_t i = 0; i < x.size(); ++i) v[i] = x[i] / norm;
  return circuit_unitary(spec, theta) * v;
}

/// <Z_wire> as an explicit probability difference over all basis outcomes.
inline double expectation_z_by_outcomes(const CVec& amps, int n_qubits, int wire) {
  double p0 = 0.0, p1 = 0.0;
  for (Eigen::Index b = 0; b < amps.size(); ++b) {
    const int bit = (b >> (n_qubits - 1 - wire)) & 1;
    (bit ? p1 : p0) += std::norm(amps[b]);
  }
  return p0 - p1;
}

/// Leave-one-out 1NN error by direct argmin (lowest index on ties).
inline double loo_1nn_error(const Eigen::MatrixXd& X, const std::vector<int>& y) {
  const int n = static_cast<int>(X.rows());
  int errors = 0;
  for (int i = 0; i < n; ++i) {
    int nn = -1;
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (X.row(i) - X.row(j)).squaredNorm();
      if (nn < 0 || d < best) {
        nn = j;
        best = d;
      }
    }
    errors += y[nn] != y[i];
  }
  return static_cast<double>(errors) / n;
}

/// Minimum spanning-tree weight by exhaustive Pruefer-sequence enumeration.
/// Usable for n <= 8 (n^(n-2) trees).
inline double min_spanning_tree_weight_bruteforce(const Eigen::MatrixXd& dist) {
  const int n = static_cast<int>(dist.rows());
  if (n == 2) return dist(0, 1);
  std::vector<int> code(n - 2, 0);
  double best = 1e300;
  while (true) {
    // Decode the Pruefer sequence into tree edges.
    std::vector<int> degree(n, 1);
    for (int v : code) ++degree[v];
    double weight = 0.0;
    std::vector<int> deg = degree;
    std::vector<char> used(n, 0);
    for (int v : code) {
      for (int leaf = 0; leaf < n; ++leaf) {
        if (deg[leaf] == 1 && !used[leaf]) {
          weight += dist(leaf, v);
          used[leaf] = 1;
          --deg[v];
          break;
        }
      }
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v)
      if (!used[v] && deg[v] == 1) (a < 0 ? a : b) = v;
    weight += dist(a, b);
    best = std::min(best, weight);

    int pos = n - 3;
    while (pos >= 0 && code[pos] == n - 1) code[pos--] = 0;
    if (pos < 0) break;
    ++code[pos];
  }
  return best;
}

}  // namespace oracles
