#include "qarp/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qarp {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 20)
    throw std::invalid_argument("n_qubits must be in [1, 20], got " + std::to_string(n_qubits));
  amps_.assign(size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::amplitude_embed(std::span<const double> x, int n_qubits) {
  StateVector sv(n_qubits);
  if (x.size() > sv.dim())
    throw std::invalid_argument("amplitude_embed: input with " + std::to_string(x.size()) +
                                " entries does not fit " + std::to_string(n_qubits) + " qubits");
  double sq = 0.0;
  for (double v : x) sq += v * v;
  if (sq <= 0.0) throw std::invalid_argument("amplitude_embed: input vector is all zero");
  const double inv = 1.0 / std::sqrt(sq);
  sv.amps_.assign(sv.dim(), cplx{0.0, 0.0});
  for (size_t i = 0; i < x.size(); ++i) sv.amps_[i] = x[i] * inv;
  return sv;
}

void StateVector::check_wire(int wire) const {
  if (wire < 0 || wire >= n_qubits_)
    throw std::out_of_range("wire " + std::to_string(wire) + " out of range for " +
                            std::to_string(n_qubits_) + " qubits");
}

void StateVector::apply(const Gate& g) {
  const Mat2 m = block_matrix(g.kind, std::span<const double>(g.params.data(), g.n_params()));
  if (Gate::is_controlled(g.kind)) {
    if (g.control == g.target) throw std::invalid_argument("control and target wires coincide");
    apply_controlled_matrix(g.control, g.target, m);
  } else {
    apply_matrix(g.target, m);
  }
}

void StateVector::apply_matrix(int wire, const Mat2& m) {
  check_wire(wire);
  const size_t mask = size_t{1} << (n_qubits_ - 1 - wire);
  const size_t n = amps_.size();
  for (size_t i = 0; i < n; ++i) {
    if (i & mask) continue;
    const cplx a = amps_[i], b = amps_[i | mask];
    amps_[i] = m[0] * a + m[1] * b;
    amps_[i | mask] = m[2] * a + m[3] * b;
  }
}

void StateVector::apply_controlled_matrix(int control, int target, const Mat2& m) {
  check_wire(control);
  check_wire(target);
  const size_t cmask = size_t{1} << (n_qubits_ - 1 - control);
  const size_t tmask = size_t{1} << (n_qubits_ - 1 - target);
  const size_t n = amps_.size();
  for (size_t i = 0; i < n; ++i) {
    if (!(i & cmask) || (i & tmask)) continue;
    const cplx a = amps_[i], b = amps_[i | tmask];
    amps_[i] = m[0] * a + m[1] * b;
    amps_[i | tmask] = m[2] * a + m[3] * b;
  }
}

void StateVector::apply_controlled_block_only(int control, int target, const Mat2& m) {
  check_wire(control);
  check_wire(target);
  const size_t cmask = size_t{1} << (n_qubits_ - 1 - control);
  const size_t tmask = size_t{1} << (n_qubits_ - 1 - target);
  const size_t n = amps_.size();
  for (size_t i = 0; i < n; ++i) {
    if (!(i & cmask)) {
      amps_[i] = 0.0;
      continue;
    }
    if (i & tmask) continue;
    const cplx a = amps_[i], b = amps_[i | tmask];
    amps_[i] = m[0] * a + m[1] * b;
    amps_[i | tmask] = m[2] * a + m[3] * b;
  }
}

void StateVector::apply_z(int wire) {
  check_wire(wire);
  const size_t mask = size_t{1} << (n_qubits_ - 1 - wire);
  for (size_t i = 0; i < amps_.size(); ++i)
    if (i & mask) amps_[i] = -amps_[i];
}

double StateVector::expectation_z(int wire) const {
  check_wire(wire);
  const size_t mask = size_t{1} << (n_qubits_ - 1 - wire);
  double acc = 0.0;
  for (size_t i = 0; i < amps_.size(); ++i) {
    const double p = std::norm(amps_[i]);
    acc += (i & mask) ? -p : p;
  }
  return acc;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

cplx StateVector::inner(const StateVector& ket) const {
  if (ket.dim() != dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx acc{0.0, 0.0};
  for (size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * ket.amps_[i];
  return acc;
}

}  // namespace qarp
