#pragma once

#include <span>
#include <vector>

#include "qarp/gates.hpp"

namespace qarp {

/// Dense statevector over n qubits. Wire 0 is the top wire of the circuit
/// diagrams and maps to the most significant bit of the amplitude index,
/// so basis state |q0 q1 ... q_{n-1}> lives at index q0*2^{n-1} + ... + q_{n-1}.
class StateVector {
 public:
  explicit StateVector(int n_qubits);

  /// Loads a real vector into the amplitudes: zero-padded to 2^n entries,
  /// then scaled to unit norm. Throws if x is all zero or too long.
  static StateVector amplitude_embed(std::span<const double> x, int n_qubits);

  int n_qubits() const { return n_qubits_; }
  size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }

  void apply(const Gate& g);
  void apply_matrix(int wire, const Mat2& m);
  void apply_controlled_matrix(int control, int target, const Mat2& m);
  /// Applies P1(control) (x) m(target): the control=0 half is zeroed.
  /// Used for derivatives of controlled gates; not unitary.
  void apply_controlled_block_only(int control, int target, const Mat2& m);
  /// Applies Pauli-Z on one wire.
  void apply_z(int wire);

  /// <Z> on the given wire: P(bit=0) - P(bit=1), in [-1, 1].
  double expectation_z(int wire = 0) const;
  double norm() const;

  /// <a|b> with this as the bra (conjugated) side.
  cplx inner(const StateVector& ket) const;

 private:
  void check_wire(int wire) const;

  int n_qubits_;
  std::vector<cplx> amps_;
};

}  // namespace qarp
