#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <string>

namespace qarp {

using cplx = std::complex<double>;

/// 2x2 unitary in row-major order {u00, u01, u10, u11}.
using Mat2 = std::array<cplx, 4>;

enum class GateKind { I, X, H, Rx, Ry, Rz, U, Cnot, Crz, Cu };

/// One gate instance placed on concrete wires. Single-qubit kinds leave
/// `control` at -1; controlled kinds (Cnot, Crz, Cu) require it.
struct Gate {
  GateKind kind = GateKind::I;
  int target = 0;
  int control = -1;
  std::array<double, 3> params{};

  int n_params() const { return gate_param_count(kind); }

  static int gate_param_count(GateKind k);
  static bool is_controlled(GateKind k);
};

/// The 2x2 matrix of a single-qubit kind, or of the *target block* of a
/// controlled kind (X for Cnot, Rz for Crz, U for Cu).
Mat2 block_matrix(GateKind kind, std::span<const double> params);

/// Derivative of the block matrix with respect to params[wrt].
Mat2 block_matrix_deriv(GateKind kind, std::span<const double> params, int wrt);

Mat2 adjoint(const Mat2& m);

/// Full gate matrix: 2x2 for single-qubit kinds, 4x4 block embedding
/// (control = first tensor factor) for controlled kinds.
Eigen::MatrixXcd gate_matrix(GateKind kind, std::span<const double> params);

std::string gate_kind_name(GateKind k);

}  // namespace qarp
