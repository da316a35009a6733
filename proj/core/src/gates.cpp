#include "qarp/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qarp {

namespace {

const cplx kI{0.0, 1.0};

void require_arity(GateKind kind, std::span<const double> params) {
  if (static_cast<int>(params.size()) != Gate::gate_param_count(kind))
    throw std::invalid_argument("gate " + gate_kind_name(kind) + " expects " +
                                std::to_string(Gate::gate_param_count(kind)) +
                                " parameter(s), got " + std::to_string(params.size()));
}

}  // namespace

int Gate::gate_param_count(GateKind k) {
  switch (k) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::Crz:
      return 1;
    case GateKind::U:
    case GateKind::Cu:
      return 3;
    default:
      return 0;
  }
}

bool Gate::is_controlled(GateKind k) {
  return k == GateKind::Cnot || k == GateKind::Crz || k == GateKind::Cu;
}

Mat2 block_matrix(GateKind kind, std::span<const double> params) {
  require_arity(kind, params);
  switch (kind) {
    case GateKind::I:
      return {1.0, 0.0, 0.0, 1.0};
    case GateKind::X:
    case GateKind::Cnot:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      return {s, s, s, -s};
    }
    case GateKind::Rx: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {c, -kI * s, -kI * s, c};
    }
    case GateKind::Ry: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {c, -s, s, c};
    }
    case GateKind::Rz:
    case GateKind::Crz: {
      return {std::exp(-kI * (params[0] / 2)), 0.0, 0.0, std::exp(kI * (params[0] / 2))};
    }
    case GateKind::U:
    case GateKind::Cu: {
      // General one-qubit rotation with half-angle off-diagonals, the
      // unitary completion of the printed cos(theta/2) diagonal.
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      const double beta = params[1], gamma = params[2];
      return {c, -std::exp(kI * gamma) * s, std::exp(kI * beta) * s,
              std::exp(kI * (beta + gamma)) * c};
    }
  }
  throw std::logic_error("unreachable gate kind");
}

Mat2 block_matrix_deriv(GateKind kind, std::span<const double> params, int wrt) {
  require_arity(kind, params);
  if (wrt < 0 || wrt >= Gate::gate_param_count(kind))
    throw std::invalid_argument("derivative index out of range");
  switch (kind) {
    case GateKind::Rx: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {-0.5 * s, -0.5 * kI * c, -0.5 * kI * c, -0.5 * s};
    }
    case GateKind::Ry: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      return {-0.5 * s, -0.5 * c, 0.5 * c, -0.5 * s};
    }
    case GateKind::Rz:
    case GateKind::Crz: {
      return {-0.5 * kI * std::exp(-kI * (params[0] / 2)), 0.0, 0.0,
              0.5 * kI * std::exp(kI * (params[0] / 2))};
    }
    case GateKind::U:
    case GateKind::Cu: {
      const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      const double beta = params[1], gamma = params[2];
      const cplx eb = std::exp(kI * beta), eg = std::exp(kI * gamma),
                 ebg = std::exp(kI * (beta + gamma));
      if (wrt == 0) return {-0.5 * s, -0.5 * eg * c, 0.5 * eb * c, -0.5 * ebg * s};
      if (wrt == 1) return {0.0, 0.0, kI * eb * s, kI * ebg * c};
      return {0.0, -kI * eg * s, 0.0, kI * ebg * c};
    }
    default:
      throw std::invalid_argument("gate " + gate_kind_name(kind) + " has no parameters");
  }
}

Mat2 adjoint(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Eigen::MatrixXcd gate_matrix(GateKind kind, std::span<const double> params) {
  const Mat2 b = block_matrix(kind, params);
  if (!Gate::is_controlled(kind)) {
    Eigen::MatrixXcd m(2, 2);
    m << b[0], b[1], b[2], b[3];
    return m;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  m(2, 2) = b[0];
  m(2, 3) = b[1];
  m(3, 2) = b[2];
  m(3, 3) = b[3];
  return m;
}

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::I: return "I";
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::Rx: return "Rx";
    case GateKind::Ry: return "Ry";
    case GateKind::Rz: return "Rz";
    case GateKind::U: return "U";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Crz: return "CRz";
    case GateKind::Cu: return "CU";
  }
  return "?";
}

}  // namespace qarp
