#include "qarp/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace qarp {

bool in_layer_count_grid(int n_layers) {
  return std::find(std::begin(kLayerCountGrid), std::end(kLayerCountGrid), n_layers) !=
         std::end(kLayerCountGrid);
}

std::string layer_kind_name(LayerKind k) {
  switch (k) {
    case LayerKind::C1: return "Layer C-1";
    case LayerKind::C2: return "Layer C-2";
    case LayerKind::C3: return "Layer C-3";
    case LayerKind::Zzfm: return "Layer ZZFM";
    case LayerKind::Circular: return "Layer Circular";
    case LayerKind::Full: return "Layer Full";
  }
  return "?";
}

std::string layer_kind_id(LayerKind k) {
  switch (k) {
    case LayerKind::C1: return "C1";
    case LayerKind::C2: return "C2";
    case LayerKind::C3: return "C3";
    case LayerKind::Zzfm: return "ZZFM";
    case LayerKind::Circular: return "Circular";
    case LayerKind::Full: return "Full";
  }
  return "?";
}

std::optional<LayerKind> parse_layer_kind(const std::string& s) {
  for (LayerKind k : kAllLayerKinds)
    if (s == layer_kind_id(k) || s == layer_kind_name(k)) return k;
  return std::nullopt;
}

int params_per_layer(LayerKind kind, int n_qubits) {
  const int n = n_qubits;
  switch (kind) {
    case LayerKind::C1: return 2 * n;
    case LayerKind::C2: return n;
    case LayerKind::C3: return 2 * n - 1;
    case LayerKind::Zzfm: return 2 * n - 1;
    case LayerKind::Circular: return 3 * n;
    case LayerKind::Full: return 3 * n * (n - 1) / 2;
  }
  throw std::logic_error("unreachable layer kind");
}

int CircuitSpec::params_per_layer() const { return qarp::params_per_layer(layer_kind, n_qubits); }

void CircuitSpec::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("CircuitSpec: n_qubits must be >= 1");
  if (!in_layer_count_grid(n_layers))
    throw std::invalid_argument("CircuitSpec: n_layers must be one of {1,2,3,4,8,16}, got " +
                                std::to_string(n_layers));
  if ((layer_kind == LayerKind::Circular || layer_kind == LayerKind::Full) && n_qubits < 2)
    throw std::invalid_argument("CircuitSpec: " + layer_kind_name(layer_kind) +
                                " requires at least 2 qubits");
  if ((layer_kind == LayerKind::C2 || layer_kind == LayerKind::C3 ||
       layer_kind == LayerKind::Zzfm) &&
      n_qubits < 2)
    throw std::invalid_argument("CircuitSpec: " + layer_kind_name(layer_kind) +
                                " needs wire pairs, so at least 2 qubits");
}

std::vector<Gate> layer_gates(const CircuitSpec& spec, std::span<const double> params) {
  spec.validate();
  const int n = spec.n_qubits;
  if (static_cast<int>(params.size()) != spec.params_per_layer())
    throw std::invalid_argument("layer_gates: expected " + std::to_string(spec.params_per_layer()) +
                                " parameters, got " + std::to_string(params.size()));
  std::vector<Gate> gates;
  switch (spec.layer_kind) {
    case LayerKind::C1:
      // Rx column then Ry column.
      for (int q = 0; q < n; ++q) gates.push_back({GateKind::Rx, q, -1, {params[q]}});
      for (int q = 0; q < n; ++q) gates.push_back({GateKind::Ry, q, -1, {params[n + q]}});
      break;
    case LayerKind::C2:
      // Ry column then a linear CNOT chain down the wires.
      for (int q = 0; q < n; ++q) gates.push_back({GateKind::Ry, q, -1, {params[q]}});
      for (int q = 0; q + 1 < n; ++q) gates.push_back({GateKind::Cnot, q + 1, q, {}});
      break;
    case LayerKind::C3:
      // Ry column then a chain of controlled-Rz.
      for (int q = 0; q < n; ++q) gates.push_back({GateKind::Ry, q, -1, {params[q]}});
      for (int q = 0; q + 1 < n; ++q)
        gates.push_back({GateKind::Crz, q + 1, q, {params[n + q]}});
      break;
    case LayerKind::Zzfm:
      // H column, Rz column, then CNOT-Rz-CNOT on each adjacent pair.
      for (int q = 0; q < n; ++q) gates.push_back({GateKind::H, q, -1, {}});
      for (int q = 0; q < n; ++q) gates.push_back({GateKind::Rz, q, -1, {params[q]}});
      for (int q = 0; q + 1 < n; ++q) {
        gates.push_back({GateKind::Cnot, q + 1, q, {}});
        gates.push_back({GateKind::Rz, q + 1, -1, {params[n + q]}});
        gates.push_back({GateKind::Cnot, q + 1, q, {}});
      }
      break;
    case LayerKind::Circular: {
      // Ring of controlled-U: last wire controls the first, then down the chain.
      size_t p = 0;
      auto next3 = [&params, &p]() {
        std::array<double, 3> a{params[p], params[p + 1], params[p + 2]};
        p += 3;
        return a;
      };
      gates.push_back({GateKind::Cu, 0, n - 1, next3()});
      for (int q = 0; q + 1 < n; ++q) gates.push_back({GateKind::Cu, q + 1, q, next3()});
      break;
    }
    case LayerKind::Full: {
      // Controlled-U on every wire pair, grouped by target, controls above.
      size_t p = 0;
      for (int t = 1; t < n; ++t)
        for (int c = 0; c < t; ++c) {
          gates.push_back({GateKind::Cu, t, c, {params[p], params[p + 1], params[p + 2]}});
          p += 3;
        }
      break;
    }
  }
  return gates;
}

std::vector<Gate> circuit_gates(const CircuitSpec& spec, std::span<const double> theta) {
  spec.validate();
  if (static_cast<int>(theta.size()) != spec.total_params())
    throw std::invalid_argument("circuit_gates: expected " + std::to_string(spec.total_params()) +
                                " parameters, got " + std::to_string(theta.size()));
  const int ppl = spec.params_per_layer();
  std::vector<Gate> gates;
  for (int layer = 0; layer < spec.n_layers; ++layer) {
    auto lg = layer_gates(spec, theta.subspan(static_cast<size_t>(layer) * ppl, ppl));
    gates.insert(gates.end(), lg.begin(), lg.end());
  }
  return gates;
}

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> theta,
                        std::span<const double> x) {
  const auto gates = circuit_gates(spec, theta);
  StateVector sv = StateVector::amplitude_embed(x, spec.n_qubits);
  for (const Gate& g : gates) sv.apply(g);
  return sv;
}

int qubit_count(int n_features) {
  if (n_features < 1) throw std::invalid_argument("qubit_count: n_features must be >= 1");
  int q = 0;
  while ((1 << q) < n_features) ++q;
  return std::max(q, 2);
}

}  // namespace qarp
