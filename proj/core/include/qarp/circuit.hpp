#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qarp/statevector.hpp"

namespace qarp {

/// The six parametric layer topologies.
enum class LayerKind { C1, C2, C3, Zzfm, Circular, Full };

inline constexpr LayerKind kAllLayerKinds[] = {LayerKind::C1,   LayerKind::C2,
                                               LayerKind::C3,   LayerKind::Zzfm,
                                               LayerKind::Circular, LayerKind::Full};

/// The layer-repetition grid explored by the sweep.
inline constexpr int kLayerCountGrid[] = {1, 2, 3, 4, 8, 16};

bool in_layer_count_grid(int n_layers);

std::string layer_kind_name(LayerKind k);        // "Layer C-1", ...
std::string layer_kind_id(LayerKind k);          // "C1", "C2", ... for CSV cells
std::optional<LayerKind> parse_layer_kind(const std::string& s);

/// A circuit family: one layer topology repeated n_layers times on n_qubits
/// wires, preceded by amplitude embedding of the input.
struct CircuitSpec {
  LayerKind layer_kind = LayerKind::C1;
  int n_qubits = 2;
  int n_layers = 1;

  int params_per_layer() const;
  int total_params() const { return n_layers * params_per_layer(); }
  void validate() const;
};

int params_per_layer(LayerKind kind, int n_qubits);

/// Gate sequence of one layer; `params` must hold params_per_layer values.
std::vector<Gate> layer_gates(const CircuitSpec& spec, std::span<const double> params);

/// Gate sequence of the whole circuit; `theta` must hold total_params values.
std::vector<Gate> circuit_gates(const CircuitSpec& spec, std::span<const double> theta);

/// amplitude_embed(x) followed by all layers.
StateVector run_circuit(const CircuitSpec& spec, std::span<const double> theta,
                        std::span<const double> x);

/// Qubits needed for a feature count: ceil(log2(f)), floored at 2 so that
/// every layer topology (all of which entangle wire pairs) stays applicable.
int qubit_count(int n_features);

}  // namespace qarp
