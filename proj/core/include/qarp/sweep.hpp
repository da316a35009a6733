#pragma once

#include <optional>

#include "qarp/training.hpp"

namespace qarp {

/// Result of one (dataset, layer kind, layer count) configuration.
struct SweepCell {
  std::string dataset;
  LayerKind layer_kind = LayerKind::C1;
  int n_layers = 1;
  std::vector<double> rep_max_accuracy;
  double mean = 0.0;
  double stddev = 0.0;
  std::string error;  // non-empty when the cell failed

  bool ok() const { return error.empty(); }
};

/// Best accuracy per (dataset, kind) and the smallest layer count attaining
/// it; mirrors the published per-layer summary tables.
struct SweepBest {
  bool present = false;  // false for skipped (2-raw-feature, Circular/Full)
  double accuracy = 0.0;
  int n_layers = 0;
};

struct SweepSummary {
  std::vector<std::string> datasets;  // row order
  std::vector<LayerKind> kinds;       // column order
  std::vector<std::vector<SweepBest>> best;  // [dataset][kind]
  std::vector<SweepCell> cells;              // every configuration run

  const SweepBest& at(const std::string& dataset, LayerKind kind) const;
};

/// Runs every applicable configuration. Datasets are taken raw: each one is
/// padded and sample-normalized internally. Circular and Full are skipped
/// for datasets whose raw feature count is 2. Deterministic for a fixed
/// seed regardless of thread count.
SweepSummary sweep(const std::vector<Dataset>& datasets, std::span<const LayerKind> kinds,
                   std::span<const int> layer_counts, const Hyperparams& hyper, uint64_t seed,
                   int n_threads = 1);

void write_sweep_raw(const SweepSummary& s, const std::string& path);
void write_accuracy_table(const SweepSummary& s, const std::string& path);
void write_layers_table(const SweepSummary& s, const std::string& path);

/// Rebuilds a summary from a sweep_raw file (resume path).
SweepSummary read_sweep_raw(const std::string& path);

}  // namespace qarp
