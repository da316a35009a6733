#pragma once

#include <map>

#include "qarp/complexity.hpp"
#include "qarp/sweep.hpp"

namespace qarp {

/// Best-circuit structure of one dataset, derived from the sweep tables.
struct DatasetTargets {
  std::string dataset;
  std::vector<LayerKind> tied_best;  // every kind within tolerance of the max
  LayerKind task1a_label = LayerKind::C1;  // simplest tied kind
  int task2_target = 1;  // max best-layer-count over the tied kinds
};

/// Mean accuracies within `tol` of a dataset's maximum count as tied. The
/// single Task-1-A label is the tied kind with the fewest parameters per
/// layer (enum order breaks exact parameter ties). The Task-2 target takes
/// the largest best-layer-count among the tied kinds, so the predicted
/// depth errs toward more layers, never fewer.
std::vector<DatasetTargets> derive_targets(const SweepSummary& summary,
                                           const std::map<std::string, int>& qubits_by_dataset,
                                           double tol = 1e-4);

/// One row per dataset (Task 1-A, Task 2) or per (dataset, tied-best kind)
/// pair (Task 1-B); features are the 22 complexity measures.
struct MetaTable {
  std::vector<std::string> datasets;  // per row; repeats in the 1-B table
  Eigen::MatrixXd features;           // rows x 22, measure_names() order
  std::vector<std::string> circuit_labels;  // Task 1 targets
  std::vector<double> layer_targets;        // Task 2 targets

  int n_rows() const { return static_cast<int>(features.rows()); }
};

using ProfileSet = std::vector<std::pair<std::string, ComplexityProfile>>;

MetaTable build_task1a_table(const ProfileSet& profiles,
                             const std::vector<DatasetTargets>& targets);
MetaTable build_task1b_table(const ProfileSet& profiles,
                             const std::vector<DatasetTargets>& targets);
MetaTable build_task2_table(const ProfileSet& profiles,
                            const std::vector<DatasetTargets>& targets);

struct TaskReportRow {
  std::string model;
  std::string feature_set;  // "ALL" or one measure name
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  std::vector<double> trials;
};

/// Task 1: per trial, hold out `holdout` rows, fit on the rest, score the
/// held-out predictions. Task 1-A scores an exact match of the designated
/// label; Task 1-B counts a prediction as correct when it belongs to the
/// held-out dataset's tied-best set (any of them is a valid
/// recommendation).
TaskReportRow run_task1(const MetaTable& table, const std::string& model_kind,
                        const std::string& feature_set, int trials, uint64_t seed,
                        int holdout, bool tied_set_scoring);

/// Task 2: per trial, hold out one row, fit the regressor, record the
/// absolute error; reports MAE over trials.
TaskReportRow run_task2(const MetaTable& table, const std::string& model_kind,
                        const std::string& feature_set, int trials, uint64_t seed);

struct ScanResult {
  std::vector<std::string> measures;
  std::vector<std::string> models;
  Eigen::MatrixXd score;  // measure x model: accuracy (task 1) or MAE (task 2)
  std::string best_measure, best_model;
  double best_score = 0.0;
};

ScanResult scan_task1(const MetaTable& table, const std::vector<std::string>& models, int trials,
                      uint64_t seed, int holdout, bool tied_set_scoring);
ScanResult scan_task2(const MetaTable& table, const std::vector<std::string>& models, int trials,
                      uint64_t seed);

struct RecommenderConfig {
  std::string task1_model = "DT";
  std::string task1_feature = "T2";
  std::string task2_model = "Adaboost";
  std::string task2_feature = "N2";
};

struct Recommendation {
  LayerKind layer_kind = LayerKind::C1;
  int n_layers = 1;
  double raw_layer_prediction = 0.0;
};

/// Smallest grid value >= prediction (16 caps the grid).
int ceil_to_layer_grid(double prediction);

/// Fits the configured recommenders on the meta tables and maps a profile
/// to a circuit and a layer count.
Recommendation recommend(const ComplexityProfile& profile, const MetaTable& task1b_table,
                         const MetaTable& task2_table, const RecommenderConfig& cfg,
                         uint64_t seed);

}  // namespace qarp
