#pragma once

#include "qarp/meta.hpp"

namespace qarp {

/// Flat key=value run configuration; unknown keys are an error so typos in
/// config files surface immediately.
struct PipelineConfig {
  std::string out_dir = "results";
  std::string data_dir = "data";

  uint64_t data_seed = 7;
  uint64_t profile_seed = 11;
  uint64_t sweep_seed = 13;
  uint64_t task_seed = 17;

  int profile_splits = 10;
  double profile_ratio = 0.7;

  Hyperparams hyper;
  std::vector<int> layer_counts = {1, 2, 3, 4, 8, 16};
  int threads = 0;  // 0 = hardware concurrency
  int task_trials = 30;

  RecommenderConfig recommender;

  /// Subset of the benchmark roster to run; empty = all 14.
  std::vector<std::string> dataset_filter;

  static PipelineConfig from_file(const std::string& path);
  static PipelineConfig from_text(const std::string& text);
  std::string canonical_text() const;
  uint64_t config_hash() const;
};

/// The benchmark roster in report row order. Synthetic sets are generated
/// from the config seed; the tabular ones load from data_dir.
std::vector<Dataset> build_roster(const PipelineConfig& cfg);

/// Named single-dataset generation for the gen-data CLI.
Dataset make_named_dataset(const std::string& name, int n_samples, uint64_t seed);
const std::vector<std::string>& roster_names();

struct PipelineResult {
  std::string out_dir;
  ProfileSet profiles;
  SweepSummary sweep;
  std::vector<DatasetTargets> targets;
  std::vector<TaskReportRow> task1a, task1b, task2;
  ScanResult scan1a, scan1b, scan2;
};

/// Runs data -> complexity -> sweep -> targets -> tasks -> scans, writing
/// every report into out_dir. With resume = true, stages whose outputs
/// already exist under a matching config hash are loaded instead of rerun.
PipelineResult run_pipeline(const PipelineConfig& cfg, bool resume = false);

/// Report writers/readers shared by the pipeline and the CLI.
void write_profiles_csv(const ProfileSet& profiles,
                        const std::vector<std::pair<std::string, int>>& raw_widths,
                        int n_splits, const std::string& path);
ProfileSet read_profiles_csv(const std::string& path);
void write_targets_csv(const std::vector<DatasetTargets>& targets, const std::string& path);
std::vector<DatasetTargets> read_targets_csv(const std::string& path);
void write_task_report(const std::vector<TaskReportRow>& rows, const std::string& path,
                       const std::string& trials_path);
void write_scan_csv(const ScanResult& scan, const std::string& path);

}  // namespace qarp
