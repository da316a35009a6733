#include "qarp/meta.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qarp/learners.hpp"
#include "qarp/rng.hpp"

namespace qarp {

std::vector<DatasetTargets> derive_targets(const SweepSummary& summary,
                                           const std::map<std::string, int>& qubits_by_dataset,
                                           double tol) {
  std::vector<DatasetTargets> out;
  for (size_t d = 0; d < summary.datasets.size(); ++d) {
    DatasetTargets t;
    t.dataset = summary.datasets[d];

    double best_acc = -1.0;
    for (size_t k = 0; k < summary.kinds.size(); ++k) {
      const SweepBest& b = summary.best[d][k];
      if (b.present) best_acc = std::max(best_acc, b.accuracy);
    }
    if (best_acc < 0.0)
      throw std::runtime_error("derive_targets: dataset '" + t.dataset + "' has no results");

    t.task2_target = 0;
    for (size_t k = 0; k < summary.kinds.size(); ++k) {
      const SweepBest& b = summary.best[d][k];
      if (!b.present || b.accuracy < best_acc - tol) continue;
      t.tied_best.push_back(summary.kinds[k]);
      t.task2_target = std::max(t.task2_target, b.n_layers);
    }

    const auto qit = qubits_by_dataset.find(t.dataset);
    const int nq = qit != qubits_by_dataset.end() ? qit->second : 2;
    t.task1a_label = t.tied_best.front();
    for (LayerKind k : t.tied_best)
      if (params_per_layer(k, nq) < params_per_layer(t.task1a_label, nq)) t.task1a_label = k;
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

Eigen::RowVectorXd profile_row(const ComplexityProfile& p) {
  const auto vals = p.values();
  return Eigen::Map<const Eigen::RowVectorXd>(vals.data(), vals.size());
}

const ComplexityProfile& find_profile(const ProfileSet& profiles, const std::string& name) {
  for (const auto& [n, p] : profiles)
    if (n == name) return p;
  throw std::runtime_error("no complexity profile for dataset '" + name + "'");
}

}  // namespace

MetaTable build_task1a_table(const ProfileSet& profiles,
                             const std::vector<DatasetTargets>& targets) {
  MetaTable t;
  t.features.resize(targets.size(), ComplexityProfile::measure_names().size());
  for (size_t i = 0; i < targets.size(); ++i) {
    t.datasets.push_back(targets[i].dataset);
    t.features.row(i) = profile_row(find_profile(profiles, targets[i].dataset));
    t.circuit_labels.push_back(layer_kind_name(targets[i].task1a_label));
    t.layer_targets.push_back(targets[i].task2_target);
  }
  return t;
}

MetaTable build_task1b_table(const ProfileSet& profiles,
                             const std::vector<DatasetTargets>& targets) {
  MetaTable t;
  size_t rows = 0;
  for (const auto& tg : targets) rows += tg.tied_best.size();
  t.features.resize(rows, ComplexityProfile::measure_names().size());
  size_t r = 0;
  for (const auto& tg : targets) {
    const auto row = profile_row(find_profile(profiles, tg.dataset));
    for (LayerKind k : tg.tied_best) {
      t.datasets.push_back(tg.dataset);
      t.features.row(r++) = row;
      t.circuit_labels.push_back(layer_kind_name(k));
      t.layer_targets.push_back(tg.task2_target);
    }
  }
  return t;
}

MetaTable build_task2_table(const ProfileSet& profiles,
                            const std::vector<DatasetTargets>& targets) {
  return build_task1a_table(profiles, targets);
}

namespace {

Eigen::MatrixXd select_features(const MetaTable& table, const std::string& feature_set) {
  if (feature_set == "ALL") return table.features;
  const auto& names = ComplexityProfile::measure_names();
  const auto it = std::find(names.begin(), names.end(), feature_set);
  if (it == names.end())
    throw std::invalid_argument("unknown complexity measure '" + feature_set + "'");
  return table.features.col(it - names.begin());
}

std::vector<int> encode_labels(const std::vector<std::string>& labels,
                               std::vector<std::string>& classes) {
  std::set<std::string> uniq(labels.begin(), labels.end());
  classes.assign(uniq.begin(), uniq.end());  // sorted, so ties resolve alphabetically
  std::vector<int> out(labels.size());
  for (size_t i = 0; i < labels.size(); ++i)
    out[i] = static_cast<int>(std::find(classes.begin(), classes.end(), labels[i]) -
                              classes.begin());
  return out;
}

void finish_stats(TaskReportRow& row) {
  row.mean = mean_of(row.trials);
  row.stddev = stddev_of(row.trials);
  row.min = *std::min_element(row.trials.begin(), row.trials.end());
  row.max = *std::max_element(row.trials.begin(), row.trials.end());
}

}  // namespace

TaskReportRow run_task1(const MetaTable& table, const std::string& model_kind,
                        const std::string& feature_set, int trials, uint64_t seed, int holdout,
                        bool tied_set_scoring) {
  const int n = table.n_rows();
  if (holdout < 1 || holdout >= n) throw std::invalid_argument("run_task1: bad holdout size");
  const Eigen::MatrixXd X = select_features(table, feature_set);
  std::vector<std::string> classes;
  const std::vector<int> y = encode_labels(table.circuit_labels, classes);

  // Tied-best label sets per dataset, for recommendation-style scoring.
  std::map<std::string, std::set<std::string>> tied;
  for (int i = 0; i < n; ++i) tied[table.datasets[i]].insert(table.circuit_labels[i]);

  TaskReportRow row{model_kind, feature_set, 0, 0, 0, 0, {}};
  row.trials.reserve(trials);
  std::vector<int> idx(n);
  for (int t = 0; t < trials; ++t) {
    std::iota(idx.begin(), idx.end(), 0);
    auto rng = make_rng(mix_seed(seed, {0x7a51, (uint64_t)t}));
    std::shuffle(idx.begin(), idx.end(), rng);

    const int n_train = n - holdout;
    Eigen::MatrixXd Xtr(n_train, X.cols());
    std::vector<int> ytr(n_train);
    for (int i = 0; i < n_train; ++i) {
      Xtr.row(i) = X.row(idx[i]);
      ytr[i] = y[idx[i]];
    }
    auto model = make_classifier(model_kind);
    model->fit(Xtr, ytr, mix_seed(seed, {0xf17, (uint64_t)t}));

    int hits = 0;
    for (int i = n_train; i < n; ++i) {
      const int pred = model->predict_one(X.row(idx[i]).transpose());
      const std::string& pred_label = classes[pred];
      if (tied_set_scoring) {
        hits += tied[table.datasets[idx[i]]].count(pred_label) > 0;
      } else {
        hits += pred_label == table.circuit_labels[idx[i]];
      }
    }
    row.trials.push_back(static_cast<double>(hits) / holdout);
  }
  finish_stats(row);
  return row;
}

TaskReportRow run_task2(const MetaTable& table, const std::string& model_kind,
                        const std::string& feature_set, int trials, uint64_t seed) {
  const int n = table.n_rows();
  if (n < 2) throw std::invalid_argument("run_task2: need at least 2 rows");
  const Eigen::MatrixXd X = select_features(table, feature_set);

  TaskReportRow row{model_kind, feature_set, 0, 0, 0, 0, {}};
  row.trials.reserve(trials);
  std::vector<int> idx(n);
  for (int t = 0; t < trials; ++t) {
    std::iota(idx.begin(), idx.end(), 0);
    auto rng = make_rng(mix_seed(seed, {0x7a52, (uint64_t)t}));
    std::shuffle(idx.begin(), idx.end(), rng);

    Eigen::MatrixXd Xtr(n - 1, X.cols());
    std::vector<double> ytr(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      Xtr.row(i) = X.row(idx[i]);
      ytr[i] = table.layer_targets[idx[i]];
    }
    auto model = make_regressor(model_kind);
    model->fit(Xtr, ytr, mix_seed(seed, {0xf27, (uint64_t)t}));
    const double pred = model->predict_one(X.row(idx[n - 1]).transpose());
    row.trials.push_back(std::abs(pred - table.layer_targets[idx[n - 1]]));
  }
  finish_stats(row);
  return row;
}

ScanResult scan_task1(const MetaTable& table, const std::vector<std::string>& models, int trials,
                      uint64_t seed, int holdout, bool tied_set_scoring) {
  ScanResult scan;
  scan.measures = ComplexityProfile::measure_names();
  scan.models = models;
  scan.score.resize(scan.measures.size(), models.size());
  scan.best_score = -1.0;
  for (size_t mi = 0; mi < scan.measures.size(); ++mi)
    for (size_t ki = 0; ki < models.size(); ++ki) {
      const auto row = run_task1(table, models[ki], scan.measures[mi], trials,
                                 mix_seed(seed, {mi, ki}), holdout, tied_set_scoring);
      scan.score(mi, ki) = row.mean;
      if (row.mean > scan.best_score) {
        scan.best_score = row.mean;
        scan.best_measure = scan.measures[mi];
        scan.best_model = models[ki];
      }
    }
  return scan;
}

ScanResult scan_task2(const MetaTable& table, const std::vector<std::string>& models, int trials,
                      uint64_t seed) {
  ScanResult scan;
  scan.measures = ComplexityProfile::measure_names();
  scan.models = models;
  scan.score.resize(scan.measures.size(), models.size());
  scan.best_score = 1e300;
  for (size_t mi = 0; mi < scan.measures.size(); ++mi)
    for (size_t ki = 0; ki < models.size(); ++ki) {
      const auto row =
          run_task2(table, models[ki], scan.measures[mi], trials, mix_seed(seed, {mi, ki}));
      scan.score(mi, ki) = row.mean;
      if (row.mean < scan.best_score) {
        scan.best_score = row.mean;
        scan.best_measure = scan.measures[mi];
        scan.best_model = models[ki];
      }
    }
  return scan;
}

int ceil_to_layer_grid(double prediction) {
  for (int g : kLayerCountGrid)
    if (prediction <= g) return g;
  return kLayerCountGrid[std::size(kLayerCountGrid) - 1];
}

Recommendation recommend(const ComplexityProfile& profile, const MetaTable& task1b_table,
                         const MetaTable& task2_table, const RecommenderConfig& cfg,
                         uint64_t seed) {
  profile.validate();
  if (profile.c1 >= 1.0)
    throw std::invalid_argument("recommend: degenerate single-class profile");

  std::vector<std::string> classes;
  const std::vector<int> y1 = encode_labels(task1b_table.circuit_labels, classes);
  auto clf = make_classifier(cfg.task1_model);
  {
    const Eigen::MatrixXd Xsel = cfg.task1_feature == "ALL"
                                     ? task1b_table.features
                                     : Eigen::MatrixXd(select_features(task1b_table,
                                                                       cfg.task1_feature));
    clf->fit(Xsel, y1, mix_seed(seed, {0x91ec}));
  }

  auto reg = make_regressor(cfg.task2_model);
  {
    const Eigen::MatrixXd Xsel =
        cfg.task2_feature == "ALL"
            ? task2_table.features
            : Eigen::MatrixXd(select_features(task2_table, cfg.task2_feature));
    reg->fit(Xsel, task2_table.layer_targets, mix_seed(seed, {0x92ec}));
  }

  auto pick_features = [&](const std::string& feature_set) {
    const auto vals = profile.values();
    if (feature_set == "ALL")
      return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(vals.data(), vals.size()));
    Eigen::VectorXd v(1);
    v[0] = profile.by_name(feature_set);
    return v;
  };

  Recommendation rec;
  const int cls = clf->predict_one(pick_features(cfg.task1_feature));
  const auto kind = parse_layer_kind(classes[cls]);
  if (!kind) throw std::runtime_error("recommend: unparseable circuit label " + classes[cls]);
  rec.layer_kind = *kind;
  rec.raw_layer_prediction = reg->predict_one(pick_features(cfg.task2_feature));
  rec.n_layers = ceil_to_layer_grid(rec.raw_layer_prediction);
  return rec;
}

}  // namespace qarp
