#include "qarp/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "qarp/csv.hpp"
#include "qarp/generators.hpp"
#include "qarp/learners.hpp"
#include "qarp/rng.hpp"

namespace fs = std::filesystem;

namespace qarp {

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

PipelineConfig PipelineConfig::from_text(const std::string& text) {
  PipelineConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "out_dir") cfg.out_dir = value;
      else if (key == "data_dir") cfg.data_dir = value;
      else if (key == "data_seed") cfg.data_seed = std::stoull(value);
      else if (key == "profile_seed") cfg.profile_seed = std::stoull(value);
      else if (key == "sweep_seed") cfg.sweep_seed = std::stoull(value);
      else if (key == "task_seed") cfg.task_seed = std::stoull(value);
      else if (key == "profile_splits") cfg.profile_splits = std::stoi(value);
      else if (key == "profile_ratio") cfg.profile_ratio = std::stod(value);
      else if (key == "margin") cfg.hyper.margin = std::stod(value);
      else if (key == "batch_size") cfg.hyper.batch_size = std::stoi(value);
      else if (key == "learning_rate") cfg.hyper.learning_rate = std::stod(value);
      else if (key == "max_epochs") cfg.hyper.max_epochs = std::stoi(value);
      else if (key == "repetitions") cfg.hyper.repetitions = std::stoi(value);
      else if (key == "split_ratio") cfg.hyper.split_ratio = std::stod(value);
      else if (key == "layer_counts") {
        cfg.layer_counts.clear();
        for (const auto& v : split_list(value)) cfg.layer_counts.push_back(std::stoi(v));
      } else if (key == "threads") cfg.threads = std::stoi(value);
      else if (key == "task_trials") cfg.task_trials = std::stoi(value);
      else if (key == "task1_model") cfg.recommender.task1_model = value;
      else if (key == "task1_feature") cfg.recommender.task1_feature = value;
      else if (key == "task2_model") cfg.recommender.task2_model = value;
      else if (key == "task2_feature") cfg.recommender.task2_feature = value;
      else if (key == "datasets") cfg.dataset_filter = split_list(value);
      else throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("config line " + std::to_string(line_no) + ": bad value for '" +
                               key + "'");
    }
  }
  return cfg;
}

std::string PipelineConfig::canonical_text() const {
  std::stringstream ss;
  ss << "data_dir=" << data_dir << "\n";
  ss << "data_seed=" << data_seed << "\n";
  ss << "profile_seed=" << profile_seed << "\n";
  ss << "sweep_seed=" << sweep_seed << "\n";
  ss << "task_seed=" << task_seed << "\n";
  ss << "profile_splits=" << profile_splits << "\n";
  ss << "profile_ratio=" << format_double(profile_ratio) << "\n";
  ss << "margin=" << format_double(hyper.margin) << "\n";
  ss << "batch_size=" << hyper.batch_size << "\n";
  ss << "learning_rate=" << format_double(hyper.learning_rate) << "\n";
  ss << "max_epochs=" << hyper.max_epochs << "\n";
  ss << "repetitions=" << hyper.repetitions << "\n";
  ss << "split_ratio=" << format_double(hyper.split_ratio) << "\n";
  ss << "layer_counts=";
  for (size_t i = 0; i < layer_counts.size(); ++i) ss << (i ? "," : "") << layer_counts[i];
  ss << "\n";
  ss << "task_trials=" << task_trials << "\n";
  ss << "task1_model=" << recommender.task1_model << "\n";
  ss << "task1_feature=" << recommender.task1_feature << "\n";
  ss << "task2_model=" << recommender.task2_model << "\n";
  ss << "task2_feature=" << recommender.task2_feature << "\n";
  ss << "datasets=";
  for (size_t i = 0; i < dataset_filter.size(); ++i) ss << (i ? "," : "") << dataset_filter[i];
  ss << "\n";
  return ss.str();
}

uint64_t PipelineConfig::config_hash() const { return fnv1a(canonical_text()); }

const std::vector<std::string>& roster_names() {
  static const std::vector<std::string> names = {
      "blobs-2F-2C", "blobs-2F-3C", "blobs-2F-4C",
      "blobs-4F-2C", "blobs-4F-3C", "blobs-4F-4C",
      "circle-factor-0.5-2F-2C", "circle-factor-default-2F-2C",
      "moons-2F-2C", "XOR-2F-2C",
      "PIMA-8F-2C", "Iris", "Haberman", "Banknote"};
  return names;
}

Dataset make_named_dataset(const std::string& name, int n_samples, uint64_t seed) {
  Dataset ds;
  if (name == "blobs-2F-2C") ds = gen_blobs(2, 2, n_samples, 0.5, seed);
  else if (name == "blobs-2F-3C") ds = gen_blobs(2, 3, n_samples, 0.5, seed);
  else if (name == "blobs-2F-4C") ds = gen_blobs(2, 4, n_samples, 0.5, seed);
  else if (name == "blobs-4F-2C") ds = gen_blobs(4, 2, n_samples, 0.5, seed);
  else if (name == "blobs-4F-3C") ds = gen_blobs(4, 3, n_samples, 0.5, seed);
  else if (name == "blobs-4F-4C") ds = gen_blobs(4, 4, n_samples, 0.5, seed);
  else if (name == "circle-factor-0.5-2F-2C") ds = gen_circles(n_samples, 0.5, seed);
  else if (name == "circle-factor-default-2F-2C") ds = gen_circles(n_samples, 0.8, seed);
  else if (name == "moons-2F-2C") ds = gen_moons(n_samples, seed);
  else if (name == "XOR-2F-2C") ds = gen_xor(n_samples, seed);
  else if (name == "pima-like") ds = gen_pima_like(seed);
  else if (name == "banknote-like") ds = gen_banknote_like(seed);
  else if (name == "haberman-like") ds = gen_haberman_like(seed);
  else throw std::invalid_argument("unknown dataset name '" + name + "'");
  ds.name = name;
  return ds;
}

namespace {

int default_samples(const std::string& name) {
  if (name.rfind("blobs", 0) == 0) return 1000;
  if (name == "XOR-2F-2C") return 2000;
  return 100;  // circles, moons
}

}  // namespace

std::vector<Dataset> build_roster(const PipelineConfig& cfg) {
  std::vector<Dataset> roster;
  for (const std::string& name : roster_names()) {
    if (!cfg.dataset_filter.empty() &&
        std::find(cfg.dataset_filter.begin(), cfg.dataset_filter.end(), name) ==
            cfg.dataset_filter.end())
      continue;
    Dataset ds;
    if (name == "PIMA-8F-2C") {
      ds = load_csv(cfg.data_dir + "/pima.csv");
    } else if (name == "Iris") {
      ds = load_csv(cfg.data_dir + "/iris.csv");
      ds = filter_classes(ds, {0, 1});  // two-class reduction
    } else if (name == "Haberman") {
      ds = load_csv(cfg.data_dir + "/haberman.csv");
    } else if (name == "Banknote") {
      ds = load_csv(cfg.data_dir + "/banknote.csv");
    } else {
      ds = make_named_dataset(name, default_samples(name),
                              mix_seed(cfg.data_seed, {fnv1a(name)}));
    }
    ds.name = name;
    roster.push_back(std::move(ds));
  }
  if (roster.empty()) throw std::runtime_error("build_roster: empty dataset selection");
  return roster;
}

// ---------------------------------------------------------------------------
// Report files
// ---------------------------------------------------------------------------

void write_profiles_csv(const ProfileSet& profiles,
                        const std::vector<std::pair<std::string, int>>& raw_widths,
                        int n_splits, const std::string& path) {
  CsvTable t;
  t.header = {"dataset"};
  for (const auto& m : ComplexityProfile::measure_names()) t.header.push_back(m);
  t.header.push_back("n_splits_averaged");
  t.header.push_back("raw_features");
  for (const auto& [name, p] : profiles) {
    std::vector<std::string> row{name};
    for (double v : p.values()) row.push_back(format_double(v));
    row.push_back(std::to_string(n_splits));
    int width = 0;
    for (const auto& [n, w] : raw_widths)
      if (n == name) width = w;
    row.push_back(std::to_string(width));
    t.rows.push_back(std::move(row));
  }
  t.write(path);
}

ProfileSet read_profiles_csv(const std::string& path) {
  const CsvTable t = CsvTable::read(path);
  ProfileSet out;
  const auto& names = ComplexityProfile::measure_names();
  const int name_col = t.col("dataset");
  if (name_col < 0) throw std::runtime_error("profiles csv: missing dataset column");
  for (const auto& row : t.rows) {
    ComplexityProfile p;
    std::vector<double> vals(names.size());
    for (size_t i = 0; i < names.size(); ++i) {
      const int c = t.col(names[i]);
      if (c < 0) throw std::runtime_error("profiles csv: missing column " + names[i]);
      vals[i] = std::stod(row[c]);
    }
    p.f1 = vals[0]; p.f1v = vals[1]; p.f2 = vals[2]; p.f3 = vals[3]; p.f4 = vals[4];
    p.l1 = vals[5]; p.l2 = vals[6]; p.l3 = vals[7];
    p.n1 = vals[8]; p.n2 = vals[9]; p.n3 = vals[10]; p.n4 = vals[11];
    p.t1 = vals[12]; p.lsc = vals[13];
    p.density = vals[14]; p.cls_coef = vals[15]; p.hubs = vals[16];
    p.t2 = vals[17]; p.t3 = vals[18]; p.t4 = vals[19];
    p.c1 = vals[20]; p.c2 = vals[21];
    const int sc = t.col("n_splits_averaged");
    if (sc >= 0) p.n_splits_averaged = std::stoi(row[sc]);
    out.emplace_back(row[name_col], p);
  }
  return out;
}

void write_targets_csv(const std::vector<DatasetTargets>& targets, const std::string& path) {
  CsvTable t;
  t.header = {"dataset", "tied_best", "task1a_label", "task2_target"};
  for (const auto& tg : targets) {
    std::string tied;
    for (size_t i = 0; i < tg.tied_best.size(); ++i)
      tied += (i ? ";" : "") + layer_kind_id(tg.tied_best[i]);
    t.rows.push_back({tg.dataset, tied, layer_kind_id(tg.task1a_label),
                      std::to_string(tg.task2_target)});
  }
  t.write(path);
}

std::vector<DatasetTargets> read_targets_csv(const std::string& path) {
  const CsvTable t = CsvTable::read(path);
  std::vector<DatasetTargets> out;
  for (const auto& row : t.rows) {
    DatasetTargets tg;
    tg.dataset = row[0];
    std::stringstream ss(row[1]);
    std::string id;
    while (std::getline(ss, id, ';')) {
      const auto k = parse_layer_kind(id);
      if (!k) throw std::runtime_error("targets csv: bad layer kind '" + id + "'");
      tg.tied_best.push_back(*k);
    }
    const auto label = parse_layer_kind(row[2]);
    if (!label) throw std::runtime_error("targets csv: bad layer kind '" + row[2] + "'");
    tg.task1a_label = *label;
    tg.task2_target = std::stoi(row[3]);
    out.push_back(std::move(tg));
  }
  return out;
}

void write_task_report(const std::vector<TaskReportRow>& rows, const std::string& path,
                       const std::string& trials_path) {
  CsvTable t;
  t.header = {"model", "feature_set", "mean", "std", "min", "max"};
  for (const auto& r : rows)
    t.rows.push_back({r.model, r.feature_set, format_double(r.mean), format_double(r.stddev),
                      format_double(r.min), format_double(r.max)});
  t.write(path);

  CsvTable raw;
  raw.header = {"model", "feature_set", "trial", "value"};
  for (const auto& r : rows)
    for (size_t i = 0; i < r.trials.size(); ++i)
      raw.rows.push_back({r.model, r.feature_set, std::to_string(i),
                          format_double(r.trials[i])});
  raw.write(trials_path);
}

void write_scan_csv(const ScanResult& scan, const std::string& path) {
  CsvTable t;
  t.header = {"measure"};
  for (const auto& m : scan.models) t.header.push_back(m);
  for (size_t mi = 0; mi < scan.measures.size(); ++mi) {
    std::vector<std::string> row{scan.measures[mi]};
    for (size_t ki = 0; ki < scan.models.size(); ++ki)
      row.push_back(format_double(scan.score(mi, ki)));
    t.rows.push_back(std::move(row));
  }
  t.write(path);
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

bool all_exist(const std::vector<std::string>& paths) {
  for (const auto& p : paths)
    if (!fs::exists(p)) return false;
  return true;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg, bool resume) {
  cfg.hyper.validate();
  PipelineResult result;
  result.out_dir = cfg.out_dir;
  fs::create_directories(cfg.out_dir);
  fs::create_directories(cfg.out_dir + "/datasets");

  const std::string manifest_path = cfg.out_dir + "/manifest.json";
  const std::string hash = std::to_string(cfg.config_hash());
  bool manifest_matches = false;
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    nlohmann::json m = nlohmann::json::parse(in, nullptr, false);
    manifest_matches = !m.is_discarded() && m.value("config_hash", "") == hash;
  }
  const bool reuse = resume && manifest_matches;

  // Stage: datasets.
  std::vector<Dataset> roster = build_roster(cfg);
  std::vector<std::pair<std::string, int>> raw_widths;
  for (const Dataset& ds : roster) raw_widths.emplace_back(ds.name, ds.raw_feature_count);
  for (const Dataset& ds : roster) save_csv(ds, cfg.out_dir + "/datasets/" + ds.name + ".csv");

  // Stage: complexity profiles (on the raw, unpadded datasets).
  const std::string profiles_path = cfg.out_dir + "/profiles.csv";
  if (reuse && all_exist({profiles_path})) {
    result.profiles = read_profiles_csv(profiles_path);
  } else {
    for (const Dataset& ds : roster) {
      const ComplexityProfile p = profile(ds, cfg.profile_splits, cfg.profile_ratio,
                                          mix_seed(cfg.profile_seed, {fnv1a(ds.name)}));
      result.profiles.emplace_back(ds.name, p);
    }
    write_profiles_csv(result.profiles, raw_widths, cfg.profile_splits, profiles_path);
  }

  // Stage: quantum sweep.
  const std::string sweep_raw_path = cfg.out_dir + "/sweep_raw.csv";
  const std::string acc_path = cfg.out_dir + "/accuracy_table.csv";
  const std::string layers_path = cfg.out_dir + "/layers_table.csv";
  if (reuse && all_exist({sweep_raw_path, acc_path, layers_path})) {
    result.sweep = read_sweep_raw(sweep_raw_path);
  } else {
    const int threads = cfg.threads > 0
                            ? cfg.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    result.sweep = sweep(roster, kAllLayerKinds, cfg.layer_counts, cfg.hyper, cfg.sweep_seed,
                         threads);
    write_sweep_raw(result.sweep, sweep_raw_path);
    write_accuracy_table(result.sweep, acc_path);
    write_layers_table(result.sweep, layers_path);
  }

  // Stage: targets.
  std::map<std::string, int> qubits;
  for (const Dataset& ds : roster) qubits[ds.name] = qubit_count(ds.raw_feature_count);
  result.targets = derive_targets(result.sweep, qubits);
  write_targets_csv(result.targets, cfg.out_dir + "/targets.csv");

  // Stage: tasks (all 22 features).
  const MetaTable t1a = build_task1a_table(result.profiles, result.targets);
  const MetaTable t1b = build_task1b_table(result.profiles, result.targets);
  const MetaTable t2 = build_task2_table(result.profiles, result.targets);
  for (const auto& model : classifier_kind_names()) {
    result.task1a.push_back(run_task1(t1a, model, "ALL", cfg.task_trials,
                                      mix_seed(cfg.task_seed, {0x1a, fnv1a(model)}), 1, false));
    result.task1b.push_back(run_task1(t1b, model, "ALL", cfg.task_trials,
                                      mix_seed(cfg.task_seed, {0x1b, fnv1a(model)}), 2, true));
  }
  for (const auto& model : regressor_kind_names())
    result.task2.push_back(run_task2(t2, model, "ALL", cfg.task_trials,
                                     mix_seed(cfg.task_seed, {0x2, fnv1a(model)})));
  write_task_report(result.task1a, cfg.out_dir + "/task1a.csv",
                    cfg.out_dir + "/task1a_trials.csv");
  write_task_report(result.task1b, cfg.out_dir + "/task1b.csv",
                    cfg.out_dir + "/task1b_trials.csv");
  write_task_report(result.task2, cfg.out_dir + "/task2.csv",
                    cfg.out_dir + "/task2_trials.csv");

  // Stage: single-measure scans.
  result.scan1a = scan_task1(t1a, classifier_kind_names(), cfg.task_trials,
                             mix_seed(cfg.task_seed, {0x51a}), 1, false);
  result.scan1b = scan_task1(t1b, classifier_kind_names(), cfg.task_trials,
                             mix_seed(cfg.task_seed, {0x51b}), 2, true);
  result.scan2 = scan_task2(t2, regressor_kind_names(), cfg.task_trials,
                            mix_seed(cfg.task_seed, {0x52}));
  write_scan_csv(result.scan1a, cfg.out_dir + "/scan_task1a.csv");
  write_scan_csv(result.scan1b, cfg.out_dir + "/scan_task1b.csv");
  write_scan_csv(result.scan2, cfg.out_dir + "/scan_task2.csv");

  CsvTable best;
  best.header = {"task", "best_measure", "best_model", "score"};
  best.rows.push_back({"task1a", result.scan1a.best_measure, result.scan1a.best_model,
                       format_double(result.scan1a.best_score)});
  best.rows.push_back({"task1b", result.scan1b.best_measure, result.scan1b.best_model,
                       format_double(result.scan1b.best_score)});
  best.rows.push_back({"task2", result.scan2.best_measure, result.scan2.best_model,
                       format_double(result.scan2.best_score)});
  best.write(cfg.out_dir + "/scans_best.csv");

  // Manifest last, marking the run complete.
  nlohmann::ordered_json manifest;
  manifest["config_hash"] = hash;
  manifest["config"] = cfg.canonical_text();
  manifest["reports"] = {"profiles.csv",  "sweep_raw.csv",   "accuracy_table.csv",
                         "layers_table.csv", "targets.csv",  "task1a.csv",
                         "task1b.csv",    "task2.csv",       "scan_task1a.csv",
                         "scan_task1b.csv", "scan_task2.csv", "scans_best.csv"};
  std::ofstream mf(manifest_path);
  mf << manifest.dump(2) << "\n";
  return result;
}

}  // namespace qarp
