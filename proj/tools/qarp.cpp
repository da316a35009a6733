// Command-line front end for the circuit-recommendation toolkit.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <thread>

#include "qarp/csv.hpp"
#include "qarp/generators.hpp"
#include "qarp/learners.hpp"
#include "qarp/pipeline.hpp"
#include "qarp/rng.hpp"

using namespace qarp;

namespace {

PipelineConfig load_config(const std::string& path, const std::string& out_dir) {
  PipelineConfig cfg =
      path.empty() ? PipelineConfig{} : PipelineConfig::from_file(path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuit architecture recommendation toolkit"};
  app.require_subcommand(1);

  // gen-data
  std::string gd_dataset, gd_out;
  int gd_samples = 0;
  uint64_t gd_seed = 0;
  auto* gen = app.add_subcommand("gen-data", "Generate one synthetic dataset as CSV");
  gen->add_option("--dataset", gd_dataset, "Dataset name (e.g. blobs-2F-2C, XOR-2F-2C)")
      ->required();
  gen->add_option("--samples", gd_samples, "Sample count (0 = published default)");
  gen->add_option("--seed", gd_seed, "Generator seed")->required();
  gen->add_option("--out", gd_out, "Output CSV path")->required();

  // complexity
  std::string cx_in, cx_out;
  int cx_splits = 10;
  uint64_t cx_seed = 0;
  double cx_ratio = 0.7;
  auto* cx = app.add_subcommand("complexity", "Compute the 22-measure complexity profile");
  cx->add_option("--in", cx_in, "Input dataset CSV")->required();
  cx->add_option("--splits", cx_splits, "Training splits to average over");
  cx->add_option("--ratio", cx_ratio, "Training fraction per split");
  cx->add_option("--seed", cx_seed, "Split seed");
  cx->add_option("--out", cx_out, "Output profile CSV")->required();

  // sweep / tasks / scan / pipeline share config handling
  std::string sw_config, sw_out;
  auto* sw = app.add_subcommand("sweep", "Train every (dataset, layer, count) configuration");
  sw->add_option("--config", sw_config, "Run configuration file");
  sw->add_option("--out", sw_out, "Output directory");

  std::string tk_config, tk_out;
  auto* tk = app.add_subcommand("tasks", "Run recommendation tasks from sweep outputs");
  tk->add_option("--config", tk_config, "Run configuration file");
  tk->add_option("--out", tk_out, "Results directory holding sweep outputs");

  std::string sc_config, sc_out;
  auto* sc = app.add_subcommand("scan", "Per-measure scan of every task");
  sc->add_option("--config", sc_config, "Run configuration file");
  sc->add_option("--out", sc_out, "Results directory holding sweep outputs");

  std::string pl_config, pl_out;
  bool pl_resume = false;
  auto* pl = app.add_subcommand("pipeline", "Full run: data, profiles, sweep, tasks, scans");
  pl->add_option("--config", pl_config, "Run configuration file");
  pl->add_option("--out", pl_out, "Output directory (overrides config)");
  pl->add_flag("--resume", pl_resume, "Reuse completed stage outputs");

  // recommend
  std::string rc_profile, rc_results, rc_config;
  auto* rc = app.add_subcommand("recommend", "Recommend a circuit for a complexity profile");
  rc->add_option("--profile", rc_profile, "Profile CSV (one row, complexity output)")
      ->required();
  rc->add_option("--results", rc_results, "Results directory of a finished pipeline run")
      ->required();
  rc->add_option("--config", rc_config, "Run configuration file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const int samples = gd_samples > 0 ? gd_samples : 0;
      Dataset ds = samples > 0 ? make_named_dataset(gd_dataset, samples, gd_seed)
                               : [&] {
                                   PipelineConfig cfg;
                                   cfg.data_seed = gd_seed;
                                   cfg.dataset_filter = {gd_dataset};
                                   return build_roster(cfg).front();
                                 }();
      save_csv(ds, gd_out);
      std::cout << "wrote " << gd_out << " (" << ds.n_samples() << " x " << ds.n_features()
                << ", " << ds.n_classes << " classes)\n";
    } else if (*cx) {
      const Dataset ds = load_csv(cx_in);
      const ComplexityProfile p = profile(ds, cx_splits, cx_ratio, cx_seed);
      write_profiles_csv({{ds.name, p}}, {{ds.name, ds.raw_feature_count}}, cx_splits, cx_out);
      std::cout << "wrote " << cx_out << "\n";
    } else if (*sw) {
      PipelineConfig cfg = load_config(sw_config, sw_out);
      std::filesystem::create_directories(cfg.out_dir);
      const auto roster = build_roster(cfg);
      const int threads = cfg.threads > 0
                              ? cfg.threads
                              : std::max(1u, std::thread::hardware_concurrency());
      const SweepSummary s =
          sweep(roster, kAllLayerKinds, cfg.layer_counts, cfg.hyper, cfg.sweep_seed, threads);
      write_sweep_raw(s, cfg.out_dir + "/sweep_raw.csv");
      write_accuracy_table(s, cfg.out_dir + "/accuracy_table.csv");
      write_layers_table(s, cfg.out_dir + "/layers_table.csv");
      std::cout << "wrote sweep tables under " << cfg.out_dir << "\n";
    } else if (*tk || *sc) {
      PipelineConfig cfg = load_config(*tk ? tk_config : sc_config, *tk ? tk_out : sc_out);
      const ProfileSet profiles = read_profiles_csv(cfg.out_dir + "/profiles.csv");
      const SweepSummary s = read_sweep_raw(cfg.out_dir + "/sweep_raw.csv");
      std::map<std::string, int> qubits;
      const CsvTable pt = CsvTable::read(cfg.out_dir + "/profiles.csv");
      const int wcol = pt.col("raw_features");
      for (const auto& row : pt.rows)
        qubits[row[0]] = qubit_count(wcol >= 0 ? std::stoi(row[wcol]) : 4);
      const auto targets = derive_targets(s, qubits);
      write_targets_csv(targets, cfg.out_dir + "/targets.csv");
      const MetaTable t1a = build_task1a_table(profiles, targets);
      const MetaTable t1b = build_task1b_table(profiles, targets);
      const MetaTable t2 = build_task2_table(profiles, targets);
      if (*tk) {
        std::vector<TaskReportRow> r1a, r1b, r2;
        for (const auto& model : classifier_kind_names()) {
          r1a.push_back(run_task1(t1a, model, "ALL", cfg.task_trials,
                                  mix_seed(cfg.task_seed, {0x1a}), 1, false));
          r1b.push_back(run_task1(t1b, model, "ALL", cfg.task_trials,
                                  mix_seed(cfg.task_seed, {0x1b}), 2, true));
        }
        for (const auto& model : regressor_kind_names())
          r2.push_back(run_task2(t2, model, "ALL", cfg.task_trials,
                                 mix_seed(cfg.task_seed, {0x2})));
        write_task_report(r1a, cfg.out_dir + "/task1a.csv", cfg.out_dir + "/task1a_trials.csv");
        write_task_report(r1b, cfg.out_dir + "/task1b.csv", cfg.out_dir + "/task1b_trials.csv");
        write_task_report(r2, cfg.out_dir + "/task2.csv", cfg.out_dir + "/task2_trials.csv");
        std::cout << "wrote task reports under " << cfg.out_dir << "\n";
      } else {
        const auto s1a = scan_task1(t1a, classifier_kind_names(), cfg.task_trials,
                                    mix_seed(cfg.task_seed, {0x51a}), 1, false);
        const auto s1b = scan_task1(t1b, classifier_kind_names(), cfg.task_trials,
                                    mix_seed(cfg.task_seed, {0x51b}), 2, true);
        const auto s2 = scan_task2(t2, regressor_kind_names(), cfg.task_trials,
                                   mix_seed(cfg.task_seed, {0x52}));
        write_scan_csv(s1a, cfg.out_dir + "/scan_task1a.csv");
        write_scan_csv(s1b, cfg.out_dir + "/scan_task1b.csv");
        write_scan_csv(s2, cfg.out_dir + "/scan_task2.csv");
        std::cout << "task1b best: " << s1b.best_measure << " + " << s1b.best_model << " = "
                  << s1b.best_score << "\n";
        std::cout << "task2 best: " << s2.best_measure << " + " << s2.best_model << " = "
                  << s2.best_score << "\n";
      }
    } else if (*pl) {
      PipelineConfig cfg = load_config(pl_config, pl_out);
      run_pipeline(cfg, pl_resume);
      std::cout << "pipeline complete; reports under " << cfg.out_dir << "\n";
    } else if (*rc) {
      PipelineConfig cfg = load_config(rc_config, rc_results);
      const ProfileSet profiles = read_profiles_csv(cfg.out_dir + "/profiles.csv");
      const auto targets = read_targets_csv(cfg.out_dir + "/targets.csv");
      const MetaTable t1b = build_task1b_table(profiles, targets);
      const MetaTable t2 = build_task2_table(profiles, targets);
      const ProfileSet query = read_profiles_csv(rc_profile);
      for (const auto& [name, p] : query) {
        const Recommendation rec =
            recommend(p, t1b, t2, cfg.recommender, cfg.task_seed);
        std::cout << name << ": " << layer_kind_name(rec.layer_kind) << ", "
                  << rec.n_layers << " layer(s) [raw " << rec.raw_layer_prediction << "]\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
