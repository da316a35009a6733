#include "qarp/sweep.hpp"

#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include "qarp/csv.hpp"
#include "qarp/rng.hpp"

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

bool skip_kind(const Dataset& ds, LayerKind kind) {
  return ds.raw_feature_count == 2 &&
         (kind == LayerKind::Circular || kind == LayerKind::Full);
}

void finalize_summary(SweepSummary& s, std::span<const int> layer_counts) {
  // Per (dataset, kind): max mean accuracy over layer counts, smallest
  // count on ties. Counts are scanned in the given (ascending) order.
  std::map<std::pair<std::string, LayerKind>, std::map<int, const SweepCell*>> grid;
  for (const SweepCell& c : s.cells)
    if (c.ok()) grid[{c.dataset, c.layer_kind}][c.n_layers] = &c;

  s.best.assign(s.datasets.size(), std::vector<SweepBest>(s.kinds.size()));
  for (size_t d = 0; d < s.datasets.size(); ++d)
    for (size_t k = 0; k < s.kinds.size(); ++k) {
      auto it = grid.find({s.datasets[d], s.kinds[k]});
      if (it == grid.end()) continue;
      SweepBest best;
      for (int count : layer_counts) {
        auto cit = it->second.find(count);
        if (cit == it->second.end()) continue;
        if (!best.present || cit->second->mean > best.accuracy) {
          best.present = true;
          best.accuracy = cit->second->mean;
          best.n_layers = count;
        }
      }
      s.best[d][k] = best;
    }
}

}  // namespace

const SweepBest& SweepSummary::at(const std::string& dataset, LayerKind kind) const {
  for (size_t d = 0; d < datasets.size(); ++d) {
    if (datasets[d] != dataset) continue;
    for (size_t k = 0; k < kinds.size(); ++k)
      if (kinds[k] == kind) return best[d][k];
  }
  throw std::out_of_range("sweep summary has no cell (" + dataset + ", " +
                          layer_kind_name(kind) + ")");
}

SweepSummary sweep(const std::vector<Dataset>& datasets, std::span<const LayerKind> kinds,
                   std::span<const int> layer_counts, const Hyperparams& hyper, uint64_t seed,
                   int n_threads) {
  hyper.validate();
  SweepSummary summary;
  for (const Dataset& ds : datasets) summary.datasets.push_back(ds.name);
  summary.kinds.assign(kinds.begin(), kinds.end());

  std::vector<Dataset> prepared;
  prepared.reserve(datasets.size());
  for (const Dataset& ds : datasets) prepared.push_back(prepare_for_circuit(ds));

  struct Job {
    size_t cell;
    int dataset;
    LayerKind kind;
    int n_layers;
    int rep;
  };
  std::vector<Job> jobs;
  for (size_t d = 0; d < datasets.size(); ++d)
    for (LayerKind kind : kinds) {
      if (skip_kind(datasets[d], kind)) continue;
      for (int count : layer_counts) {
        SweepCell cell;
        cell.dataset = datasets[d].name;
        cell.layer_kind = kind;
        cell.n_layers = count;
        cell.rep_max_accuracy.assign(hyper.repetitions, -1.0);
        const size_t cell_idx = summary.cells.size();
        summary.cells.push_back(std::move(cell));
        for (int rep = 0; rep < hyper.repetitions; ++rep)
          jobs.push_back({cell_idx, static_cast<int>(d), kind, count, rep});
      }
    }

  // Per-repetition seeds depend only on (dataset name, kind, count, rep),
  // never on scheduling, so any thread count gives identical results.
  std::atomic<size_t> next{0};
  std::vector<std::string> job_errors(jobs.size());
  auto worker = [&]() {
    for (size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
      const Job& job = jobs[j];
      const Dataset& ds = prepared[job.dataset];
      const uint64_t rep_seed =
          mix_seed(seed, {fnv1a(ds.name), static_cast<uint64_t>(job.kind),
                          static_cast<uint64_t>(job.n_layers), 0x4e9,
                          static_cast<uint64_t>(job.rep)});
      CircuitSpec spec{job.kind, qubit_count(datasets[job.dataset].raw_feature_count),
                       job.n_layers};
      try {
        const TrainTrace t = train(ds, spec, hyper, rep_seed);
        summary.cells[job.cell].rep_max_accuracy[job.rep] = t.max_accuracy;
      } catch (const std::exception& e) {
        job_errors[j] = e.what();
      }
    }
  };

  const int workers = std::max(1, n_threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t j = 0; j < jobs.size(); ++j)
    if (!job_errors[j].empty() && summary.cells[jobs[j].cell].error.empty())
      summary.cells[jobs[j].cell].error =
          "rep " + std::to_string(jobs[j].rep) + ": " + job_errors[j];
  for (SweepCell& cell : summary.cells) {
    if (!cell.ok()) continue;
    cell.mean = mean_of(cell.rep_max_accuracy);
    cell.stddev = stddev_of(cell.rep_max_accuracy);
  }
  finalize_summary(summary, layer_counts);
  return summary;
}

void write_sweep_raw(const SweepSummary& s, const std::string& path) {
  CsvTable t;
  t.header = {"dataset", "layer_kind", "n_layers", "rep", "max_test_accuracy", "error"};
  for (const SweepCell& c : s.cells) {
    if (!c.ok()) {
      t.rows.push_back({c.dataset, layer_kind_id(c.layer_kind), std::to_string(c.n_layers), "-",
                        "-", c.error});
      continue;
    }
    for (size_t r = 0; r < c.rep_max_accuracy.size(); ++r)
      t.rows.push_back({c.dataset, layer_kind_id(c.layer_kind), std::to_string(c.n_layers),
                        std::to_string(r), format_double(c.rep_max_accuracy[r]), ""});
  }
  t.write(path);
}

namespace {

void write_best_table(const SweepSummary& s, const std::string& path, bool accuracy) {
  CsvTable t;
  t.header.push_back("dataset");
  for (LayerKind k : s.kinds) t.header.push_back(layer_kind_name(k));
  for (size_t d = 0; d < s.datasets.size(); ++d) {
    std::vector<std::string> row{s.datasets[d]};
    for (size_t k = 0; k < s.kinds.size(); ++k) {
      const SweepBest& b = s.best[d][k];
      if (!b.present)
        row.push_back("-");
      else
        row.push_back(accuracy ? format_fixed(b.accuracy, 4) : std::to_string(b.n_layers));
    }
    t.rows.push_back(std::move(row));
  }
  t.write(path);
}

}  // namespace

void write_accuracy_table(const SweepSummary& s, const std::string& path) {
  write_best_table(s, path, true);
}

void write_layers_table(const SweepSummary& s, const std::string& path) {
  write_best_table(s, path, false);
}

SweepSummary read_sweep_raw(const std::string& path) {
  const CsvTable t = CsvTable::read(path);
  const int cd = t.col("dataset"), ck = t.col("layer_kind"), cl = t.col("n_layers"),
            cr = t.col("rep"), ca = t.col("max_test_accuracy"), ce = t.col("error");
  if (cd < 0 || ck < 0 || cl < 0 || cr < 0 || ca < 0 || ce < 0)
    throw std::runtime_error("read_sweep_raw: '" + path + "' missing expected columns");

  SweepSummary s;
  std::map<std::pair<std::string, std::pair<std::string, int>>, size_t> index;
  std::vector<int> counts_seen;
  for (const auto& row : t.rows) {
    const std::string& name = row[cd];
    const auto kind = parse_layer_kind(row[ck]);
    if (!kind) throw std::runtime_error("read_sweep_raw: unknown layer kind '" + row[ck] + "'");
    const int n_layers = std::stoi(row[cl]);
    auto key = std::make_pair(name, std::make_pair(row[ck], n_layers));
    auto it = index.find(key);
    if (it == index.end()) {
      SweepCell cell;
      cell.dataset = name;
      cell.layer_kind = *kind;
      cell.n_layers = n_layers;
      it = index.emplace(key, s.cells.size()).first;
      s.cells.push_back(std::move(cell));
      if (std::find(s.datasets.begin(), s.datasets.end(), name) == s.datasets.end())
        s.datasets.push_back(name);
      if (std::find(s.kinds.begin(), s.kinds.end(), *kind) == s.kinds.end())
        s.kinds.push_back(*kind);
      if (std::find(counts_seen.begin(), counts_seen.end(), n_layers) == counts_seen.end())
        counts_seen.push_back(n_layers);
    }
    SweepCell& cell = s.cells[it->second];
    if (!row[ce].empty())
      cell.error = row[ce];
    else
      cell.rep_max_accuracy.push_back(std::stod(row[ca]));
  }
  for (SweepCell& cell : s.cells) {
    if (!cell.ok()) continue;
    cell.mean = mean_of(cell.rep_max_accuracy);
    cell.stddev = stddev_of(cell.rep_max_accuracy);
  }
  std::sort(counts_seen.begin(), counts_seen.end());
  finalize_summary(s, counts_seen);
  return s;
}

}  // namespace qarp
