#include "qarp/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qarp {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return errno == 0 && end == t.c_str() + t.size();
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 std::optional<PadSpec> pad) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_csv: '" + path + "' is empty");
  const auto header = split_line(line);
  int label_idx = -1;
  for (size_t i = 0; i < header.size(); ++i)
    if (trim(header[i]) == label_column) label_idx = static_cast<int>(i);
  if (label_idx < 0)
    throw std::runtime_error("load_csv: '" + path + "' has no column '" + label_column + "'");
  const int n_features = static_cast<int>(header.size()) - 1;
  if (n_features < 1) throw std::runtime_error("load_csv: '" + path + "' has no feature columns");

  std::vector<std::vector<double>> feats;
  std::vector<std::string> raw_labels;
  int row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error("load_csv: row " + std::to_string(row_no) + " of '" + path +
                               "' has " + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(header.size()));
    std::vector<double> fr;
    fr.reserve(n_features);
    for (size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<int>(c) == label_idx) continue;
      double v;
      if (!parse_number(cells[c], v))
        throw std::runtime_error("load_csv: row " + std::to_string(row_no) + ", column '" +
                                 trim(header[c]) + "' of '" + path + "': not a number: '" +
                                 trim(cells[c]) + "'");
      fr.push_back(v);
    }
    feats.push_back(std::move(fr));
    raw_labels.push_back(trim(cells[label_idx]));
  }
  if (feats.empty()) throw std::runtime_error("load_csv: '" + path + "' has no data rows");

  // Label encoding: keep an existing dense 0..k-1 integer coding, otherwise
  // densify (numerics by value, strings by first appearance).
  std::vector<int> labels(raw_labels.size());
  bool all_int = true;
  std::vector<long> as_int(raw_labels.size());
  for (size_t i = 0; i < raw_labels.size() && all_int; ++i) {
    const std::string& s = raw_labels[i];
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), as_int[i]);
    all_int = ec == std::errc{} && p == s.data() + s.size();
  }
  int n_classes = 0;
  if (all_int) {
    std::vector<long> uniq(as_int);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    const bool dense = uniq.front() == 0 && uniq.back() == static_cast<long>(uniq.size()) - 1;
    std::map<long, int> code;
    for (size_t i = 0; i < uniq.size(); ++i) code[uniq[i]] = static_cast<int>(i);
    for (size_t i = 0; i < as_int.size(); ++i)
      labels[i] = dense ? static_cast<int>(as_int[i]) : code[as_int[i]];
    n_classes = static_cast<int>(uniq.size());
  } else {
    std::map<std::string, int> code;
    for (size_t i = 0; i < raw_labels.size(); ++i) {
      auto it = code.find(raw_labels[i]);
      if (it == code.end()) it = code.emplace(raw_labels[i], static_cast<int>(code.size())).first;
      labels[i] = it->second;
    }
    n_classes = static_cast<int>(code.size());
  }

  Dataset ds;
  ds.name = path;
  const auto slash = path.find_last_of('/');
  const auto base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  ds.name = dot == std::string::npos ? base : base.substr(0, dot);
  ds.n_classes = n_classes;
  ds.raw_feature_count = n_features;
  ds.features.resize(feats.size(), n_features);
  for (size_t i = 0; i < feats.size(); ++i)
    for (int f = 0; f < n_features; ++f) ds.features(i, f) = feats[i][f];
  ds.labels = std::move(labels);
  ds.validate();
  if (pad) ds = pad_features(ds, pad->target_width, pad->value);
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open '" + path + "' for writing");
  for (int f = 0; f < ds.n_features(); ++f) out << "f" << f << ",";
  out << "label\n";
  for (int i = 0; i < ds.n_samples(); ++i) {
    for (int f = 0; f < ds.n_features(); ++f) out << format_double(ds.features(i, f)) << ",";
    out << ds.labels[i] << "\n";
  }
  if (!out) throw std::runtime_error("save_csv: write to '" + path + "' failed");
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("CsvTable: cannot open '" + path + "' for writing");
  for (size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  if (!out) throw std::runtime_error("CsvTable: write to '" + path + "' failed");
}

CsvTable CsvTable::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("CsvTable: cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CsvTable: '" + path + "' is empty");
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    t.rows.push_back(split_line(line));
  }
  return t;
}

int CsvTable::col(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::string format_double(double v) {
  // Shortest representation that parses back to the same double.
  for (int prec = 15; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return "0";  // unreachable for finite v
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace qarp
