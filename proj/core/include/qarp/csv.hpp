#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qarp/dataset.hpp"

namespace qarp {

struct PadSpec {
  int target_width = 0;
  double value = 0.1;
};

/// Reads a dataset from CSV: header row of feature names plus a label
/// column, '.' decimal separator. Integer label values that already form
/// 0..k-1 are kept; any other values (or strings) become dense integers,
/// numerics by sorted value, strings by first appearance. With a PadSpec,
/// constant columns are appended up to the target width.
Dataset load_csv(const std::string& path, const std::string& label_column = "label",
                 std::optional<PadSpec> pad = std::nullopt);

/// Writes header (feature names, then `label`) and data rows. Doubles are
/// printed with enough digits to round-trip exactly.
void save_csv(const Dataset& ds, const std::string& path);

/// Minimal string-cell CSV used by the report writers/readers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(const std::string& path) const;
  static CsvTable read(const std::string& path);

  int col(const std::string& name) const;  // -1 when absent
};

std::string format_double(double v);                 // shortest exact form
std::string format_fixed(double v, int digits = 4);  // display tables

}  // namespace qarp
