#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "equidep/measures.hpp"

namespace equidep::scan {

// Columnar numeric table; missing cells are stored as NaN.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t n_cols() const { return columns.size(); }
};

// Parses delimited text with a header row. Cells matching one of
// `missing_markers` become NaN; any other non-numeric cell is an error
// naming the row and column. Lines starting with '#' are skipped.
Table load_table(const std::string& path,
                 const std::vector<std::string>& missing_markers = {"", "NA"},
                 char delimiter = ',');

Table parse_table(std::istream& in, const std::vector<std::string>& missing_markers = {"", "NA"},
                  char delimiter = ',');

struct ScanRow {
  std::string var_a;
  std::string var_b;
  std::size_t n_common;
  std::vector<double> measures;        // aligned with ScanResult::kinds
  double ccor_minus_abs_rho;
  bool degenerate;                     // a constant column made the pair undefined
};

struct ScanResult {
  std::vector<std::string> kinds;      // ccor and pearson always included
  std::vector<ScanRow> rows;           // sorted by (var_a, var_b)
  std::size_t pairs_total;
  std::size_t pairs_skipped;           // below the min_n common-observation filter
  std::size_t degenerate_pairs;
};

// Complete-case pairwise scan: for every unordered column pair, drops rows
// where either value is missing, skips the pair when fewer than min_n
// observations remain, and computes the requested measures otherwise.
// Output is deterministic and independent of the worker count and of the
// input column order.
ScanResult pairwise_scan(const Table& table, const std::vector<std::string>& kinds,
                         std::size_t min_n, int workers = 0, const MeasureParams& params = {});

// Rows sorted descending by ccor - |pearson|, ties broken by (var_a, var_b),
// truncated to top_k.
std::vector<ScanRow> rank_nonlinear(std::vector<ScanRow> rows, std::size_t top_k);

void write_scan_csv(std::ostream& out, const ScanResult& result);

}  // namespace equidep::scan
