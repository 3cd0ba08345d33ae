#include "equidep/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "equidep/parallel.hpp"

namespace equidep::scan {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == delimiter) {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool kind_in(const std::vector<std::string>& kinds, const std::string& k) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

bool is_constant(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != v[0]) return false;
  return true;
}

}  // namespace

Table parse_table(std::istream& in, const std::vector<std::string>& missing_markers,
                  char delimiter) {
  Table table;
  std::string line;
  std::size_t line_no = 0;

  // header
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    break;
  }
  if (line.empty() && !in) throw std::runtime_error("table: missing header row");
  table.names = split_line(line, delimiter);
  if (table.names.size() < 2) throw std::runtime_error("table: need at least 2 columns");
  for (std::size_t i = 0; i < table.names.size(); ++i)
    for (std::size_t j = i + 1; j < table.names.size(); ++j)
      if (table.names[i] == table.names[j])
        throw std::runtime_error("table: duplicate column name '" + table.names[i] + "'");
  table.columns.assign(table.names.size(), {});

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_line(line, delimiter);
    if (cells.size() != table.names.size()) {
      std::ostringstream msg;
      msg << "table: row " << line_no << " has " << cells.size() << " cells, expected "
          << table.names.size();
      throw std::runtime_error(msg.str());
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      if (std::find(missing_markers.begin(), missing_markers.end(), cell) !=
          missing_markers.end()) {
        table.columns[c].push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        std::ostringstream msg;
        msg << "table: cannot parse '" << cell << "' at row " << line_no << ", column '"
            << table.names[c] << "'";
        throw std::runtime_error(msg.str());
      }
      table.columns[c].push_back(v);
    }
  }
  return table;
}

Table load_table(const std::string& path, const std::vector<std::string>& missing_markers,
                 char delimiter) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return parse_table(in, missing_markers, delimiter);
}

ScanResult pairwise_scan(const Table& table, const std::vector<std::string>& kinds,
                         std::size_t min_n, int workers, const MeasureParams& params) {
  if (min_n < 2) throw std::invalid_argument("pairwise_scan: need min_n >= 2");
  if (table.n_cols() < 2) throw std::invalid_argument("pairwise_scan: need at least 2 columns");
  for (const auto& k : kinds)
    if (!is_measure_kind(k)) throw std::invalid_argument("pairwise_scan: unknown kind " + k);

  // ccor and pearson anchor the nonlinearity score and always come first
  std::vector<std::string> all_kinds = {"ccor", "pearson"};
  for (const auto& k : kinds)
    if (!kind_in(all_kinds, k)) all_kinds.push_back(k);

  // canonical pair order, independent of the file's column order
  std::vector<std::size_t> by_name(table.n_cols());
  for (std::size_t i = 0; i < by_name.size(); ++i) by_name[i] = i;
  std::sort(by_name.begin(), by_name.end(),
            [&](std::size_t a, std::size_t b) { return table.names[a] < table.names[b]; });

  struct Pair {
    std::size_t a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < by_name.size(); ++i)
    for (std::size_t j = i + 1; j < by_name.size(); ++j)
      pairs.push_back({by_name[i], by_name[j]});

  struct Slot {
    bool kept = false;
    ScanRow row;
  };
  std::vector<Slot> slots(pairs.size());

  parallel_for(pairs.size(), workers, [&](std::size_t idx) {
    const auto [ca, cb] = pairs[idx];
    const std::vector<double>& colx = table.columns[ca];
    const std::vector<double>& coly = table.columns[cb];
    std::vector<double> xs, ys;
    xs.reserve(colx.size());
    ys.reserve(colx.size());
    for (std::size_t r = 0; r < colx.size(); ++r) {
      if (std::isnan(colx[r]) || std::isnan(coly[r])) continue;
      xs.push_back(colx[r]);
      ys.push_back(coly[r]);
    }
    if (xs.size() < min_n) return;

    Slot& slot = slots[idx];
    slot.kept = true;
    slot.row.var_a = table.names[ca];
    slot.row.var_b = table.names[cb];
    slot.row.n_common = xs.size();
    slot.row.measures.assign(all_kinds.size(), 0.0);
    slot.row.degenerate = is_constant(xs) || is_constant(ys);
    if (slot.row.degenerate) {
      // zero rank variance: report the pair with all measures zero
      slot.row.ccor_minus_abs_rho = 0.0;
      return;
    }
    const Sample sample(std::move(xs), std::move(ys));
    const auto results = compute_measures(all_kinds, sample, params);
    double ccor = 0.0, rho = 0.0;
    for (std::size_t k = 0; k < results.size(); ++k) {
      slot.row.measures[k] = results[k].value;
      if (all_kinds[k] == "ccor") ccor = results[k].value;
      if (all_kinds[k] == "pearson") rho = results[k].value;
    }
    slot.row.ccor_minus_abs_rho = ccor - std::fabs(rho);
  });

  ScanResult out;
  out.kinds = std::move(all_kinds);
  out.pairs_total = pairs.size();
  out.pairs_skipped = 0;
  out.degenerate_pairs = 0;
  for (auto& slot : slots) {
    if (!slot.kept) {
      ++out.pairs_skipped;
      continue;
    }
    if (slot.row.degenerate) ++out.degenerate_pairs;
    out.rows.push_back(std::move(slot.row));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const ScanRow& a, const ScanRow& b) {
    if (a.var_a != b.var_a) return a.var_a < b.var_a;
    return a.var_b < b.var_b;
  });
  return out;
}

std::vector<ScanRow> rank_nonlinear(std::vector<ScanRow> rows, std::size_t top_k) {
  std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    if (a.ccor_minus_abs_rho != b.ccor_minus_abs_rho)
      return a.ccor_minus_abs_rho > b.ccor_minus_abs_rho;
    if (a.var_a != b.var_a) return a.var_a < b.var_a;
    return a.var_b < b.var_b;
  });
  if (rows.size() > top_k) rows.resize(top_k);
  return rows;
}

void write_scan_csv(std::ostream& out, const ScanResult& result) {
  out << "# equidep 0.1.0\n";
  out << "var_a,var_b,n_common";
  for (const auto& k : result.kinds) out << ',' << k;
  out << ",ccor_minus_abs_rho\n";
  for (const auto& row : result.rows) {
    out << row.var_a << ',' << row.var_b << ',' << row.n_common;
    for (double v : row.measures) out << ',' << format_sig6(v);
    out << ',' << format_sig6(row.ccor_minus_abs_rho) << '\n';
  }
}

}  // namespace equidep::scan
