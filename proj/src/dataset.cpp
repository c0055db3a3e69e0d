#include "srl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "srl/errors.hpp"

namespace srl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

/// Minimal decimal rendering: integers without a fractional part,
/// otherwise shortest %g form ("age>=26", "x>=20.8").
std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Empirical quantile by linear interpolation of the CDF at p_j = j/n.
double empirical_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  const double h = q * static_cast<double>(n);
  if (h <= 1.0) return sorted.front();
  if (h >= static_cast<double>(n)) return sorted.back();
  const auto j = static_cast<std::size_t>(h);
  const double g = h - static_cast<double>(j);
  if (g == 0.0) return sorted[j - 1];
  return sorted[j - 1] + g * (sorted[j] - sorted[j - 1]);
}

std::uint8_t parse_label_cell(const std::string& cell, std::size_t line_no,
                              const std::string& column) {
  if (cell == "0" || cell == "1") return static_cast<std::uint8_t>(cell[0] - '0');
  double v;
  if (parse_double(cell, v) && (v == 0.0 || v == 1.0))
    return static_cast<std::uint8_t>(v);
  throw FormatError("label column '" + column + "' has non-binary value '" +
                    cell + "' at line " + std::to_string(line_no));
}

}  // namespace

BinaryDataset::BinaryDataset(std::vector<BitVector> columns, BitVector labels,
                             std::vector<std::string> feature_names)
    : n_(labels.size()),
      columns_(std::move(columns)),
      labels_(std::move(labels)),
      names_(std::move(feature_names)) {
  if (n_ == 0) throw std::invalid_argument("dataset must have n >= 1");
  if (columns_.empty()) throw std::invalid_argument("dataset must have d >= 1");
  if (names_.size() != columns_.size())
    throw std::invalid_argument("feature_names size must equal column count");
  for (const auto& c : columns_)
    if (c.size() != n_)
      throw std::invalid_argument("all columns must have n entries");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_)
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate feature name '" + name + "'");
}

std::vector<std::size_t> BinaryDataset::constant_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const std::size_t c = columns_[j].count();
    if (c == 0 || c == n_) out.push_back(j);
  }
  return out;
}

std::vector<std::uint8_t> BinaryDataset::row(std::size_t i) const {
  std::vector<std::uint8_t> r(d());
  for (std::size_t j = 0; j < d(); ++j) r[j] = columns_[j].test(i) ? 1 : 0;
  return r;
}

BinaryDataset load_binary_csv(const std::string& path,
                              const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file '" + path + "'");
  const auto header = split_csv_line(line);

  std::size_t label_idx = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_idx = j;
  if (label_idx == header.size())
    throw FormatError("label column '" + label_column + "' not found in '" +
                      path + "'");
  if (header.size() < 2)
    throw FormatError("dataset '" + path + "' has no feature columns");

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) names.push_back(header[j]);

  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::uint8_t> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw FormatError("line " + std::to_string(line_no) + " in '" + path +
                        "' has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    std::vector<std::uint8_t> row;
    row.reserve(header.size() - 1);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string& cell = cells[j];
      if (cell != "0" && cell != "1")
        throw FormatError("non-binary cell '" + cell + "' at line " +
                          std::to_string(line_no) + ", column '" + header[j] +
                          "' in '" + path + "'");
      const auto bit = static_cast<std::uint8_t>(cell[0] - '0');
      if (j == label_idx)
        labels.push_back(bit);
      else
        row.push_back(bit);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("dataset '" + path + "' has no rows");

  const std::size_t n = rows.size();
  const std::size_t d = names.size();
  std::vector<BitVector> columns(d, BitVector(n));
  BitVector label_bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      if (rows[i][j]) columns[j].set(i);
    if (labels[i]) label_bits.set(i);
  }
  return BinaryDataset(std::move(columns), std::move(label_bits),
                       std::move(names));
}

ContinuousTable load_table_csv(const std::string& path,
                               const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty file '" + path + "'");
  const auto header = split_csv_line(line);

  std::size_t label_idx = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_idx = j;
  if (label_idx == header.size())
    throw FormatError("label column '" + label_column + "' not found in '" +
                      path + "'");

  std::vector<std::vector<std::string>> raw_columns(header.size());
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw FormatError("line " + std::to_string(line_no) + " in '" + path +
                        "' has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    for (std::size_t j = 0; j < cells.size(); ++j)
      raw_columns[j].push_back(cells[j]);
  }
  if (raw_columns[label_idx].empty())
    throw FormatError("dataset '" + path + "' has no rows");

  ContinuousTable table;
  table.label_name = header[label_idx];
  for (std::size_t i = 0; i < raw_columns[label_idx].size(); ++i)
    table.label_values.push_back(
        parse_label_cell(raw_columns[label_idx][i], i + 2, table.label_name));

  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j == label_idx) continue;
    ContinuousTable::Column col;
    col.name = header[j];
    col.numeric = true;
    for (const auto& cell : raw_columns[j]) {
      double v;
      if (!parse_double(cell, v)) {
        col.numeric = false;
        break;
      }
      col.values.push_back(v);
    }
    if (!col.numeric) {
      col.values.clear();
      col.labels = raw_columns[j];
    }
    table.columns.push_back(std::move(col));
  }
  return table;
}

Binarized binarize(const ContinuousTable& table, unsigned thresholds) {
  if (thresholds < 1) throw std::invalid_argument("thresholds must be >= 1");
  if (table.columns.empty())
    throw FormatError("no numeric or categorical columns to binarize");

  const std::size_t n = table.n_rows();
  std::vector<BitVector> columns;
  std::vector<std::string> names;
  std::vector<std::string> warnings;

  for (const auto& col : table.columns) {
    if (col.numeric) {
      std::vector<double> sorted = col.values;
      std::sort(sorted.begin(), sorted.end());
      if (sorted.front() == sorted.back()) {
        warnings.push_back("column '" + col.name +
                           "' is constant; skipped");
        continue;
      }
      std::set<double> cuts;
      for (unsigned i = 1; i <= thresholds; ++i) {
        const double q =
            static_cast<double>(i) / (static_cast<double>(thresholds) + 1.0);
        const double t = empirical_quantile(sorted, q);
        // Snap to the smallest data value >= t: "x >= t" tests the same
        // rows, and equivalent thresholds then merge in the set.
        cuts.insert(*std::lower_bound(sorted.begin(), sorted.end(), t));
      }
      // A cut at the column minimum would make "x>=t" constant-true.
      std::size_t emitted = 0;
      for (double t : cuts) {
        if (t <= sorted.front()) continue;
        BitVector ge(n), lt(n);
        for (std::size_t i = 0; i < n; ++i)
          (col.values[i] >= t ? ge : lt).set(i);
        columns.push_back(std::move(ge));
        names.push_back(col.name + ">=" + format_number(t));
        columns.push_back(std::move(lt));
        names.push_back(col.name + "<" + format_number(t));
        ++emitted;
      }
      if (emitted == 0)
        warnings.push_back("column '" + col.name +
                           "' produced no usable thresholds; skipped");
    } else {
      std::set<std::string> values(col.labels.begin(), col.labels.end());
      for (const auto& v : values) {
        BitVector ind(n);
        for (std::size_t i = 0; i < n; ++i)
          if (col.labels[i] == v) ind.set(i);
        columns.push_back(std::move(ind));
        names.push_back(col.name + "=" + v);
      }
    }
  }

  if (columns.empty())
    throw FormatError("binarization produced no features");

  BitVector labels(n);
  for (std::size_t i = 0; i < n; ++i)
    if (table.label_values[i]) labels.set(i);

  return Binarized{
      BinaryDataset(std::move(columns), std::move(labels), std::move(names)),
      std::move(warnings)};
}

BinaryDataset replicate(const BinaryDataset& ds, std::uint64_t r) {
  if (r == 0) throw std::invalid_argument("replication factor must be >= 1");
  if (r == 1) return ds;
  const std::size_t n = ds.n();
  const std::size_t nn = n * r;
  std::vector<BitVector> columns(ds.d(), BitVector(nn));
  BitVector labels(nn);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < ds.d(); ++j) {
      if (!ds.column(j).test(i)) continue;
      for (std::uint64_t c = 0; c < r; ++c) columns[j].set(i * r + c);
    }
    if (ds.label(i))
      for (std::uint64_t c = 0; c < r; ++c) labels.set(i * r + c);
  }
  return BinaryDataset(std::move(columns), std::move(labels),
                       ds.feature_names());
}

BinaryDataset draw_sample(const BinaryDataset& ds, const SampleSpec& spec) {
  if (spec.m == 0) throw std::invalid_argument("sample size must be >= 1");
  const std::size_t n = ds.n();

  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint64_t> picks;
  picks.reserve(spec.m);
  if (spec.with_replacement) {
    for (std::uint64_t i = 0; i < spec.m; ++i)
      picks.push_back(uniform_index(rng, n));
  } else {
    if (spec.m > n)
      throw std::invalid_argument(
          "without-replacement sample cannot exceed dataset size");
    std::vector<std::uint64_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < spec.m; ++i) {
      const std::uint64_t j = i + uniform_index(rng, n - i);
      std::swap(pool[i], pool[j]);
      picks.push_back(pool[i]);
    }
  }

  std::vector<BitVector> columns(ds.d(), BitVector(spec.m));
  BitVector labels(spec.m);
  for (std::uint64_t i = 0; i < spec.m; ++i) {
    const std::uint64_t src = picks[i];
    for (std::size_t j = 0; j < ds.d(); ++j)
      if (ds.column(j).test(src)) columns[j].set(i);
    if (ds.label(src)) labels.set(i);
  }
  return BinaryDataset(std::move(columns), std::move(labels),
                       ds.feature_names());
}

void write_binary_csv(const BinaryDataset& ds, const std::string& path,
                      const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (std::size_t j = 0; j < ds.d(); ++j) out << ds.feature_names()[j] << ',';
  out << label_column << '\n';
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < ds.d(); ++j)
      out << (ds.feature(i, j) ? '1' : '0') << ',';
    out << (ds.label(i) ? '1' : '0') << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace srl
