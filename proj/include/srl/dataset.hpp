#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srl/bitvector.hpp"

namespace srl {

/// Immutable collection of n instances over d binary features with binary
/// labels. Features are stored column-major as bit blocks so conditions can
/// be intersected word-parallel.
class BinaryDataset {
 public:
  BinaryDataset(std::vector<BitVector> columns, BitVector labels,
                std::vector<std::string> feature_names);

  std::size_t n() const { return n_; }
  std::size_t d() const { return columns_.size(); }

  const BitVector& column(std::size_t j) const { return columns_[j]; }
  const BitVector& labels() const { return labels_; }
  bool feature(std::size_t row, std::size_t j) const {
    return columns_[j].test(row);
  }
  bool label(std::size_t row) const { return labels_.test(row); }
  const std::vector<std::string>& feature_names() const { return names_; }

  std::size_t positive_count() const { return labels_.count(); }

  /// Indices of all-zero or all-one columns. Kept in the dataset; callers
  /// may warn.
  std::vector<std::size_t> constant_columns() const;

  std::vector<std::uint8_t> row(std::size_t i) const;

 private:
  std::size_t n_;
  std::vector<BitVector> columns_;
  BitVector labels_;
  std::vector<std::string> names_;
};

/// A parsed CSV with mixed numeric/categorical columns and a binary label
/// column; the input to binarization.
struct ContinuousTable {
  struct Column {
    std::string name;
    bool numeric = false;
    std::vector<double> values;        // when numeric
    std::vector<std::string> labels;   // raw cells when categorical
  };
  std::vector<Column> columns;  // label column excluded
  std::vector<std::uint8_t> label_values;
  std::string label_name;

  std::size_t n_rows() const { return label_values.size(); }
};

struct SampleSpec {
  std::uint64_t m = 1;
  std::uint64_t seed = 1;
  bool with_replacement = true;
};

struct Binarized {
  BinaryDataset dataset;
  std::vector<std::string> warnings;
};

BinaryDataset load_binary_csv(const std::string& path,
                              const std::string& label_column);

ContinuousTable load_table_csv(const std::string& path,
                               const std::string& label_column);

/// For each numeric column, thresholds at the quantiles q = i/(thresholds+1)
/// (empirical quantile, linear interpolation of the CDF); each kept
/// threshold t emits the pair "name>=t" / "name<t". Categorical columns emit
/// one indicator per distinct value. Duplicate and degenerate thresholds
/// (t <= column minimum) are dropped.
Binarized binarize(const ContinuousTable& table, unsigned thresholds);

BinaryDataset replicate(const BinaryDataset& ds, std::uint64_t r);

BinaryDataset draw_sample(const BinaryDataset& ds, const SampleSpec& spec);

void write_binary_csv(const BinaryDataset& ds, const std::string& path,
                      const std::string& label_column = "label");

/// Unbiased uniform index in [0, n) from a 64-bit generator; avoids the
/// implementation-defined std::uniform_int_distribution.
template <typename Rng>
std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

}  // namespace srl
