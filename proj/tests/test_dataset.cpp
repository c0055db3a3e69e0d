#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "srl/dataset.hpp"
#include "srl/errors.hpp"
#include "srl/rulelist.hpp"
#include "test_util.hpp"

using namespace srl;

namespace {

std::filesystem::path data_dir() { return SRL_TEST_DATA_DIR; }

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

ContinuousTable numeric_table(const std::string& name,
                              std::vector<double> values,
                              std::vector<std::uint8_t> labels) {
  ContinuousTable t;
  ContinuousTable::Column col;
  col.name = name;
  col.numeric = true;
  col.values = std::move(values);
  t.columns.push_back(std::move(col));
  t.label_values = std::move(labels);
  t.label_name = "label";
  return t;
}

}  // namespace

TEST_CASE("load_binary_csv reads the 5x4 fixture") {
  const auto ds = load_binary_csv((data_dir() / "fig1.csv").string(), "label");
  CHECK(ds.n() == 5);
  CHECK(ds.d() == 4);
  CHECK(ds.feature_names() ==
        std::vector<std::string>{"x1", "x2", "x3", "x4"});
  const std::vector<int> expected_labels = {1, 1, 1, 0, 0};
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(static_cast<int>(ds.label(i)) == expected_labels[i]);
  CHECK(ds.feature(4, 0));  // s5 = (1,0,1,1)
  CHECK_FALSE(ds.feature(4, 1));
  CHECK(ds.feature(4, 2));
  CHECK(ds.feature(4, 3));
}

TEST_CASE("load_binary_csv single row") {
  const auto path = write_temp("srl_single.csv", "x1,label\n0,0\n");
  const auto ds = load_binary_csv(path.string(), "label");
  CHECK(ds.n() == 1);
  CHECK(ds.d() == 1);
  CHECK_FALSE(ds.label(0));
}

TEST_CASE("load_binary_csv error paths") {
  CHECK_THROWS_AS(load_binary_csv("/no/such/file.csv", "label"), IoError);

  const auto bad_cell = write_temp("srl_badcell.csv", "x1,label\n2,0\n");
  CHECK_THROWS_WITH_AS(load_binary_csv(bad_cell.string(), "label"),
                       doctest::Contains("line 2"), FormatError);
  try {
    load_binary_csv(bad_cell.string(), "label");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("x1") != std::string::npos);
    CHECK(std::string(e.what()).find("'2'") != std::string::npos);
  }

  const auto no_label = write_temp("srl_nolabel.csv", "x1,x2\n0,1\n");
  CHECK_THROWS_AS(load_binary_csv(no_label.string(), "label"), FormatError);

  const auto empty = write_temp("srl_empty.csv", "x1,label\n");
  CHECK_THROWS_AS(load_binary_csv(empty.string(), "label"), FormatError);
}

TEST_CASE("binarize quantiles of 1..100 with 4 thresholds") {
  std::vector<double> values;
  for (int v = 1; v <= 100; ++v) values.push_back(v);
  std::vector<std::uint8_t> labels(100, 0);
  for (int i = 0; i < 100; i += 2) labels[i] = 1;
  const auto result = binarize(numeric_table("v", values, labels), 4);
  const auto& ds = result.dataset;

  CHECK(ds.d() == 8);
  CHECK(ds.feature_names() ==
        std::vector<std::string>{"v>=20", "v<20", "v>=40", "v<40", "v>=60",
                                 "v<60", "v>=80", "v<80"});
  // row with value 40 satisfies v>=20 and v>=40 but not v>=60
  CHECK(ds.feature(39, 0));
  CHECK(ds.feature(39, 2));
  CHECK_FALSE(ds.feature(39, 4));
  // label-preserving: row i keeps label of row i
  for (std::size_t i = 0; i < 100; ++i)
    CHECK(static_cast<int>(ds.label(i)) == labels[i]);
}

TEST_CASE("binarize already-binary column emits one complementary pair") {
  const auto result = binarize(
      numeric_table("f", {0, 1, 0, 1, 1, 0}, {0, 1, 0, 1, 1, 0}), 4);
  const auto& ds = result.dataset;
  CHECK(ds.d() == 2);
  CHECK(ds.feature_names() == std::vector<std::string>{"f>=1", "f<1"});
  for (std::size_t i = 0; i < ds.n(); ++i)
    CHECK(ds.feature(i, 0) != ds.feature(i, 1));
}

TEST_CASE("binarize categorical column one-hot") {
  ContinuousTable t;
  ContinuousTable::Column col;
  col.name = "f";
  col.numeric = false;
  col.labels = {"a", "b", "a", "b"};
  t.columns.push_back(std::move(col));
  t.label_values = {0, 1, 0, 1};
  t.label_name = "label";
  const auto result = binarize(t, 4);
  CHECK(result.dataset.feature_names() ==
        std::vector<std::string>{"f=a", "f=b"});
  CHECK(result.dataset.feature(0, 0));
  CHECK_FALSE(result.dataset.feature(0, 1));
}

TEST_CASE("binarize constant column warns and skips") {
  ContinuousTable t = numeric_table("c", {3, 3, 3}, {0, 1, 0});
  ContinuousTable::Column ok;
  ok.name = "v";
  ok.numeric = true;
  ok.values = {1, 2, 3};
  t.columns.push_back(std::move(ok));
  const auto result = binarize(t, 2);
  CHECK(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("'c'") != std::string::npos);

  // only constants -> nothing to emit
  CHECK_THROWS_AS(binarize(numeric_table("c", {3, 3, 3}, {0, 1, 0}), 2),
                  FormatError);
}

TEST_CASE("table csv loading classifies columns and validates labels") {
  const auto path = write_temp(
      "srl_table.csv", "age,city,label\n23,rome,0\n35,oslo,1\n29,bern,0\n");
  const auto table = load_table_csv(path.string(), "label");
  REQUIRE(table.columns.size() == 2);
  CHECK(table.columns[0].numeric);
  CHECK_FALSE(table.columns[1].numeric);
  CHECK(table.label_values == std::vector<std::uint8_t>{0, 1, 0});

  const auto bad_label = write_temp(
      "srl_badlabel.csv", "age,label\n23,0\n35,2\n");
  CHECK_THROWS_WITH_AS(load_table_csv(bad_label.string(), "label"),
                       doctest::Contains("non-binary"), FormatError);
}

TEST_CASE("replicate preserves losses exactly") {
  const auto ds = testutil::fig1_dataset();
  CHECK_THROWS_AS(replicate(ds, 0), std::invalid_argument);

  const auto same = replicate(ds, 1);
  CHECK(same.n() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(same.row(i) == ds.row(i));

  const auto doubled = replicate(ds, 2);
  CHECK(doubled.n() == 10);
  CHECK(doubled.d() == 4);
  const auto list = testutil::fig1_list();
  CHECK(loss(list, doubled, 0.01).loss == loss(list, ds, 0.01).loss);
  CHECK(loss(list, doubled, 0.01).mistakes == 2 * loss(list, ds, 0.01).mistakes);

  std::mt19937_64 rng(7);
  const auto base = testutil::random_dataset(rng, 8, 3);
  const auto reps = replicate(base, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = testutil::random_rule_list(rng, 3, 2, 2);
    for (double alpha : {0.0, 0.01}) {
      CHECK(loss(r, base, alpha).loss == loss(r, reps, alpha).loss);
    }
  }
}

TEST_CASE("draw_sample determinism and forced outcomes") {
  const auto ds = testutil::fig1_dataset();
  CHECK_THROWS_AS(draw_sample(ds, SampleSpec{0, 1}), std::invalid_argument);

  const auto a = draw_sample(ds, SampleSpec{12, 99});
  const auto b = draw_sample(ds, SampleSpec{12, 99});
  CHECK(a.n() == 12);
  CHECK(a.feature_names() == ds.feature_names());
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(a.row(i) == b.row(i));
    CHECK(a.label(i) == b.label(i));
  }

  // n = 1 forces every draw
  std::vector<BitVector> one_col(1, BitVector(1));
  one_col[0].set(0);
  BitVector one_label(1);
  const BinaryDataset single(std::move(one_col), std::move(one_label), {"x1"});
  const auto seven = draw_sample(single, SampleSpec{7, 3});
  CHECK(seven.n() == 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(seven.feature(i, 0));
}

TEST_CASE("draw_sample empirical frequencies within 5 sigma") {
  // all 8 patterns over 3 features, identified by their bits
  std::mt19937_64 rng(11);
  std::vector<BitVector> cols(3, BitVector(8));
  BitVector labels(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if ((i >> j) & 1) cols[j].set(i);
  const BinaryDataset ds(std::move(cols), std::move(labels),
                         {"x1", "x2", "x3"});

  const std::size_t m = 10 * ds.n();
  const auto sample = draw_sample(ds, SampleSpec{m, 123});
  std::vector<int> counts(8, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t pattern = 0;
    for (std::size_t j = 0; j < 3; ++j)
      if (sample.feature(i, j)) pattern |= std::size_t{1} << j;
    ++counts[pattern];
  }
  const double mean = static_cast<double>(m) / 8.0;
  const double sigma = std::sqrt(static_cast<double>(m) * (1.0 / 8) * (7.0 / 8));
  for (int c : counts) CHECK(std::abs(c - mean) <= 5 * sigma);
}

TEST_CASE("sample loss is an unbiased estimator") {
  std::mt19937_64 rng(5);
  const auto ds = testutil::random_dataset(rng, 8, 3);
  const auto list = testutil::random_rule_list(rng, 3, 2, 2);
  const double alpha = 0.01;
  const auto full = loss(list, ds, alpha);

  const std::size_t m = 8;
  const int seeds = 1000;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s)
    sum += loss(list, draw_sample(ds, SampleSpec{m, static_cast<std::uint64_t>(s)}),
                alpha)
               .loss;
  const double avg = sum / seeds;
  const double p = static_cast<double>(full.mistakes) / ds.n();
  const double sigma = std::sqrt(p * (1 - p) / m / seeds);
  CHECK(std::abs(avg - full.loss) <= 3 * sigma + 1e-12);
}

TEST_CASE("draw_sample without replacement") {
  const auto ds = testutil::fig1_dataset();
  CHECK_THROWS_AS(draw_sample(ds, SampleSpec{6, 1, false}),
                  std::invalid_argument);
  const auto perm = draw_sample(ds, SampleSpec{5, 42, false});
  std::multiset<std::vector<std::uint8_t>> seen, expected;
  for (std::size_t i = 0; i < 5; ++i) {
    seen.insert(perm.row(i));
    expected.insert(ds.row(i));
  }
  CHECK(seen == expected);
}

TEST_CASE("binary csv round trip") {
  std::mt19937_64 rng(21);
  const auto ds = testutil::random_dataset(rng, 17, 5);
  const auto path = std::filesystem::temp_directory_path() / "srl_rt.csv";
  write_binary_csv(ds, path.string(), "y");
  const auto back = load_binary_csv(path.string(), "y");
  CHECK(back.n() == ds.n());
  CHECK(back.feature_names() == ds.feature_names());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    CHECK(back.row(i) == ds.row(i));
    CHECK(back.label(i) == ds.label(i));
  }
}

TEST_CASE("constant columns are flagged") {
  std::vector<BitVector> cols(3, BitVector(4));
  cols[1].set(0);
  cols[1].set(1);
  cols[1].set(2);
  cols[1].set(3);
  cols[2].set(1);
  BitVector labels(4);
  labels.set(0);
  const BinaryDataset ds(std::move(cols), std::move(labels),
                         {"zero", "one", "mixed"});
  CHECK(ds.constant_columns() == std::vector<std::size_t>{0, 1});
}
