#include "srl/complexity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "srl/errors.hpp"
#include "srl/rulelist.hpp"
#include "srl/solver.hpp"

namespace srl {

namespace {

/// floor with a small guard: values within 1e-9 below an integer are
/// treated as that integer, so exact-integer bound values (for example
/// k*z*log2(8) with an integral k-th root) survive rounding.
std::int64_t floor_guarded(double x) {
  double f = std::floor(x);
  if (x - f > 1.0 - 1e-9) f += 1.0;
  return static_cast<std::int64_t>(f);
}

/// k^(1/z), detecting exact integer roots so ratios like d/(z*k^(1/z))
/// stay exact when they are mathematically integral.
double integer_aware_root(std::uint32_t k, std::uint32_t z) {
  const double approx = std::pow(static_cast<double>(k), 1.0 / z);
  const double rounded = std::round(approx);
  if (rounded >= 1.0) {
    double power = 1.0;
    for (std::uint32_t i = 0; i < z; ++i) power *= rounded;
    if (power == static_cast<double>(k)) return rounded;
  }
  return approx;
}

void require_z_le_d(std::uint32_t z, std::uint32_t d) {
  if (z < 1 || z > d)
    throw std::invalid_argument("require 1 <= z <= d, got z = " +
                                std::to_string(z) +
                                ", d = " + std::to_string(d));
}

}  // namespace

void BoundParams::check() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must be in (0, 1]");
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must be in (0, 1]");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must be in (0, 1)");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_z_le_d(z, d);
}

double omega(std::uint32_t k, std::uint32_t z, std::uint32_t d) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  require_z_le_d(z, d);
  const double ratio = 2.0 * std::numbers::e * static_cast<double>(d) /
                       static_cast<double>(z);
  return static_cast<double>(k) * static_cast<double>(z) * std::log(ratio) +
         2.0;
}

double omega_single_term(std::uint32_t k, std::uint32_t d) {
  if (k < 1 || d < 1) throw std::invalid_argument("require k >= 1, d >= 1");
  return static_cast<double>(k) * std::log(2.0 * static_cast<double>(d)) + 2.0;
}

boost::multiprecision::cpp_int growth_upper(std::uint32_t k, std::uint32_t d) {
  using boost::multiprecision::cpp_int;
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  cpp_int total = 2;
  for (std::uint32_t j = 1; j <= k; ++j) {
    cpp_int term = cpp_int(1) << j;
    for (std::uint32_t i = 0; i < j; ++i) {
      if (d <= i) {
        term = 0;
        break;
      }
      term *= d - i;
    }
    total += term;
  }
  return total;
}

std::int64_t vc_upper(std::uint32_t k, std::uint32_t z, std::uint32_t d) {
  require_z_le_d(z, d);
  if (z == 1)
    return floor_guarded(
        static_cast<double>(k) * std::log2(2.0 * static_cast<double>(d)) +
        2.0);
  const double ratio = 2.0 * std::numbers::e * static_cast<double>(d) /
                       static_cast<double>(z);
  return floor_guarded(static_cast<double>(k) * static_cast<double>(z) *
                           std::log2(ratio) +
                       2.0);
}

std::int64_t vc_lower(std::uint32_t k, std::uint32_t z, std::uint32_t d) {
  if (k < 1 || z < 1 || d < 1)
    throw std::invalid_argument("arguments must be positive");
  std::int64_t value = 0;
  if (z == 1) {
    const double ratio =
        (static_cast<double>(d) + static_cast<double>(k)) /
        static_cast<double>(k);
    value = floor_guarded(static_cast<double>(k) * std::log2(ratio));
  } else {
    const double ratio = static_cast<double>(d) /
                         (static_cast<double>(z) * integer_aware_root(k, z));
    if (ratio <= 1.0) return 0;
    value = floor_guarded(static_cast<double>(k) * static_cast<double>(z) *
                          std::log2(ratio));
  }
  return value < 0 ? 0 : value;
}

double deviation_upper(double loss_s, std::uint64_t m, double omega_value,
                       double delta) {
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  if (loss_s < 0.0) throw std::invalid_argument("loss must be >= 0");
  const double b = omega_value + std::log(2.0 / delta);
  const double md = static_cast<double>(m);
  return loss_s + std::sqrt(2.0 * loss_s * b / md) + 2.0 * b / md;
}

double opt_concentration(double loss_d, std::uint64_t m, double delta) {
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  if (loss_d < 0.0) throw std::invalid_argument("loss must be >= 0");
  const double md = static_cast<double>(m);
  return loss_d + std::sqrt(3.0 * loss_d * std::log(2.0 / delta) / md);
}

double sample_condition_lhs(std::uint64_t m, const BoundParams& params,
                            double omega_value) {
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  const double md = static_cast<double>(m);
  const double log_term = std::log(2.0 / params.delta);
  const double b = omega_value + log_term;
  const double opt_dev = std::sqrt(3.0 * params.theta * log_term / md);
  return opt_dev +
         std::sqrt(2.0 * (params.theta + opt_dev) * b / md) +
         2.0 * b / md;
}

bool check_sample_condition(std::uint64_t m, const BoundParams& params,
                            double omega_value) {
  return sample_condition_lhs(m, params, omega_value) <=
         params.epsilon * params.theta;
}

std::uint64_t sample_size(const BoundParams& params, double omega_value) {
  params.check();
  std::uint64_t hi = 1;
  while (!check_sample_condition(hi, params, omega_value)) {
    if (hi > (std::uint64_t{1} << 62))
      throw std::runtime_error("sample size search overflow");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;  // condition fails at lo (or lo == 0)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (check_sample_condition(mid, params, omega_value))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::uint64_t sample_size_analytic(const BoundParams& params,
                                   double omega_value) {
  params.check();
  const double b = omega_value + std::log(2.0 / params.delta);
  const double e = params.epsilon;
  const double t = params.theta;
  const double value = b * std::sqrt(14.0) * std::sqrt(8.0 * e + 14.0) /
                           (2.0 * e * e * t) +
                       2.0 * b / (e * t) + 7.0 * b / (e * e * t);
  return static_cast<std::uint64_t>(std::ceil(value));
}

std::vector<std::vector<std::uint8_t>> shatter_matrix(std::uint32_t a) {
  if (a < 1) throw std::invalid_argument("a must be >= 1");
  if (a > 20) throw GuardError("shatter_matrix guard: a <= 20");
  const std::uint32_t b = (1u << a) - 1;
  std::vector<std::vector<std::uint8_t>> matrix(
      a, std::vector<std::uint8_t>(b, 0));
  // Columns are the nonzero subsets of the a rows, by size then
  // lexicographically.
  std::uint32_t col = 0;
  std::vector<std::uint32_t> subset;
  auto emit = [&](const std::vector<std::uint32_t>& rows) {
    for (std::uint32_t r : rows) matrix[r][col] = 1;
    ++col;
  };
  for (std::uint32_t size = 1; size <= a; ++size) {
    subset.assign(size, 0);
    for (std::uint32_t i = 0; i < size; ++i) subset[i] = i;
    for (;;) {
      emit(subset);
      std::int64_t i = static_cast<std::int64_t>(size) - 1;
      while (i >= 0 && subset[i] == a - size + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < size; ++j)
        subset[j] = subset[j - 1] + 1;
    }
  }
  return matrix;
}

BinaryDataset shatter_dataset(std::uint32_t a, std::uint32_t k) {
  if (a < 1 || k < 1) throw std::invalid_argument("require a >= 1, k >= 1");
  if (static_cast<std::uint64_t>(a) * k > 24)
    throw GuardError("shatter_dataset guard: a*k <= 24");
  const auto block = shatter_matrix(a);
  const std::uint32_t b = (1u << a) - 1;
  const std::size_t n = static_cast<std::size_t>(a) * k;
  const std::size_t d = static_cast<std::size_t>(b) * k;
  std::vector<BitVector> columns(d, BitVector(n));
  for (std::uint32_t blk = 0; blk < k; ++blk)
    for (std::uint32_t r = 0; r < a; ++r)
      for (std::uint32_t c = 0; c < b; ++c)
        if (block[r][c])
          columns[static_cast<std::size_t>(blk) * b + c].set(
              static_cast<std::size_t>(blk) * a + r);
  std::vector<std::string> names(d);
  for (std::size_t j = 0; j < d; ++j) names[j] = "x" + std::to_string(j + 1);
  return BinaryDataset(std::move(columns), BitVector(n), std::move(names));
}

bool verify_shattering(const BinaryDataset& points, std::uint32_t k,
                       std::uint32_t z) {
  const std::size_t n = points.n();
  if (n > 24) throw GuardError("verify_shattering guard: n <= 24");
  const auto catalogue = enumerate_antecedents(points, z, 0.0, false);
  const std::uint64_t labelings = std::uint64_t{1} << n;
  for (std::uint64_t y = 0; y < labelings; ++y) {
    BitVector labels(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((y >> i) & 1) labels.set(i);
    if (!realizable_exactly(catalogue, labels, n, k)) return false;
  }
  return true;
}

}  // namespace srl
