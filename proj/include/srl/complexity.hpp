#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "srl/dataset.hpp"

namespace srl {

struct BoundParams {
  std::uint32_t k = 1;
  std::uint32_t z = 1;
  std::uint32_t d = 1;
  double epsilon = 0.5;
  double theta = 0.025;
  double delta = 0.05;

  /// Throws std::invalid_argument on out-of-range parameters.
  void check() const;
};

/// Complexity parameter of the sample-size condition:
/// omega = k*z*ln(2*e*d/z) + 2.
double omega(std::uint32_t k, std::uint32_t z, std::uint32_t d);

/// Slightly tighter variant for z = 1 conditions (k*ln(2d) + 2).
/// Not used for certificates; provided as a non-default option.
double omega_single_term(std::uint32_t k, std::uint32_t d);

/// Upper bound on the number of distinct projections of rule lists with
/// single-feature conditions: 2 + sum_{j=1..k} 2^j * prod_{i<j}(d-i).
/// Exact arbitrary-precision arithmetic; vanishing products contribute 0.
boost::multiprecision::cpp_int growth_upper(std::uint32_t k, std::uint32_t d);

/// floor(k*log2(2d) + 2) for z = 1, floor(k*z*log2(2ed/z) + 2) otherwise.
std::int64_t vc_upper(std::uint32_t k, std::uint32_t z, std::uint32_t d);

/// floor(k*log2((d+k)/k)) for z = 1, floor(k*z*log2(d/(z*k^(1/z)))) for
/// z > 1 (0 when d <= z*k^(1/z)); never negative.
std::int64_t vc_lower(std::uint32_t k, std::uint32_t z, std::uint32_t d);

/// Certified upper bound on the full-data loss of a rule list whose sample
/// loss is loss_s:
/// loss_s + sqrt(2*loss_s*(omega+ln(2/delta))/m) + 2*(omega+ln(2/delta))/m.
double deviation_upper(double loss_s, std::uint64_t m, double omega_value,
                       double delta);

/// One-sided concentration of the optimum's sample loss:
/// loss_d + sqrt(3*loss_d*ln(2/delta)/m).
double opt_concentration(double loss_d, std::uint64_t m, double delta);

/// Left-hand side of the sample-size condition at sample size m; strictly
/// decreasing in m.
double sample_condition_lhs(std::uint64_t m, const BoundParams& params,
                            double omega_value);

/// True iff the condition lhs(m) <= epsilon*theta holds.
bool check_sample_condition(std::uint64_t m, const BoundParams& params,
                            double omega_value);

/// Minimal m >= 1 satisfying the condition; exponential doubling followed
/// by binary search (valid because the lhs is strictly decreasing in m).
std::uint64_t sample_size(const BoundParams& params, double omega_value);

/// Closed-form upper bound on sample_size:
/// ceil( B*sqrt(14)*sqrt(8e+14)/(2e^2 t) + 2B/(e t) + 7B/(e^2 t) ),
/// with B = omega + ln(2/delta), e = epsilon, t = theta.
std::uint64_t sample_size_analytic(const BoundParams& params,
                                   double omega_value);

/// a x (2^a - 1) matrix whose columns enumerate all nonzero binary
/// a-vectors; columns ordered by subset size, then lexicographically.
std::vector<std::vector<std::uint8_t>> shatter_matrix(std::uint32_t a);

/// Block-diagonal (a*k) x ((2^a-1)*k) point set with shatter_matrix(a)
/// blocks on the diagonal. Labels are all zero; shattering checks supply
/// their own labelings.
BinaryDataset shatter_dataset(std::uint32_t a, std::uint32_t k);

/// Brute-force test utility: true iff every labeling of the points is
/// realized exactly by some rule list with <= k rules of <= z terms.
bool verify_shattering(const BinaryDataset& points, std::uint32_t k,
                       std::uint32_t z);

}  // namespace srl
