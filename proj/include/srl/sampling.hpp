#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "srl/complexity.hpp"
#include "srl/dataset.hpp"
#include "srl/rulelist.hpp"
#include "srl/solver.hpp"

namespace srl {

struct ApproxParams {
  double epsilon = 0.5;
  double theta = 0.025;
  double delta = 0.05;
};

/// Sizing decision for a sampled training run. When m_hat >= n the sample
/// is clamped to the full dataset and the result is exact.
struct Plan {
  BoundParams params;
  double alpha = 0.0;
  double omega_value = 0.0;
  std::uint64_t m_hat = 0;
  std::uint64_t n = 0;
  bool clamped = false;

  std::uint64_t effective_m() const { return clamped ? n : m_hat; }
};

Plan plan(std::uint64_t n, const SearchSpace& space, const ApproxParams& acc);

/// Packaged guarantee: with probability >= 1-delta the trained list's
/// full-data loss is within epsilon*max(optimal loss, theta) of optimal,
/// and bounded above by dataset_loss_upper.
struct Certificate {
  double epsilon = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  std::uint64_t m = 0;
  double omega_value = 0.0;
  double sample_loss = 0.0;
  double dataset_loss_upper = 0.0;
  bool clamped = false;
  std::string guarantee;
};

/// Throws std::invalid_argument when the sample solve was not proven
/// optimal or the search space was support-restricted.
Certificate certify(double sample_loss, std::uint64_t m, double omega_value,
                    const ApproxParams& acc, bool proven_optimal,
                    bool space_restricted, bool clamped);

struct FullEvaluation {
  double loss = 0.0;
  std::uint64_t mistakes = 0;
  std::optional<double> deviation_from_sample;
};

/// Single full pass over ds; when sample_loss is supplied the report also
/// carries |loss_D - loss_S|. threads > 1 partitions the evaluation with
/// exact integer reduction.
FullEvaluation evaluate_full(const RuleList& list, const BinaryDataset& ds,
                             double alpha,
                             std::optional<double> sample_loss = std::nullopt,
                             unsigned threads = 1);

struct TrainResult {
  RuleList model{0};
  Plan plan;
  SolverResult sample_solve;
  double sample_loss = 0.0;
  std::optional<Certificate> certificate;
  std::uint64_t seed = 0;
};

/// End-to-end sampled training: size the sample, draw it, solve exactly on
/// it, certify. Deterministic given the seed. A budget-truncated sample
/// solve yields a result without a certificate.
TrainResult run(const BinaryDataset& ds, const SearchSpace& space,
                const ApproxParams& acc, std::uint64_t seed,
                const SolverOptions& solver_opts = {});

}  // namespace srl
