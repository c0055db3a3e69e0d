#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srl/dataset.hpp"
#include "srl/rulelist.hpp"

namespace srl {

struct Antecedent {
  Condition condition;
  BitVector capture;  // instances satisfying the condition
  std::uint64_t support = 0;
};

struct AntecedentCatalogue {
  std::vector<Antecedent> items;
  std::size_t size() const { return items.size(); }
};

/// All feature subsets of size <= z with support > min_support * n, ordered
/// by size then lexicographically. Zero-support subsets are excluded unless
/// include_zero_support is set (only meaningful at min_support = 0).
AntecedentCatalogue enumerate_antecedents(const BinaryDataset& ds,
                                          std::uint32_t z,
                                          double min_support = 0.0,
                                          bool include_zero_support = false,
                                          std::size_t cap = 2'000'000);

/// Partial rule list: ordered antecedents with derived predictions. Each
/// rule captures only instances not captured earlier; mistakes is the sum
/// of minority counts among the per-rule captures.
struct PrefixState {
  std::vector<std::uint32_t> antecedents;  // catalogue indices, in order
  std::vector<std::uint8_t> predictions;
  BitVector captured;
  std::uint64_t captured_count = 0;
  std::uint64_t captured_positive = 0;
  std::uint64_t mistakes = 0;
  std::uint32_t depth = 0;
};

PrefixState make_prefix(const BinaryDataset& ds,
                        const AntecedentCatalogue& catalogue,
                        std::span<const std::uint32_t> sequence);

/// mistakes/n + alpha*depth. Admissible: no completion of the prefix can
/// have a smaller loss (extra rules cost alpha each, uncaptured mistakes
/// are nonnegative, per-rule predictions are captured-majority-optimal).
double prefix_lower_bound(const PrefixState& state, double alpha,
                          std::size_t n);

struct SolverOptions {
  double min_support = 0.0;         // > 0 invalidates optimality certificates
  bool include_zero_support = false;
  std::uint64_t node_budget = 0;    // 0 = unlimited
  double time_budget_s = 0.0;       // 0 = unlimited
  bool use_objective_bound = true;  // prune nodes whose bound exceeds incumbent
  bool use_lookahead = true;        // require bound + alpha to beat incumbent
  bool skip_zero_capture = true;    // skip antecedents capturing nothing new
  bool dedupe_sibling_captures = true;  // skip equal-capture siblings
  std::size_t catalogue_cap = 2'000'000;
};

struct SolverResult {
  RuleList best{0};
  double loss = 0.0;
  std::uint64_t mistakes = 0;
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  bool proven_optimal = false;
  bool space_restricted = false;  // nonzero min_support narrowed the space
  double wall_time_s = 0.0;
};

/// Exact minimum of the regularized loss over rule lists with <= k rules of
/// <= z terms, by best-first branch and bound over antecedent sequences.
/// Per-rule and default predictions are derived (majority of captured /
/// majority of uncaptured). Ties broken by smallest (length, antecedent
/// index sequence).
SolverResult solve(const BinaryDataset& ds, const SearchSpace& space,
                   const SolverOptions& opts = {});

/// Independent oracle: exhaustive enumeration of ordered sequences of
/// distinct antecedents of length <= k, same derived predictions and
/// tie-break as solve. Guarded at 1e7 candidate sequences.
SolverResult brute_force(const BinaryDataset& ds, const SearchSpace& space,
                         const SolverOptions& opts = {});

/// True iff some rule list of <= k rules over the catalogue predicts the
/// given labels exactly. Used by the shattering checks.
bool realizable_exactly(const AntecedentCatalogue& catalogue,
                        const BitVector& labels, std::size_t n,
                        std::uint32_t k);

}  // namespace srl
