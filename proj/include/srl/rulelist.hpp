#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srl/dataset.hpp"

namespace srl {

/// Monotone conjunction over feature indices. An empty index set is the
/// always-true condition, allowed only for the default rule.
class Condition {
 public:
  Condition() = default;
  explicit Condition(std::vector<std::uint32_t> features);

  const std::vector<std::uint32_t>& features() const { return features_; }
  bool always_true() const { return features_.empty(); }
  std::size_t arity() const { return features_.size(); }

  bool matches(std::span<const std::uint8_t> instance) const;
  bool matches_row(const BinaryDataset& ds, std::size_t row) const;

  bool operator==(const Condition& o) const { return features_ == o.features_; }

 private:
  std::vector<std::uint32_t> features_;  // sorted, distinct
};

struct Rule {
  Condition condition;
  std::uint8_t prediction = 0;
};

struct SearchSpace {
  std::uint32_t k = 1;
  std::uint32_t z = 1;
  std::uint32_t d = 1;
  double alpha = 0.0;
};

/// Ordered rules plus a default; prediction comes from the first rule whose
/// condition is satisfied. Immutable after construction.
class RuleList {
 public:
  /// Default-only list.
  explicit RuleList(std::uint8_t default_prediction = 0)
      : default_prediction_(default_prediction) {}
  RuleList(std::vector<Rule> rules, std::uint8_t default_prediction);

  const std::vector<Rule>& rules() const { return rules_; }
  std::uint8_t default_prediction() const { return default_prediction_; }
  /// |R|: the number of non-default rules.
  std::size_t length() const { return rules_.size(); }

  std::uint8_t predict(std::span<const std::uint8_t> instance) const;
  std::uint8_t predict_row(const BinaryDataset& ds, std::size_t row) const;

  bool operator==(const RuleList& o) const;

 private:
  std::vector<Rule> rules_;
  std::uint8_t default_prediction_;
};

struct LossReport {
  double loss = 0.0;
  std::uint64_t mistakes = 0;
};

/// Mistake counts are exact integers; only this final combination with alpha
/// is floating point. Every loss in the library goes through here so equal
/// inputs give bit-identical results.
inline double regularized_loss(std::uint64_t mistakes, std::size_t n,
                               double alpha, std::size_t length) {
  return static_cast<double>(mistakes) / static_cast<double>(n) +
         alpha * static_cast<double>(length);
}

/// Losses within this tolerance are compared as ties and resolved by
/// (length, antecedent sequence).
inline constexpr double kLossTolerance = 1e-12;

LossReport loss(const RuleList& list, const BinaryDataset& ds, double alpha);

/// Instances predicted 1.
std::vector<std::uint32_t> projection(const RuleList& list,
                                      const BinaryDataset& ds);

/// Bitset of instances predicted 1 (word-parallel evaluation path).
BitVector predicted_positive(const RuleList& list, const BinaryDataset& ds);

/// Drops rules whose condition appeared earlier in the list, then
/// iteratively drops the last rule while its prediction equals the default
/// prediction. Predicts identically to the input on every instance.
RuleList canonicalize(const RuleList& list);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const RuleList& list, const SearchSpace& space);

}  // namespace srl
