#include "srl/rulelist.hpp"

#include <algorithm>
#include <stdexcept>

namespace srl {

Condition::Condition(std::vector<std::uint32_t> features)
    : features_(std::move(features)) {
  std::sort(features_.begin(), features_.end());
  features_.erase(std::unique(features_.begin(), features_.end()),
                  features_.end());
}

bool Condition::matches(std::span<const std::uint8_t> instance) const {
  for (std::uint32_t f : features_) {
    if (f >= instance.size())
      throw std::out_of_range("feature index " + std::to_string(f) +
                              " out of range for instance of size " +
                              std::to_string(instance.size()));
    if (!instance[f]) return false;
  }
  return true;
}

bool Condition::matches_row(const BinaryDataset& ds, std::size_t row) const {
  for (std::uint32_t f : features_) {
    if (f >= ds.d())
      throw std::out_of_range("feature index " + std::to_string(f) +
                              " out of range for dataset with d = " +
                              std::to_string(ds.d()));
    if (!ds.column(f).test(row)) return false;
  }
  return true;
}

RuleList::RuleList(std::vector<Rule> rules, std::uint8_t default_prediction)
    : rules_(std::move(rules)), default_prediction_(default_prediction) {
  for (const auto& r : rules_)
    if (r.condition.always_true())
      throw std::invalid_argument(
          "only the default rule may have the always-true condition");
}

std::uint8_t RuleList::predict(std::span<const std::uint8_t> instance) const {
  for (const auto& r : rules_)
    if (r.condition.matches(instance)) return r.prediction;
  return default_prediction_;
}

std::uint8_t RuleList::predict_row(const BinaryDataset& ds,
                                   std::size_t row) const {
  for (const auto& r : rules_)
    if (r.condition.matches_row(ds, row)) return r.prediction;
  return default_prediction_;
}

bool RuleList::operator==(const RuleList& o) const {
  if (default_prediction_ != o.default_prediction_) return false;
  if (rules_.size() != o.rules_.size()) return false;
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (!(rules_[i].condition == o.rules_[i].condition) ||
        rules_[i].prediction != o.rules_[i].prediction)
      return false;
  return true;
}

BitVector predicted_positive(const RuleList& list, const BinaryDataset& ds) {
  const std::size_t n = ds.n();
  BitVector remaining(n, true);
  BitVector positive(n);
  BitVector fired(n);
  for (const auto& r : list.rules()) {
    const auto& feats = r.condition.features();
    if (!feats.empty() && feats.back() >= ds.d())
      throw std::out_of_range("feature index " +
                              std::to_string(feats.back()) +
                              " out of range for dataset with d = " +
                              std::to_string(ds.d()));
    fired.assign_and(remaining, ds.column(feats[0]));
    for (std::size_t t = 1; t < feats.size(); ++t) fired &= ds.column(feats[t]);
    if (r.prediction) positive |= fired;
    remaining.and_not(fired);
  }
  if (list.default_prediction()) positive |= remaining;
  return positive;
}

LossReport loss(const RuleList& list, const BinaryDataset& ds, double alpha) {
  const BitVector positive = predicted_positive(list, ds);
  const std::uint64_t mistakes = BitVector::count_xor(positive, ds.labels());
  return LossReport{regularized_loss(mistakes, ds.n(), alpha, list.length()),
                    mistakes};
}

std::vector<std::uint32_t> projection(const RuleList& list,
                                      const BinaryDataset& ds) {
  const BitVector positive = predicted_positive(list, ds);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < ds.n(); ++i)
    if (positive.test(i)) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

RuleList canonicalize(const RuleList& list) {
  std::vector<Rule> rules;
  for (const auto& r : list.rules()) {
    bool duplicate = false;
    for (const auto& kept : rules)
      if (kept.condition == r.condition) duplicate = true;
    if (!duplicate) rules.push_back(r);
  }
  while (!rules.empty() &&
         rules.back().prediction == list.default_prediction())
    rules.pop_back();
  return RuleList(std::move(rules), list.default_prediction());
}

ValidationReport validate(const RuleList& list, const SearchSpace& space) {
  ValidationReport report;
  if (list.length() > space.k)
    report.violations.push_back("list has " + std::to_string(list.length()) +
                                " rules, limit k = " +
                                std::to_string(space.k));
  for (std::size_t i = 0; i < list.rules().size(); ++i) {
    const auto& r = list.rules()[i];
    if (r.condition.arity() > space.z)
      report.violations.push_back(
          "rule " + std::to_string(i + 1) + " has " +
          std::to_string(r.condition.arity()) +
          " terms, limit z = " + std::to_string(space.z));
    for (std::uint32_t f : r.condition.features())
      if (f >= space.d)
        report.violations.push_back(
            "rule " + std::to_string(i + 1) + " references feature " +
            std::to_string(f) + ", limit d = " + std::to_string(space.d));
  }
  return report;
}

}  // namespace srl
