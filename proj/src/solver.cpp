#include "srl/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "srl/errors.hpp"

namespace srl {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_space(const BinaryDataset& ds, const SearchSpace& space) {
  if (space.d != ds.d())
    throw std::invalid_argument("search space d = " + std::to_string(space.d) +
                                " does not match dataset d = " +
                                std::to_string(ds.d()));
  if (space.z < 1 || space.z > space.d)
    throw std::invalid_argument("require 1 <= z <= d");
  if (space.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
}

struct Incumbent {
  bool set = false;
  double loss = std::numeric_limits<double>::infinity();
  std::uint64_t mistakes = 0;
  std::vector<std::uint32_t> sequence;
  std::vector<std::uint8_t> predictions;
  std::uint8_t default_prediction = 0;

  /// Smaller loss wins; within the tolerance band, the shorter sequence,
  /// then the lexicographically smaller one.
  bool improves(double cand_loss, std::size_t cand_len,
                std::span<const std::uint32_t> cand_seq) const {
    if (!set) return true;
    if (cand_loss < loss - kLossTolerance) return true;
    if (cand_loss > loss + kLossTolerance) return false;
    if (cand_len != sequence.size()) return cand_len < sequence.size();
    return std::lexicographical_compare(cand_seq.begin(), cand_seq.end(),
                                        sequence.begin(), sequence.end());
  }
};

RuleList materialize(const AntecedentCatalogue& catalogue,
                     const Incumbent& inc) {
  std::vector<Rule> rules;
  rules.reserve(inc.sequence.size());
  for (std::size_t i = 0; i < inc.sequence.size(); ++i)
    rules.push_back(Rule{catalogue.items[inc.sequence[i]].condition,
                         inc.predictions[i]});
  return RuleList(std::move(rules), inc.default_prediction);
}

/// Bookkeeping for equal-capture sibling detection without keeping a copy
/// of every capture: store a cheap signature, re-derive the capture for the
/// rare exact comparison.
struct SiblingFilter {
  struct Entry {
    std::uint64_t hash;
    std::uint64_t count;
    std::uint64_t positives;
    std::uint32_t antecedent;
  };
  std::vector<Entry> entries;

  void clear() { entries.clear(); }

  template <typename RebuildFn>
  bool is_duplicate(std::uint64_t hash, std::uint64_t count,
                    std::uint64_t positives, const BitVector& capture,
                    RebuildFn rebuild) {
    for (const auto& e : entries) {
      if (e.hash != hash || e.count != count || e.positives != positives)
        continue;
      if (rebuild(e.antecedent) == capture) return true;
    }
    return false;
  }

  void add(std::uint64_t hash, std::uint64_t count, std::uint64_t positives,
           std::uint32_t antecedent) {
    entries.push_back({hash, count, positives, antecedent});
  }
};

}  // namespace

AntecedentCatalogue enumerate_antecedents(const BinaryDataset& ds,
                                          std::uint32_t z, double min_support,
                                          bool include_zero_support,
                                          std::size_t cap) {
  if (z < 1 || z > ds.d())
    throw std::invalid_argument("require 1 <= z <= d");
  if (min_support < 0.0 || min_support >= 1.0)
    throw std::invalid_argument("min_support must be in [0, 1)");

  const double threshold = min_support * static_cast<double>(ds.n());
  AntecedentCatalogue catalogue;
  std::vector<std::uint32_t> indices;

  auto keep = [&](std::uint64_t support) {
    if (support == 0) return include_zero_support && min_support == 0.0;
    return static_cast<double>(support) > threshold;
  };
  auto emit = [&](const BitVector& capture) {
    const std::uint64_t support = capture.count();
    if (!keep(support)) return;
    if (catalogue.items.size() >= cap)
      throw GuardError("antecedent catalogue reached " +
                       std::to_string(catalogue.items.size()) +
                       " items, configured cap is " + std::to_string(cap));
    catalogue.items.push_back(
        Antecedent{Condition(indices), capture, support});
  };

  // Size-major, lexicographic within each size.
  const auto d = static_cast<std::uint32_t>(ds.d());
  auto gen = [&](auto&& self, std::uint32_t size, std::uint32_t start,
                 const BitVector* prefix) -> void {
    for (std::uint32_t f = start; f + (size - indices.size() - 1) < d; ++f) {
      indices.push_back(f);
      BitVector capture = prefix ? *prefix : ds.column(f);
      if (prefix) capture &= ds.column(f);
      if (indices.size() == size)
        emit(capture);
      else
        self(self, size, f + 1, &capture);
      indices.pop_back();
    }
  };
  for (std::uint32_t size = 1; size <= z; ++size)
    gen(gen, size, 0, nullptr);
  return catalogue;
}

PrefixState make_prefix(const BinaryDataset& ds,
                        const AntecedentCatalogue& catalogue,
                        std::span<const std::uint32_t> sequence) {
  PrefixState state;
  state.captured = BitVector(ds.n());
  BitVector effective(ds.n());
  for (std::uint32_t a : sequence) {
    if (a >= catalogue.size())
      throw std::out_of_range("antecedent index out of range");
    effective.assign_and_not(catalogue.items[a].capture, state.captured);
    const std::uint64_t count = effective.count();
    const std::uint64_t positives =
        BitVector::count_and(effective, ds.labels());
    const std::uint8_t prediction = positives > count - positives ? 1 : 0;
    state.antecedents.push_back(a);
    state.predictions.push_back(prediction);
    state.mistakes += std::min(positives, count - positives);
    state.captured |= effective;
    state.captured_count += count;
    state.captured_positive += positives;
    ++state.depth;
  }
  return state;
}

double prefix_lower_bound(const PrefixState& state, double alpha,
                          std::size_t n) {
  return regularized_loss(state.mistakes, n, alpha, state.depth);
}

SolverResult solve(const BinaryDataset& ds, const SearchSpace& space,
                   const SolverOptions& opts) {
  const auto start = Clock::now();
  check_space(ds, space);

  const AntecedentCatalogue catalogue = enumerate_antecedents(
      ds, space.z, opts.min_support, opts.include_zero_support,
      opts.catalogue_cap);
  const std::size_t n = ds.n();
  const std::uint64_t total_positive = ds.positive_count();
  const double alpha = space.alpha;
  const auto catalogue_size = static_cast<std::uint32_t>(catalogue.size());

  SolverResult result;
  result.space_restricted = opts.min_support > 0.0;

  Incumbent inc;
  {  // root: default-only list
    const std::uint8_t def =
        total_positive > n - total_positive ? 1 : 0;
    const std::uint64_t mist =
        def ? n - total_positive : total_positive;
    inc.set = true;
    inc.loss = regularized_loss(mist, n, alpha, 0);
    inc.mistakes = mist;
    inc.default_prediction = def;
    result.nodes_explored = 1;
  }

  struct QueueNode {
    double bound;
    std::uint64_t order;
    std::vector<std::uint32_t> sequence;
  };
  struct Compare {
    bool operator()(const QueueNode& a, const QueueNode& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.order > b.order;  // FIFO among equal bounds
    }
  };
  std::priority_queue<QueueNode, std::vector<QueueNode>, Compare> queue;
  std::uint64_t order = 0;
  if (space.k > 0 && catalogue_size > 0)
    queue.push(QueueNode{regularized_loss(0, n, alpha, 0), order++, {}});

  bool budget_hit = false;
  BitVector captured(n), effective(n), scratch(n);
  std::vector<std::uint8_t> predictions;
  SiblingFilter siblings;

  while (!queue.empty()) {
    if (opts.node_budget && result.nodes_explored >= opts.node_budget) {
      budget_hit = true;
      break;
    }
    if (opts.time_budget_s > 0.0 && (result.nodes_explored & 0xff) == 0 &&
        elapsed_seconds(start) > opts.time_budget_s) {
      budget_hit = true;
      break;
    }

    const QueueNode node = queue.top();
    queue.pop();
    if (opts.use_objective_bound && node.bound > inc.loss + kLossTolerance) {
      ++result.nodes_pruned;
      continue;
    }
    const auto depth = static_cast<std::uint32_t>(node.sequence.size());
    if (depth >= space.k) continue;

    // Rebuild the prefix state (nodes store only the sequence).
    captured.clear_all();
    predictions.clear();
    std::uint64_t captured_count = 0, captured_positive = 0, mistakes = 0;
    for (std::uint32_t a : node.sequence) {
      effective.assign_and_not(catalogue.items[a].capture, captured);
      const std::uint64_t cnt = effective.count();
      const std::uint64_t pos = BitVector::count_and(effective, ds.labels());
      predictions.push_back(pos > cnt - pos ? 1 : 0);
      mistakes += std::min(pos, cnt - pos);
      captured |= effective;
      captured_count += cnt;
      captured_positive += pos;
    }

    if (opts.use_lookahead &&
        regularized_loss(mistakes, n, alpha, depth + 1) >
            inc.loss + kLossTolerance) {
      ++result.nodes_pruned;
      continue;
    }

    siblings.clear();
    auto rebuild_effective = [&](std::uint32_t a) -> const BitVector& {
      scratch.assign_and_not(catalogue.items[a].capture, captured);
      return scratch;
    };

    for (std::uint32_t a = 0; a < catalogue_size; ++a) {
      if (std::find(node.sequence.begin(), node.sequence.end(), a) !=
          node.sequence.end())
        continue;
      effective.assign_and_not(catalogue.items[a].capture, captured);
      const std::uint64_t cnt = effective.count();
      if (opts.skip_zero_capture && cnt == 0) {
        ++result.nodes_pruned;
        continue;
      }
      const std::uint64_t pos = BitVector::count_and(effective, ds.labels());
      if (opts.dedupe_sibling_captures) {
        const std::uint64_t h = effective.hash();
        if (siblings.is_duplicate(h, cnt, pos, effective,
                                  rebuild_effective)) {
          ++result.nodes_pruned;
          continue;
        }
        siblings.add(h, cnt, pos, a);
      }

      const std::uint64_t child_mistakes = mistakes + std::min(cnt - pos, pos);
      const double child_bound =
          regularized_loss(child_mistakes, n, alpha, depth + 1);

      const std::uint64_t unc_count = n - captured_count - cnt;
      const std::uint64_t unc_pos = total_positive - captured_positive - pos;
      const std::uint64_t default_mistakes =
          std::min(unc_pos, unc_count - unc_pos);
      const std::uint64_t total_mistakes = child_mistakes + default_mistakes;
      const double child_loss =
          regularized_loss(total_mistakes, n, alpha, depth + 1);
      ++result.nodes_explored;

      std::vector<std::uint32_t> child_seq = node.sequence;
      child_seq.push_back(a);
      if (inc.improves(child_loss, depth + 1, child_seq)) {
        inc.loss = child_loss;
        inc.mistakes = total_mistakes;
        inc.sequence = child_seq;
        inc.predictions = predictions;
        inc.predictions.push_back(pos > cnt - pos ? 1 : 0);
        inc.default_prediction = unc_pos > unc_count - unc_pos ? 1 : 0;
      }

      if (depth + 1 < space.k) {
        if (opts.use_objective_bound &&
            child_bound > inc.loss + kLossTolerance) {
          ++result.nodes_pruned;
        } else {
          queue.push(QueueNode{child_bound, order++, std::move(child_seq)});
        }
      }
    }
  }

  result.best = materialize(catalogue, inc);
  result.loss = inc.loss;
  result.mistakes = inc.mistakes;
  result.proven_optimal = !budget_hit;
  result.wall_time_s = elapsed_seconds(start);
  return result;
}

SolverResult brute_force(const BinaryDataset& ds, const SearchSpace& space,
                         const SolverOptions& opts) {
  const auto start = Clock::now();
  check_space(ds, space);

  const AntecedentCatalogue catalogue = enumerate_antecedents(
      ds, space.z, opts.min_support, opts.include_zero_support,
      opts.catalogue_cap);
  const std::size_t n = ds.n();
  const std::uint64_t total_positive = ds.positive_count();
  const double alpha = space.alpha;
  const auto catalogue_size = static_cast<std::uint32_t>(catalogue.size());

  double expected = 1.0;
  double lists = 1.0;
  for (std::uint32_t j = 1; j <= space.k && j <= catalogue_size; ++j) {
    expected *= static_cast<double>(catalogue_size - (j - 1));
    lists += expected;
  }
  if (lists > 1e7)
    throw GuardError("brute force would enumerate " +
                     std::to_string(static_cast<std::uint64_t>(lists)) +
                     " sequences, above the 1e7 guard");

  SolverResult result;
  result.space_restricted = opts.min_support > 0.0;

  Incumbent inc;
  {
    const std::uint8_t def = total_positive > n - total_positive ? 1 : 0;
    const std::uint64_t mist = def ? n - total_positive : total_positive;
    inc.set = true;
    inc.loss = regularized_loss(mist, n, alpha, 0);
    inc.mistakes = mist;
    inc.default_prediction = def;
    result.nodes_explored = 1;
  }

  std::vector<std::uint32_t> sequence;
  std::vector<std::uint8_t> predictions;
  std::vector<BitVector> captured_stack(space.k + 1, BitVector(n));
  BitVector effective(n);

  auto dfs = [&](auto&& self, std::uint32_t depth,
                 std::uint64_t captured_count, std::uint64_t captured_positive,
                 std::uint64_t mistakes) -> void {
    if (depth == space.k) return;
    const BitVector& captured = captured_stack[depth];
    for (std::uint32_t a = 0; a < catalogue_size; ++a) {
      if (std::find(sequence.begin(), sequence.end(), a) != sequence.end())
        continue;
      effective.assign_and_not(catalogue.items[a].capture, captured);
      const std::uint64_t cnt = effective.count();
      const std::uint64_t pos = BitVector::count_and(effective, ds.labels());
      const std::uint64_t child_mistakes = mistakes + std::min(pos, cnt - pos);
      const std::uint64_t unc_count = n - captured_count - cnt;
      const std::uint64_t unc_pos = total_positive - captured_positive - pos;
      const std::uint64_t default_mistakes =
          std::min(unc_pos, unc_count - unc_pos);
      const std::uint64_t total_mistakes = child_mistakes + default_mistakes;
      const double child_loss =
          regularized_loss(total_mistakes, n, alpha, depth + 1);
      ++result.nodes_explored;

      sequence.push_back(a);
      predictions.push_back(pos > cnt - pos ? 1 : 0);
      if (inc.improves(child_loss, depth + 1, sequence)) {
        inc.loss = child_loss;
        inc.mistakes = total_mistakes;
        inc.sequence = sequence;
        inc.predictions = predictions;
        inc.default_prediction = unc_pos > unc_count - unc_pos ? 1 : 0;
      }
      if (depth + 1 < space.k) {
        captured_stack[depth + 1] = captured;
        captured_stack[depth + 1] |= effective;
        self(self, depth + 1, captured_count + cnt, captured_positive + pos,
             child_mistakes);
      }
      sequence.pop_back();
      predictions.pop_back();
    }
  };
  if (space.k > 0) dfs(dfs, 0, 0, 0, 0);

  result.best = materialize(catalogue, inc);
  result.loss = inc.loss;
  result.mistakes = inc.mistakes;
  result.proven_optimal = true;
  result.wall_time_s = elapsed_seconds(start);
  return result;
}

bool realizable_exactly(const AntecedentCatalogue& catalogue,
                        const BitVector& labels, std::size_t n,
                        std::uint32_t k) {
  const std::uint64_t total_positive = labels.count();
  const auto catalogue_size = static_cast<std::uint32_t>(catalogue.size());
  std::vector<BitVector> captured_stack(k + 1, BitVector(n));
  BitVector effective(n);

  // A realization needs every rule's capture to be label-pure; the default
  // absorbs the rest once the uncaptured part is pure.
  auto rec = [&](auto&& self, std::uint32_t depth, std::uint64_t captured_count,
                 std::uint64_t captured_positive) -> bool {
    const std::uint64_t unc_count = n - captured_count;
    const std::uint64_t unc_pos = total_positive - captured_positive;
    if (unc_pos == 0 || unc_pos == unc_count) return true;
    if (depth == k) return false;
    const BitVector& captured = captured_stack[depth];
    for (std::uint32_t a = 0; a < catalogue_size; ++a) {
      effective.assign_and_not(catalogue.items[a].capture, captured);
      const std::uint64_t cnt = effective.count();
      if (cnt == 0) continue;
      const std::uint64_t pos = BitVector::count_and(effective, labels);
      if (pos != 0 && pos != cnt) continue;  // impure capture can't be exact
      captured_stack[depth + 1] = captured;
      captured_stack[depth + 1] |= effective;
      if (self(self, depth + 1, captured_count + cnt, captured_positive + pos))
        return true;
    }
    return false;
  };
  return rec(rec, 0, 0, 0);
}

}  // namespace srl
