#include "srl/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

namespace srl {

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

Plan plan(std::uint64_t n, const SearchSpace& space, const ApproxParams& acc) {
  Plan p;
  p.params = BoundParams{space.k, space.z, space.d,
                         acc.epsilon, acc.theta, acc.delta};
  p.params.check();
  p.alpha = space.alpha;
  p.omega_value = omega(space.k, space.z, space.d);
  p.m_hat = sample_size(p.params, p.omega_value);
  p.n = n;
  p.clamped = p.m_hat >= n;
  return p;
}

Certificate certify(double sample_loss, std::uint64_t m, double omega_value,
                    const ApproxParams& acc, bool proven_optimal,
                    bool space_restricted, bool clamped) {
  if (!proven_optimal)
    throw std::invalid_argument(
        "refusing to certify: sample solve was not proven optimal");
  if (space_restricted)
    throw std::invalid_argument(
        "refusing to certify: support-restricted search space");
  Certificate cert;
  cert.epsilon = acc.epsilon;
  cert.theta = acc.theta;
  cert.delta = acc.delta;
  cert.m = m;
  cert.omega_value = omega_value;
  cert.sample_loss = sample_loss;
  cert.dataset_loss_upper =
      deviation_upper(sample_loss, m, omega_value, acc.delta);
  cert.clamped = clamped;
  cert.guarantee = "with probability >= " + format_value(1.0 - acc.delta) +
                   ": loss(R, D) <= loss(R*, D) + " +
                   format_value(acc.epsilon) + " * max(loss(R*, D), " +
                   format_value(acc.theta) + ")";
  if (clamped)
    cert.guarantee +=
        "; sample clamped to the full dataset, so R equals R* exactly";
  return cert;
}

FullEvaluation evaluate_full(const RuleList& list, const BinaryDataset& ds,
                             double alpha, std::optional<double> sample_loss,
                             unsigned threads) {
  const BitVector positive = predicted_positive(list, ds);
  std::uint64_t mistakes = 0;
  const auto& pw = positive.words();
  const auto& lw = ds.labels().words();
  if (threads <= 1 || pw.size() < 1024) {
    mistakes = BitVector::count_xor(positive, ds.labels());
  } else {
    const std::size_t words = pw.size();
    const std::size_t chunk = (words + threads - 1) / threads;
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(words, begin + chunk);
        std::uint64_t c = 0;
        for (std::size_t i = begin; i < end; ++i)
          c += std::popcount(pw[i] ^ lw[i]);
        partial[t] = c;
      });
    }
    for (auto& w : workers) w.join();
    for (std::uint64_t c : partial) mistakes += c;
  }

  FullEvaluation eval;
  eval.mistakes = mistakes;
  eval.loss = regularized_loss(mistakes, ds.n(), alpha, list.length());
  if (sample_loss)
    eval.deviation_from_sample = std::abs(eval.loss - *sample_loss);
  return eval;
}

TrainResult run(const BinaryDataset& ds, const SearchSpace& space,
                const ApproxParams& acc, std::uint64_t seed,
                const SolverOptions& solver_opts) {
  TrainResult result;
  result.seed = seed;
  result.plan = plan(ds.n(), space, acc);

  if (result.plan.clamped) {
    result.sample_solve = solve(ds, space, solver_opts);
  } else {
    const BinaryDataset sample =
        draw_sample(ds, SampleSpec{result.plan.m_hat, seed, true});
    result.sample_solve = solve(sample, space, solver_opts);
  }
  result.model = result.sample_solve.best;
  result.sample_loss = result.sample_solve.loss;

  if (result.sample_solve.proven_optimal &&
      !result.sample_solve.space_restricted) {
    result.certificate = certify(
        result.sample_loss, result.plan.effective_m(), result.plan.omega_value,
        acc, true, false, result.plan.clamped);
  }
  return result;
}

}  // namespace srl
