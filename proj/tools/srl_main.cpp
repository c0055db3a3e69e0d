#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "srl/complexity.hpp"
#include "srl/errors.hpp"
#include "srl/json_io.hpp"
#include "srl/sampling.hpp"
#include "srl/solver.hpp"

namespace {

// Exit codes, one per error category.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFormat = 3;
constexpr int kExitBudget = 4;
constexpr int kExitGuard = 5;
constexpr int kExitCheckFailed = 7;

struct Config {
  std::string dataset;
  std::string label = "label";
  std::string model_path;
  std::string output;
  std::uint32_t k = 3;
  std::uint32_t z = 1;
  double alpha = 0.01;
  double epsilon = 0.5;
  double theta = 0.025;
  double delta = 0.05;
  std::uint64_t seed = 1;
  std::uint64_t replicate = 1;
  unsigned thresholds = 4;
  double min_support = 0.0;
  std::uint64_t node_budget = 0;
  double time_budget = 0.0;
  unsigned threads = 1;
  unsigned bench_seeds = 10;
  bool with_exact = false;
  std::uint32_t shatter_a = 1;
};

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) throw srl::IoError("cannot write '" + output + "'");
  out << text << '\n';
}

srl::BinaryDataset load_dataset(const Config& cfg) {
  auto ds = srl::load_binary_csv(cfg.dataset, cfg.label);
  for (std::size_t j : ds.constant_columns())
    std::cerr << "warning: feature '" << ds.feature_names()[j]
              << "' is constant\n";
  if (cfg.replicate > 1) ds = srl::replicate(ds, cfg.replicate);
  return ds;
}

srl::SolverOptions solver_options(const Config& cfg) {
  srl::SolverOptions opts;
  opts.min_support = cfg.min_support;
  opts.node_budget = cfg.node_budget;
  opts.time_budget_s = cfg.time_budget;
  return opts;
}

int cmd_binarize(const Config& cfg) {
  const auto table = srl::load_table_csv(cfg.dataset, cfg.label);
  auto result = srl::binarize(table, cfg.thresholds);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  auto ds = result.dataset;
  if (cfg.replicate > 1) ds = srl::replicate(ds, cfg.replicate);
  const std::string out = cfg.output.empty() ? "binarized.csv" : cfg.output;
  srl::write_binary_csv(ds, out, table.label_name);
  std::cerr << "wrote " << ds.n() << " rows, " << ds.d() << " features to "
            << out << '\n';
  return kExitOk;
}

int cmd_train(const Config& cfg) {
  const auto ds = load_dataset(cfg);
  const srl::SearchSpace space{cfg.k, cfg.z,
                               static_cast<std::uint32_t>(ds.d()), cfg.alpha};
  const srl::ApproxParams acc{cfg.epsilon, cfg.theta, cfg.delta};
  const auto result =
      srl::run(ds, space, acc, cfg.seed, solver_options(cfg));
  emit(srl::train_result_to_json(result, space, ds.feature_names()).dump(2),
       cfg.output);
  if (result.certificate) {
    std::cerr << "certificate: " << result.certificate->guarantee << '\n'
              << "sample loss " << result.sample_loss
              << ", certified full-data loss <= "
              << result.certificate->dataset_loss_upper << " (m = "
              << result.certificate->m << ")\n";
    return kExitOk;
  }
  if (result.sample_solve.space_restricted)
    std::cerr << "no certificate: nonzero --min-support restricts the "
                 "search space\n";
  else
    std::cerr << "no certificate: sample solve was not proven optimal "
                 "within the budget\n";
  return kExitBudget;
}

int cmd_exact(const Config& cfg) {
  const auto ds = load_dataset(cfg);
  const srl::SearchSpace space{cfg.k, cfg.z,
                               static_cast<std::uint32_t>(ds.d()), cfg.alpha};
  const auto result = srl::solve(ds, space, solver_options(cfg));
  emit(srl::solver_result_to_json(result, space, ds.feature_names()).dump(2),
       cfg.output);
  return result.proven_optimal ? kExitOk : kExitBudget;
}

int cmd_evaluate(const Config& cfg, bool alpha_overridden) {
  const auto ds = load_dataset(cfg);
  std::ifstream in(cfg.model_path);
  if (!in) throw srl::IoError("cannot open model '" + cfg.model_path + "'");
  nlohmann::json mj;
  try {
    in >> mj;
  } catch (const nlohmann::json::exception& e) {
    throw srl::FormatError("model '" + cfg.model_path + "': " + e.what());
  }
  const auto loaded = srl::model_from_json(mj, ds.feature_names());
  const double alpha = alpha_overridden ? cfg.alpha : loaded.space.alpha;
  const auto eval =
      srl::evaluate_full(loaded.list, ds, alpha, std::nullopt, cfg.threads);
  emit(nlohmann::json{{"loss", eval.loss},
                      {"mistakes", eval.mistakes},
                      {"alpha", alpha},
                      {"n", ds.n()},
                      {"rules", loaded.list.length()}}
           .dump(2),
       cfg.output);
  return kExitOk;
}

int cmd_shatter_check(const Config& cfg) {
  const auto points = srl::shatter_dataset(cfg.shatter_a, cfg.k);
  const bool ok = srl::verify_shattering(points, cfg.k, 1);
  std::cout << (ok ? "pass" : "fail") << ": " << points.n()
            << " points over " << points.d() << " features, k = " << cfg.k
            << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const Config& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto ds = load_dataset(cfg);
  const srl::SearchSpace space{cfg.k, cfg.z,
                               static_cast<std::uint32_t>(ds.d()), cfg.alpha};
  const srl::ApproxParams acc{cfg.epsilon, cfg.theta, cfg.delta};

  std::optional<double> optimal_loss;
  double full_solve_time = 0.0;
  if (cfg.with_exact) {
    const auto t0 = Clock::now();
    const auto exact = srl::solve(ds, space, solver_options(cfg));
    full_solve_time = std::chrono::duration<double>(Clock::now() - t0).count();
    if (exact.proven_optimal) optimal_loss = exact.loss;
  }

  std::string table =
      "seed,m_hat,sample_solve_s,full_solve_s,sample_loss,full_loss,"
      "dev_vs_sample,dev_vs_optimal\n";
  for (unsigned i = 0; i < cfg.bench_seeds; ++i) {
    const std::uint64_t seed = cfg.seed + i;
    const auto t0 = Clock::now();
    const auto result = srl::run(ds, space, acc, seed, solver_options(cfg));
    const double sample_time =
        std::chrono::duration<double>(Clock::now() - t0).count();
    const auto eval = srl::evaluate_full(result.model, ds, cfg.alpha,
                                         result.sample_loss, cfg.threads);
    table += std::to_string(seed) + ',' +
             std::to_string(result.plan.effective_m()) + ',' +
             std::to_string(sample_time) + ',' +
             std::to_string(full_solve_time) + ',' +
             std::to_string(result.sample_loss) + ',' +
             std::to_string(eval.loss) + ',' +
             std::to_string(*eval.deviation_from_sample) + ',' +
             (optimal_loss
                  ? std::to_string(std::abs(eval.loss - *optimal_loss))
                  : std::string("")) +
             '\n';
  }
  emit(table, cfg.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "srl: learn nearly optimal sparse rule lists from large binary "
      "datasets by exact search on a provably sufficient random sample"};
  app.require_subcommand(1);

  Config cfg;
  std::uint32_t bounds_d = 1;

  auto add_space = [&](CLI::App* cmd) {
    cmd->add_option("-k,--max-rules", cfg.k, "maximum rule list length")
        ->envname("SRL_K");
    cmd->add_option("-z,--max-terms", cfg.z, "maximum terms per condition")
        ->envname("SRL_Z");
    cmd->add_option("--alpha", cfg.alpha, "per-rule regularization weight")
        ->envname("SRL_ALPHA");
  };
  auto add_data = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", cfg.dataset, "input CSV path")
        ->required()
        ->envname("SRL_DATASET");
    cmd->add_option("--label", cfg.label, "label column name")
        ->envname("SRL_LABEL");
    cmd->add_option("--replicate", cfg.replicate,
                    "copy each instance this many times")
        ->envname("SRL_REPLICATE");
  };
  auto add_approx = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", cfg.epsilon, "relative accuracy in (0,1]")
        ->envname("SRL_EPSILON");
    cmd->add_option("--theta", cfg.theta, "loss scale cutoff in (0,1]")
        ->envname("SRL_THETA");
    cmd->add_option("--delta", cfg.delta, "failure probability in (0,1)")
        ->envname("SRL_DELTA");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--min-support", cfg.min_support,
                    "drop antecedents with support fraction <= this")
        ->envname("SRL_MIN_SUPPORT");
    cmd->add_option("--node-budget", cfg.node_budget,
                    "stop after this many search nodes (0 = unlimited)")
        ->envname("SRL_NODE_BUDGET");
    cmd->add_option("--time-budget", cfg.time_budget,
                    "stop after this many seconds (0 = unlimited)")
        ->envname("SRL_TIME_BUDGET");
    cmd->add_option("--threads", cfg.threads,
                    "worker threads for full-data evaluation")
        ->envname("SRL_THREADS");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", cfg.output, "write the result here")
        ->envname("SRL_OUTPUT");
  };

  auto* binarize = app.add_subcommand(
      "binarize", "quantile-binarize a mixed CSV into binary features");
  add_data(binarize);
  add_output(binarize);
  binarize
      ->add_option("--thresholds", cfg.thresholds,
                   "quantile thresholds per numeric column")
      ->envname("SRL_THRESHOLDS");

  auto* bounds = app.add_subcommand(
      "bounds", "print complexity bounds and sample sizes as JSON");
  bounds->add_option("-k,--max-rules", cfg.k, "maximum rule list length")
      ->envname("SRL_K");
  bounds->add_option("-z,--max-terms", cfg.z, "maximum terms per condition")
      ->envname("SRL_Z");
  bounds->add_option("-d,--features", bounds_d, "feature count")->required();
  add_approx(bounds);
  add_output(bounds);

  auto* train = app.add_subcommand(
      "train", "train on a sampled subset with an approximation certificate");
  add_data(train);
  add_space(train);
  add_approx(train);
  add_solver(train);
  add_output(train);
  train->add_option("--seed", cfg.seed, "sampling seed")->envname("SRL_SEED");

  auto* exact = app.add_subcommand("exact", "exact solve on the full dataset");
  add_data(exact);
  add_space(exact);
  add_solver(exact);
  add_output(exact);

  auto* evaluate = app.add_subcommand(
      "evaluate", "evaluate a model JSON against a dataset");
  add_data(evaluate);
  add_output(evaluate);
  evaluate->add_option("--model", cfg.model_path, "model JSON path")
      ->required();
  auto* alpha_opt = evaluate->add_option(
      "--alpha", cfg.alpha, "override the model's regularization weight");
  evaluate->add_option("--threads", cfg.threads, "worker threads")
      ->envname("SRL_THREADS");

  auto* shatter = app.add_subcommand(
      "shatter-check", "verify the block-diagonal construction is shattered");
  shatter->add_option("-a,--block-rows", cfg.shatter_a, "rows per block")
      ->required();
  shatter->add_option("-k,--max-rules", cfg.k, "number of blocks")
      ->required();

  auto* bench = app.add_subcommand(
      "bench", "compare sampled and exact training over several seeds");
  add_data(bench);
  add_space(bench);
  add_approx(bench);
  add_solver(bench);
  add_output(bench);
  bench->add_option("--seed", cfg.seed, "first sampling seed")
      ->envname("SRL_SEED");
  bench->add_option("--seeds", cfg.bench_seeds, "number of seeded runs");
  bench->add_flag("--with-exact", cfg.with_exact,
                  "also solve the full dataset for the deviation column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (binarize->parsed()) return cmd_binarize(cfg);
    if (bounds->parsed()) {
      srl::BoundParams params{cfg.k, cfg.z, bounds_d,
                              cfg.epsilon, cfg.theta, cfg.delta};
      params.check();
      emit(srl::bounds_to_json(params).dump(2), cfg.output);
      return kExitOk;
    }
    if (train->parsed()) return cmd_train(cfg);
    if (exact->parsed()) return cmd_exact(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg, alpha_opt->count() > 0);
    if (shatter->parsed()) return cmd_shatter_check(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
  } catch (const srl::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const srl::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const srl::GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
