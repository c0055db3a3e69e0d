#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srl/complexity.hpp"
#include "srl/errors.hpp"
#include "srl/json_io.hpp"
#include "srl/sampling.hpp"
#include "srl/solver.hpp"

namespace py = pybind11;
using namespace srl;

namespace {

BinaryDataset dataset_from_rows(
    const std::vector<std::vector<std::uint8_t>>& rows,
    const std::vector<std::uint8_t>& labels,
    std::vector<std::string> feature_names) {
  if (rows.size() != labels.size())
    throw std::invalid_argument("rows and labels must have equal length");
  if (rows.empty()) throw std::invalid_argument("need at least one row");
  const std::size_t n = rows.size();
  const std::size_t d = rows[0].size();
  if (feature_names.empty())
    for (std::size_t j = 0; j < d; ++j)
      feature_names.push_back("x" + std::to_string(j + 1));
  std::vector<BitVector> columns(d, BitVector(n));
  BitVector label_bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != d)
      throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < d; ++j)
      if (rows[i][j]) columns[j].set(i);
    if (labels[i]) label_bits.set(i);
  }
  return BinaryDataset(std::move(columns), std::move(label_bits),
                       std::move(feature_names));
}

std::vector<std::vector<std::uint8_t>> dataset_rows(const BinaryDataset& ds) {
  std::vector<std::vector<std::uint8_t>> rows(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) rows[i] = ds.row(i);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "rule list learning on rigorously sized random samples";

  py::register_exception<IoError>(m, "IoError", PyExc_IOError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

  py::class_<BinaryDataset>(m, "BinaryDataset")
      .def(py::init(&dataset_from_rows), py::arg("rows"), py::arg("labels"),
           py::arg("feature_names") = std::vector<std::string>{})
      .def_property_readonly("n", &BinaryDataset::n)
      .def_property_readonly("d", &BinaryDataset::d)
      .def_property_readonly("feature_names", &BinaryDataset::feature_names)
      .def("label", [](const BinaryDataset& ds, std::size_t i) {
        return static_cast<int>(ds.label(i));
      })
      .def("row", &BinaryDataset::row)
      .def("rows", &dataset_rows)
      .def("constant_columns", &BinaryDataset::constant_columns);

  py::class_<SearchSpace>(m, "SearchSpace")
      .def(py::init([](std::uint32_t k, std::uint32_t z, std::uint32_t d,
                       double alpha) {
             return SearchSpace{k, z, d, alpha};
           }),
           py::arg("k"), py::arg("z"), py::arg("d"), py::arg("alpha") = 0.0)
      .def_readwrite("k", &SearchSpace::k)
      .def_readwrite("z", &SearchSpace::z)
      .def_readwrite("d", &SearchSpace::d)
      .def_readwrite("alpha", &SearchSpace::alpha);

  py::class_<RuleList>(m, "RuleList")
      .def("__len__", &RuleList::length)
      .def("predict",
           [](const RuleList& r, const std::vector<std::uint8_t>& instance) {
             return static_cast<int>(r.predict(instance));
           })
      .def_property_readonly("default_prediction",
                             &RuleList::default_prediction)
      .def("to_json",
           [](const RuleList& r, const SearchSpace& space,
              const std::vector<std::string>& names) {
             return model_to_json(r, space, names).dump();
           })
      .def("__eq__", [](const RuleList& a, const RuleList& b) { return a == b; });

  m.def("model_from_json",
        [](const std::string& text, const std::vector<std::string>& names) {
          const auto loaded = model_from_json(nlohmann::json::parse(text), names);
          return py::make_tuple(loaded.list, loaded.space);
        },
        py::arg("text"), py::arg("feature_names"));

  m.def("load_binary_csv", &load_binary_csv, py::arg("path"),
        py::arg("label_column") = "label");
  m.def("replicate", &replicate, py::arg("dataset"), py::arg("r"));
  m.def("draw_sample",
        [](const BinaryDataset& ds, std::uint64_t m, std::uint64_t seed,
           bool with_replacement) {
          return draw_sample(ds, SampleSpec{m, seed, with_replacement});
        },
        py::arg("dataset"), py::arg("m"), py::arg("seed"),
        py::arg("with_replacement") = true);

  m.def("loss",
        [](const RuleList& list, const BinaryDataset& ds, double alpha) {
          const auto report = loss(list, ds, alpha);
          return py::make_tuple(report.loss, report.mistakes);
        },
        py::arg("list"), py::arg("dataset"), py::arg("alpha") = 0.0);
  m.def("projection", &srl::projection, py::arg("list"), py::arg("dataset"));
  m.def("canonicalize", &srl::canonicalize, py::arg("list"));

  m.def("omega", &omega, py::arg("k"), py::arg("z"), py::arg("d"));
  m.def("growth_upper",
        [](std::uint32_t k, std::uint32_t d) {
          return growth_upper(k, d).str();
        },
        py::arg("k"), py::arg("d"));
  m.def("vc_upper", &vc_upper, py::arg("k"), py::arg("z"), py::arg("d"));
  m.def("vc_lower", &vc_lower, py::arg("k"), py::arg("z"), py::arg("d"));
  m.def("deviation_upper", &deviation_upper, py::arg("sample_loss"),
        py::arg("m"), py::arg("omega"), py::arg("delta"));
  m.def("opt_concentration", &opt_concentration, py::arg("full_loss"),
        py::arg("m"), py::arg("delta"));
  m.def("check_sample_condition",
        [](std::uint64_t m, std::uint32_t k, std::uint32_t z, std::uint32_t d,
           double epsilon, double theta, double delta) {
          const BoundParams p{k, z, d, epsilon, theta, delta};
          return check_sample_condition(m, p, omega(k, z, d));
        },
        py::arg("m"), py::arg("k"), py::arg("z"), py::arg("d"),
        py::arg("epsilon"), py::arg("theta"), py::arg("delta"));
  m.def("sample_size",
        [](std::uint32_t k, std::uint32_t z, std::uint32_t d, double epsilon,
           double theta, double delta) {
          const BoundParams p{k, z, d, epsilon, theta, delta};
          return sample_size(p, omega(k, z, d));
        },
        py::arg("k"), py::arg("z"), py::arg("d"), py::arg("epsilon"),
        py::arg("theta"), py::arg("delta"));
  m.def("sample_size_analytic",
        [](std::uint32_t k, std::uint32_t z, std::uint32_t d, double epsilon,
           double theta, double delta) {
          const BoundParams p{k, z, d, epsilon, theta, delta};
          return sample_size_analytic(p, omega(k, z, d));
        },
        py::arg("k"), py::arg("z"), py::arg("d"), py::arg("epsilon"),
        py::arg("theta"), py::arg("delta"));
  m.def("shatter_matrix", &shatter_matrix, py::arg("a"));
  m.def("shatter_dataset", &shatter_dataset, py::arg("a"), py::arg("k"));
  m.def("verify_shattering", &verify_shattering, py::arg("points"),
        py::arg("k"), py::arg("z"));

  py::class_<SolverResult>(m, "SolverResult")
      .def_readonly("best", &SolverResult::best)
      .def_readonly("loss", &SolverResult::loss)
      .def_readonly("mistakes", &SolverResult::mistakes)
      .def_readonly("nodes_explored", &SolverResult::nodes_explored)
      .def_readonly("nodes_pruned", &SolverResult::nodes_pruned)
      .def_readonly("proven_optimal", &SolverResult::proven_optimal)
      .def_readonly("space_restricted", &SolverResult::space_restricted)
      .def_readonly("wall_time_s", &SolverResult::wall_time_s);

  auto make_options = [](double min_support, std::uint64_t node_budget,
                         double time_budget_s) {
    SolverOptions opts;
    opts.min_support = min_support;
    opts.node_budget = node_budget;
    opts.time_budget_s = time_budget_s;
    return opts;
  };
  m.def("solve",
        [make_options](const BinaryDataset& ds, const SearchSpace& space,
                       double min_support, std::uint64_t node_budget,
                       double time_budget_s) {
          return solve(ds, space,
                       make_options(min_support, node_budget, time_budget_s));
        },
        py::arg("dataset"), py::arg("space"), py::arg("min_support") = 0.0,
        py::arg("node_budget") = 0, py::arg("time_budget_s") = 0.0);
  m.def("brute_force",
        [make_options](const BinaryDataset& ds, const SearchSpace& space,
                       double min_support) {
          return brute_force(ds, space, make_options(min_support, 0, 0.0));
        },
        py::arg("dataset"), py::arg("space"), py::arg("min_support") = 0.0);

  py::class_<Plan>(m, "Plan")
      .def_readonly("omega", &Plan::omega_value)
      .def_readonly("m_hat", &Plan::m_hat)
      .def_readonly("n", &Plan::n)
      .def_readonly("clamped", &Plan::clamped)
      .def("effective_m", &Plan::effective_m);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("epsilon", &Certificate::epsilon)
      .def_readonly("theta", &Certificate::theta)
      .def_readonly("delta", &Certificate::delta)
      .def_readonly("m", &Certificate::m)
      .def_readonly("omega", &Certificate::omega_value)
      .def_readonly("sample_loss", &Certificate::sample_loss)
      .def_readonly("dataset_loss_upper", &Certificate::dataset_loss_upper)
      .def_readonly("clamped", &Certificate::clamped)
      .def_readonly("guarantee", &Certificate::guarantee);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("model", &TrainResult::model)
      .def_readonly("plan", &TrainResult::plan)
      .def_readonly("sample_solve", &TrainResult::sample_solve)
      .def_readonly("sample_loss", &TrainResult::sample_loss)
      .def_readonly("certificate", &TrainResult::certificate)
      .def_readonly("seed", &TrainResult::seed)
      .def("to_json",
           [](const TrainResult& r, const SearchSpace& space,
              const std::vector<std::string>& names) {
             return train_result_to_json(r, space, names).dump();
           });

  m.def("plan",
        [](std::uint64_t n, const SearchSpace& space, double epsilon,
           double theta, double delta) {
          return plan(n, space, ApproxParams{epsilon, theta, delta});
        },
        py::arg("n"), py::arg("space"), py::arg("epsilon") = 0.5,
        py::arg("theta") = 0.025, py::arg("delta") = 0.05);
  m.def("run",
        [make_options](const BinaryDataset& ds, const SearchSpace& space,
                       double epsilon, double theta, double delta,
                       std::uint64_t seed, double min_support,
                       std::uint64_t node_budget, double time_budget_s) {
          return run(ds, space, ApproxParams{epsilon, theta, delta}, seed,
                     make_options(min_support, node_budget, time_budget_s));
        },
        py::arg("dataset"), py::arg("space"), py::arg("epsilon") = 0.5,
        py::arg("theta") = 0.025, py::arg("delta") = 0.05, py::arg("seed") = 1,
        py::arg("min_support") = 0.0, py::arg("node_budget") = 0,
        py::arg("time_budget_s") = 0.0);
  m.def("evaluate_full",
        [](const RuleList& list, const BinaryDataset& ds, double alpha,
           std::optional<double> sample_loss, unsigned threads) {
          const auto eval = evaluate_full(list, ds, alpha, sample_loss, threads);
          return py::make_tuple(eval.loss, eval.mistakes,
                                eval.deviation_from_sample);
        },
        py::arg("list"), py::arg("dataset"), py::arg("alpha") = 0.0,
        py::arg("sample_loss") = std::nullopt, py::arg("threads") = 1);
}
