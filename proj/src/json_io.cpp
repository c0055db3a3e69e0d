#include "srl/json_io.hpp"

#include <unordered_map>

#include "srl/errors.hpp"

namespace srl {

using nlohmann::json;

json model_to_json(const RuleList& list, const SearchSpace& space,
                   const std::vector<std::string>& feature_names) {
  json rules = json::array();
  for (const auto& r : list.rules()) {
    json features = json::array();
    for (std::uint32_t f : r.condition.features()) {
      if (f >= feature_names.size())
        throw FormatError("rule references feature index " +
                          std::to_string(f) + " beyond the header");
      features.push_back(feature_names[f]);
    }
    rules.push_back({{"features", features}, {"prediction", r.prediction}});
  }
  return json{{"rules", rules},
              {"default_prediction", list.default_prediction()},
              {"alpha", space.alpha},
              {"k", space.k},
              {"z", space.z}};
}

LoadedModel model_from_json(const json& j,
                            const std::vector<std::string>& feature_names) {
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < feature_names.size(); ++i)
    index.emplace(feature_names[i], static_cast<std::uint32_t>(i));

  if (!j.contains("rules") || !j["rules"].is_array())
    throw FormatError("model JSON is missing the \"rules\" array");
  if (!j.contains("default_prediction"))
    throw FormatError("model JSON is missing \"default_prediction\"");

  std::vector<Rule> rules;
  for (const auto& rj : j["rules"]) {
    std::vector<std::uint32_t> features;
    for (const auto& name : rj.at("features")) {
      const auto it = index.find(name.get<std::string>());
      if (it == index.end())
        throw FormatError("model references unknown feature '" +
                          name.get<std::string>() + "'");
      features.push_back(it->second);
    }
    rules.push_back(Rule{Condition(std::move(features)),
                         rj.at("prediction").get<std::uint8_t>()});
  }

  LoadedModel loaded{
      RuleList(std::move(rules),
               j.at("default_prediction").get<std::uint8_t>()),
      SearchSpace{}};
  loaded.space.k = j.value("k", static_cast<std::uint32_t>(
                                    loaded.list.length()));
  loaded.space.z = j.value("z", 1u);
  loaded.space.d = static_cast<std::uint32_t>(feature_names.size());
  loaded.space.alpha = j.value("alpha", 0.0);
  return loaded;
}

json solver_result_to_json(const SolverResult& result,
                           const SearchSpace& space,
                           const std::vector<std::string>& feature_names) {
  return json{{"schema_version", kSchemaVersion},
              {"model", model_to_json(result.best, space, feature_names)},
              {"loss", result.loss},
              {"mistakes", result.mistakes},
              {"nodes_explored", result.nodes_explored},
              {"nodes_pruned", result.nodes_pruned},
              {"proven_optimal", result.proven_optimal},
              {"space_restricted", result.space_restricted},
              {"wall_time_s", result.wall_time_s}};
}

json certificate_to_json(const Certificate& cert) {
  return json{{"epsilon", cert.epsilon},
              {"theta", cert.theta},
              {"delta", cert.delta},
              {"m", cert.m},
              {"omega", cert.omega_value},
              {"sample_loss", cert.sample_loss},
              {"dataset_loss_upper", cert.dataset_loss_upper},
              {"clamped", cert.clamped},
              {"guarantee", cert.guarantee}};
}

json train_result_to_json(const TrainResult& result, const SearchSpace& space,
                          const std::vector<std::string>& feature_names) {
  json j{{"schema_version", kSchemaVersion},
         {"model", model_to_json(result.model, space, feature_names)},
         {"seed", result.seed},
         {"plan",
          {{"omega", result.plan.omega_value},
           {"m_hat", result.plan.m_hat},
           {"n", result.plan.n},
           {"clamped", result.plan.clamped}}},
         {"sample_loss", result.sample_loss},
         {"solver",
          {{"loss", result.sample_solve.loss},
           {"mistakes", result.sample_solve.mistakes},
           {"nodes_explored", result.sample_solve.nodes_explored},
           {"nodes_pruned", result.sample_solve.nodes_pruned},
           {"proven_optimal", result.sample_solve.proven_optimal},
           {"space_restricted", result.sample_solve.space_restricted},
           {"wall_time_s", result.sample_solve.wall_time_s}}}};
  if (result.certificate)
    j["certificate"] = certificate_to_json(*result.certificate);
  else
    j["certificate"] = nullptr;
  return j;
}

json bounds_to_json(const BoundParams& params) {
  const double w = omega(params.k, params.z, params.d);
  return json{{"schema_version", kSchemaVersion},
              {"k", params.k},
              {"z", params.z},
              {"d", params.d},
              {"epsilon", params.epsilon},
              {"theta", params.theta},
              {"delta", params.delta},
              {"omega", w},
              {"vc_upper", vc_upper(params.k, params.z, params.d)},
              {"vc_lower", vc_lower(params.k, params.z, params.d)},
              {"growth_upper", growth_upper(params.k, params.d).str()},
              {"m_hat", sample_size(params, w)},
              {"m_analytic", sample_size_analytic(params, w)}};
}

}  // namespace srl
