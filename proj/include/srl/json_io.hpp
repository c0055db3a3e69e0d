#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "srl/complexity.hpp"
#include "srl/rulelist.hpp"
#include "srl/sampling.hpp"
#include "srl/solver.hpp"

namespace srl {

inline constexpr int kSchemaVersion = 1;

/// {"rules": [{"features": [names], "prediction": 0|1}],
///  "default_prediction": 0|1, "alpha": real, "k": int, "z": int}
nlohmann::json model_to_json(const RuleList& list, const SearchSpace& space,
                             const std::vector<std::string>& feature_names);

struct LoadedModel {
  RuleList list{0};
  SearchSpace space;
};

/// Feature names are resolved against the given header; unknown names are a
/// FormatError.
LoadedModel model_from_json(const nlohmann::json& j,
                            const std::vector<std::string>& feature_names);

nlohmann::json solver_result_to_json(
    const SolverResult& result, const SearchSpace& space,
    const std::vector<std::string>& feature_names);

nlohmann::json certificate_to_json(const Certificate& cert);

nlohmann::json train_result_to_json(
    const TrainResult& result, const SearchSpace& space,
    const std::vector<std::string>& feature_names);

nlohmann::json bounds_to_json(const BoundParams& params);

}  // namespace srl
