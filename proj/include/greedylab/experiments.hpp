#pragma once

#include "greedylab/report.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace greedylab {

using ExperimentFn = std::function<Report(const ExperimentConfig&)>;

// Named experiments in catalog order. Common config keys: experiment, seed,
// dim, budget, out, gap, oracle, construction; per-experiment extras documented
// in the README.
const std::vector<std::pair<std::string, ExperimentFn>>& experiment_catalog();

// Dispatches on cfg key "experiment", validates keys, stamps the config echo
// and wall-clock. Throws std::invalid_argument on unknown experiment/keys.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace greedylab
