#pragma once

#include "threshforge/kmeans.hpp"
#include "threshforge/otsu.hpp"
#include "threshforge/pipeline.hpp"
#include "threshforge/ringcheck.hpp"
#include "threshforge/synth.hpp"

#include <json.hpp>

#include <string>

namespace threshforge {

nlohmann::json to_json(const ThresholdReport& report);
nlohmann::json to_json(const KMeansResult& result);
nlohmann::json to_json(const RunReport& report, bool include_timings = true);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const AxiomReport& report);

/// Header line plus one "seed,classic_rate,improved_rate" row per seed.
std::string comparison_csv(const ComparisonReport& report);

std::string select_rule_name(const SelectRule& rule);

}  // namespace threshforge
