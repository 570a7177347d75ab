#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqforge/csv.hpp"
#include "dqforge/finding.hpp"
#include "dqforge/key_discovery.hpp"
#include "dqforge/logic.hpp"
#include "dqforge/outlier.hpp"
#include "dqforge/process_map.hpp"

namespace dq {

// Everything a run depends on. Defaults are the reference parameterization;
// the command line maps onto these fields one to one and the report echoes
// them back verbatim.
struct RunConfig {
  CsvDialect dialect;

  KeyConfig key;
  std::vector<std::string> keyOverride;  // explicit key columns, bypasses discovery

  std::vector<PlanOverride> planIncludes;
  std::vector<PlanOverride> planExcludes;

  double justifiedMissingThreshold = 0.95;

  OutlierConfig outlier;

  double typoThreshold = 0.7;
  int typoGapRefs = 10;
  std::size_t typoMaxDominants = 256;
  std::string dictionaryPath;

  LogicConfig logic;

  std::uint64_t seed = 0;
  int threads = 0;  // 0 = one per hardware thread
  std::set<Stage> disabledStages;
  bool includeTimings = false;
};

nlohmann::ordered_json configToJson(const RunConfig& config);

}  // namespace dq
